#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const std::string kBin = FCUT_BIN;
const std::string kFix = FIXTURES_DIR;

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fcut_cli_test") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Result {
  int code = -1;
  std::string err;
};

// Runs the CLI with stderr captured to a file.
Result fcut(const std::string& args, const fs::path& out) {
  const auto err_file = out / "stderr.txt";
  const std::string cmd = kBin + " --out " + out.string() + " " + args + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

std::size_t lines(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string fix(const std::string& name) { return kFix + "/" + name; }

const std::string kSeparated =
    "--curves " + fix("separated.csv") + " --labels " + fix("separated_labels.csv");

}  // namespace

TEST_CASE("ingest writes curves, grid, report and manifest") {
  const auto out = scratch("ingest");
  const auto r = fcut("ingest --series " + fix("series.csv") + " --labels " + fix("labels.csv"), out);
  REQUIRE(r.code == 0);
  CHECK(lines(out / "curves.csv") == 3);  // header + 2 subjects
  CHECK(load(out / "curves.grid.json")["m"] == 100);
  const auto report = load(out / "ingest_report.json");
  CHECK(report["excluded_count"] == 1);
  CHECK(report["excluded"][0] == "p03");
  const auto manifest = load(out / "ingest.manifest.json");
  CHECK(manifest["command"] == "ingest");
  CHECK(manifest["inputs"].size() == 2);
  CHECK(manifest["inputs"][0]["sha256"].get<std::string>().size() == 64);

  // The ingested curves feed straight into fit.
  const auto fit = scratch("ingest_fit");
  CHECK(fcut("fit --curves " + (out / "curves.csv").string() + " --labels " + fix("labels.csv"),
             fit).code == 0);
}

TEST_CASE("missing files and bad flags exit with 2") {
  const auto out = scratch("missing");
  const auto r = fcut("ingest --series " + fix("series.csv") + " --labels " + fix("no_such.csv"), out);
  CHECK(r.code == 2);
  CHECK(r.err.find("no_such.csv") != std::string::npos);
  CHECK(fcut("fit --curves " + fix("separated.csv"), out).code == 2);  // --labels required
  CHECK(fcut("fit " + kSeparated + " --criterion best", out).code == 2);
  CHECK(fcut("frobnicate", out).code == 2);
}

TEST_CASE("fit on separated curves") {
  const auto a = scratch("fit_a");
  const auto b = scratch("fit_b");
  REQUIRE(fcut("fit " + kSeparated + " --smooth", a).code == 0);
  REQUIRE(fcut("fit " + kSeparated + " --smooth", b).code == 0);
  const auto j = load(a / "fit.json");
  CHECK(j["youden"] == 1.0);
  CHECK(j["auc"] == 1.0);
  CHECK(slurp(a / "fit.json") == slurp(b / "fit.json"));
  CHECK(slurp(a / "cutoff.json") == slurp(b / "cutoff.json"));
  CHECK(load(a / "cutoff.json").contains("smoothed_curve"));
  CHECK(lines(a / "cutoff_curve.csv") == 4);

  const auto s = scratch("fit_sens");
  REQUIRE(fcut("fit " + kSeparated + " --criterion max_sensitivity", s).code == 0);
  CHECK(load(s / "fit.json")["sensitivity"] == 1.0);

  const auto g = scratch("fit_grid");
  REQUIRE(fcut("fit " + kSeparated + " --grid -50:50:101", g).code == 0);
  CHECK(lines(g / "sweep.csv") == 102);
}

TEST_CASE("bootstrap determinism, nesting and infeasibility") {
  const auto a = scratch("boot_a");
  const auto b = scratch("boot_b");
  REQUIRE(fcut("--seed 9 bootstrap " + kSeparated + " -B 50", a).code == 0);
  REQUIRE(fcut("--seed 9 --threads 3 bootstrap " + kSeparated + " -B 50", b).code == 0);
  CHECK(slurp(a / "bootstrap.json") == slurp(b / "bootstrap.json"));
  CHECK(slurp(a / "cutoff_band.csv") == slurp(b / "cutoff_band.csv"));

  const auto w = scratch("boot_wide");
  const auto n = scratch("boot_narrow");
  REQUIRE(fcut("--seed 2 bootstrap " + kSeparated + " -B 200 --alpha 0.05", w).code == 0);
  REQUIRE(fcut("--seed 2 bootstrap " + kSeparated + " -B 200 --alpha 0.5", n).code == 0);
  const auto cw = load(w / "bootstrap.json")["ci"];
  const auto cn = load(n / "bootstrap.json")["ci"];
  CHECK(cw[0].get<double>() <= cn[0].get<double>());
  CHECK(cn[1].get<double>() <= cw[1].get<double>());

  const auto d = scratch("boot_degenerate");
  const auto r = fcut("bootstrap --curves " + fix("separated.csv") + " --labels " +
                          fix("all_cases_labels.csv") + " -B 50",
                      d);
  CHECK(r.code == 1);
  CHECK(r.err.find("bootstrap infeasible") != std::string::npos);
}

TEST_CASE("classify with a frozen cut-off") {
  const auto f = scratch("cls_fit");
  REQUIRE(fcut("fit " + kSeparated, f).code == 0);
  const auto cutoff = (f / "cutoff.json").string();

  const auto c = scratch("cls");
  REQUIRE(fcut("classify --cutoff " + cutoff + " " + kSeparated, c).code == 0);
  const auto j = load(c / "classify.json");
  CHECK(j["sensitivity"] == 1.0);
  CHECK(j["specificity"] == 1.0);
  CHECK(j["positives"] == 6);

  // c = 0 against the pooled mean: prediction is margin >= 0.
  const auto z = scratch("cls_zero");
  REQUIRE(fcut("classify --cutoff " + cutoff + " --curves " + fix("separated.csv") + " --c 0", z).code == 0);
  std::istringstream rows(slurp(z / "predictions.csv"));
  std::string line;
  std::getline(rows, line);
  int checked = 0;
  while (std::getline(rows, line)) {
    const auto p1 = line.find(',');
    const auto p2 = line.find(',', p1 + 1);
    const double m = std::stod(line.substr(p1 + 1, p2 - p1 - 1));
    const int pred = std::stoi(line.substr(p2 + 1));
    CHECK(pred == (m >= 0 ? 1 : 0));
    ++checked;
  }
  CHECK(checked == 12);

  const auto mm = scratch("cls_mismatch");
  const auto r = fcut("classify --cutoff " + cutoff + " --curves " + fix("shifted.csv"), mm);
  CHECK(r.code == 1);
  CHECK(r.err.find("grid mismatch") != std::string::npos);
  const auto r2 = fcut("classify --cutoff " + cutoff + " --curves " + fix("separated.csv") +
                           " --grid-file " + fix("no_such.grid.json"),
                       mm);
  CHECK(r2.code == 2);
}

TEST_CASE("simulate row counts") {
  const auto out = scratch("sim");
  REQUIRE(fcut("--seed 4 --threads 2 simulate --a 5 --b 0 --n 200 -R 20", out).code == 0);
  std::istringstream rows(slurp(out / "study.csv"));
  std::string line;
  std::getline(rows, line);
  std::map<std::string, int> per;
  while (std::getline(rows, line)) {
    std::stringstream ss(line);
    std::string field;
    for (int k = 0; k < 4; ++k) std::getline(ss, field, ',');
    ++per[field];
  }
  CHECK(per["youden"] == 20);
  CHECK(per["max_sensitivity"] == 20);
  CHECK(per["max_specificity"] == 20);
  CHECK(lines(out / "study_summary.csv") == 4);
}

TEST_CASE("indices and roc") {
  const auto out = scratch("indices");
  REQUIRE(fcut("indices --series " + fix("constant.csv"), out).code == 0);
  const auto j = load(out / "indices.json");
  CHECK(j["convention"] == "classic");
  CHECK(j["subjects"][0]["sd"] == 0.0);
  CHECK(slurp(out / "indices.csv").find("flat,100,0,0,0,0,0,100,0,0") != std::string::npos);

  const auto roc = scratch("roc");
  REQUIRE(fcut("roc " + kSeparated, roc).code == 0);
  CHECK(load(roc / "roc.json")["auc"] == 1.0);
  CHECK(slurp(roc / "roc.csv").rfind("fpr,tpr\n", 0) == 0);

  // Scalar path over an indices table.
  const auto ix = scratch("roc_ix");
  REQUIRE(fcut("indices --series " + fix("series.csv"), ix).code == 0);
  const auto sr = scratch("roc_scalar");
  REQUIRE(fcut("roc --scores " + (ix / "indices.csv").string() + " --column mg --labels " +
                    fix("labels.csv"),
                sr).code == 0);
  CHECK(load(sr / "roc.json")["auc"] == 1.0);
}
