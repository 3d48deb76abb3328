#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fcut/error.hpp"
#include "fcut/glycemic_indices.hpp"
#include "fcut/rng.hpp"

using Catch::Matchers::WithinAbs;
using namespace std::chrono;

namespace {

fcut::SubjectSeries series(const std::vector<double>& g, int step_minutes = 5) {
  fcut::SubjectSeries s;
  s.subject_id = "s";
  const fcut::Timestamp t0 = sys_days{year{2024} / 1 / 1};
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.records.push_back({t0 + minutes{step_minutes * static_cast<int>(i)}, g[i]});
  }
  return s;
}

}  // namespace

TEST_CASE("constant series") {
  const auto s = series(std::vector<double>(30, 120.0));
  const auto v = fcut::compute_indices(s);
  CHECK(v.basic.mg == 120.0);
  CHECK(v.basic.sd == 0.0);
  CHECK(v.basic.cv == 0.0);
  CHECK(v.basic.iqr == 0.0);
  CHECK(v.basic.tar140 == 0.0);
  CHECK(v.basic.auc_index == 120.0);
  CHECK(v.mage == 0.0);
  CHECK(v.conga == 0.0);
}

TEST_CASE("two-point series") {
  const auto b = fcut::basic_indices(series({100, 200}));
  CHECK(b.mg == 150.0);
  CHECK(b.tar180 == 0.5);
  CHECK(b.tar140 == 0.5);
  CHECK(b.auc_index == 150.0);
  CHECK_THAT(b.sd, WithinAbs(std::sqrt(5000.0), 1e-12));
  fcut::IndexOptions strict;
  strict.tar_inclusive = false;
  CHECK(fcut::basic_indices(series({100, 180}), strict).tar180 == 0.0);
  CHECK(fcut::basic_indices(series({100, 180})).tar180 == 0.5);
  CHECK_THROWS_AS(fcut::basic_indices(series({100})), fcut::Error);
}

TEST_CASE("time weighting skips long gaps") {
  auto s = series({100, 100, 300});
  s.records[2].timestamp += hours{5};
  CHECK(fcut::basic_indices(s).auc_index == 100.0);
  s.records[2].timestamp -= hours{5} - minutes{5};  // now 10 min after the second sample
  // (100*5 + 200*10) / 15
  CHECK_THAT(fcut::basic_indices(s).auc_index, WithinAbs(2500.0 / 15.0, 1e-12));
}

TEST_CASE("MAGE") {
  CHECK(fcut::mage(series({100, 160, 100, 160, 100})) == 60.0);
  // Plateaus collapse before turning points are found.
  CHECK(fcut::mage(series({100, 160, 160, 100, 100, 160, 100})) == 60.0);
  // A small wiggle below one SD is ignored.
  CHECK(fcut::mage(series({100, 200, 195, 200, 100, 200, 100})) == 100.0);
  CHECK(fcut::mage(series({1, 2, 3, 4})) == 0.0);
  CHECK_THROWS_AS(fcut::mage(series({1, 2})), fcut::Error);
}

TEST_CASE("CONGA") {
  std::vector<double> alt(60), lin(60);
  for (int i = 0; i < 60; ++i) {
    alt[i] = i % 2 ? 120 : 100;
    lin[i] = 100 + i;
  }
  // 12 samples per hour: lags are even, so every difference is 0.
  CHECK(fcut::conga(series(alt)) == 0.0);
  CHECK(fcut::conga(series(lin)) == 0.0);
  std::vector<double> jump(30, 100);
  for (int i = 15; i < 30; ++i) jump[i] = 150;
  // 18 pairs, 12 with difference 50 ... exact sample SD
  const double d = fcut::conga(series(jump));
  std::vector<double> diffs;
  for (int i = 12; i < 30; ++i) diffs.push_back(jump[i] - jump[i - 12]);
  double m = 0, ss = 0;
  for (double x : diffs) m += x;
  m /= diffs.size();
  for (double x : diffs) ss += (x - m) * (x - m);
  CHECK_THAT(d, WithinAbs(std::sqrt(ss / (diffs.size() - 1)), 1e-12));
  CHECK_THROWS_AS(fcut::conga(series({1, 2, 3})), fcut::Error);
}

TEST_CASE("index properties on random series") {
  fcut::SplitMix64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> g(200);
    double x = 140;
    for (auto& v : g) v = x = std::clamp(x + rng.uniform(-15, 15), 40.0, 400.0);
    const auto base = fcut::compute_indices(series(g));
    CHECK(base.basic.tar140 >= base.basic.tar180);
    CHECK(base.mage >= 0.0);
    auto shifted = g;
    for (auto& v : shifted) v += 10.0;
    const auto sh = fcut::compute_indices(series(shifted));
    CHECK_THAT(sh.basic.sd, WithinAbs(base.basic.sd, 1e-9));
    CHECK_THAT(sh.mage, WithinAbs(base.mage, 1e-9));
    CHECK_THAT(sh.conga, WithinAbs(base.conga, 1e-9));
    CHECK_THAT(sh.basic.mg, WithinAbs(base.basic.mg + 10.0, 1e-9));
    CHECK(fcut::index_values(base).size() == fcut::index_columns().size());
  }
}
