#include "run_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iterator>

#include "fcut/error.hpp"

namespace fcut::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::string grid_sidecar(const std::string& curves_path) {
  fs::path p(curves_path);
  return (p.parent_path() / (p.stem().string() + ".grid.json")).string();
}

Run::Run(std::string command, std::vector<std::string> argv, const GlobalOptions& global)
    : command_(std::move(command)),
      argv_(std::move(argv)),
      global_(global),
      start_(std::chrono::steady_clock::now()) {
  std::error_code ec;
  fs::create_directories(global_.out, ec);
  if (ec || !fs::is_directory(global_.out)) {
    throw InputError("cannot create output directory '" + global_.out + "'");
  }
}

InputFile Run::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  InputFile f{path, std::string(std::istreambuf_iterator<char>(in), {})};
  if (in.bad()) throw InputError("error reading '" + path + "'");
  inputs_.push_back({{"path", path}, {"sha256", sha256_hex(f.bytes)}, {"bytes", f.bytes.size()}});
  return f;
}

fs::path Run::output(const std::string& name) {
  outputs_.push_back(name);
  return fs::path(global_.out) / name;
}

void Run::write_text(const std::string& name, const std::string& text) {
  const auto path = output(name);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

void Run::write_json(const std::string& name, const artifacts::Json& j) {
  write_text(name, j.dump(2) + "\n");
}

void Run::finish() {
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
  artifacts::Json m;
  m["command"] = command_;
  m["argv"] = argv_;
  m["seed"] = global_.seed;
  m["threads"] = global_.threads;
  m["inputs"] = inputs_;
  m["outputs"] = outputs_;
  m["version"] = kVersion;
  m["wall_time_seconds"] = elapsed.count();
  const auto path = fs::path(global_.out) / (command_ + ".manifest.json");
  std::ofstream out(path, std::ios::binary);
  out << m.dump(2) << "\n";
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

}  // namespace fcut::cli
