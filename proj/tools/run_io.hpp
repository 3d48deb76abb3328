#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "fcut/artifacts.hpp"

namespace fcut::cli {

inline constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out = ".";
};

// Input file held in memory so the manifest digests exactly the bytes parsed.
struct InputFile {
  std::string path;
  std::string bytes;
  std::istringstream stream() const { return std::istringstream(bytes); }
};

// Tracks inputs and outputs of one command run and writes the manifest.
class Run {
 public:
  Run(std::string command, std::vector<std::string> argv, const GlobalOptions& global);

  InputFile read(const std::string& path);
  std::filesystem::path output(const std::string& name);
  void write_text(const std::string& name, const std::string& text);
  void write_json(const std::string& name, const artifacts::Json& j);
  void finish();

  const GlobalOptions& global() const { return global_; }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  GlobalOptions global_;
  std::chrono::steady_clock::time_point start_;
  artifacts::Json inputs_ = artifacts::Json::array();
  std::vector<std::string> outputs_;
};

std::string sha256_hex(const std::string& bytes);

// Sidecar grid path for a curves file: dir/stem.grid.json
std::string grid_sidecar(const std::string& curves_path);

}  // namespace fcut::cli
