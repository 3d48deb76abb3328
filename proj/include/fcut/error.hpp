#pragma once

#include <stdexcept>
#include <string>

namespace fcut {

// Base for all library failures. Computation errors map to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be read or parsed. Maps to exit code 2 in the CLI.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed content in a tabular input, located by file/line/field.
class ParseError : public InputError {
 public:
  ParseError(std::string file, std::size_t line, std::string field,
             const std::string& what)
      : InputError(file + ":" + std::to_string(line) + ": field '" + field +
                   "': " + what),
        file_(std::move(file)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

}  // namespace fcut
