#pragma once

#include <stdexcept>
#include <string>

namespace msel {

enum class ErrorKind {
  InvalidNode,
  Precondition,
  Parameter,
  Capacity,
  Data,
  Format,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse/format failure tied to a location in an input file.
class FormatError : public Error {
 public:
  FormatError(std::string file, std::size_t line, const std::string& message)
      : Error(ErrorKind::Format,
              file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace msel
