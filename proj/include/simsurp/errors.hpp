#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simsurp {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI's error records.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-oriented.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error("parse_error", line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class validation_error : public error {
 public:
  explicit validation_error(const std::string& what) : error("validation_error", what) {}
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error("domain_error", what) {}
};

class lookup_error : public error {
 public:
  explicit lookup_error(const std::string& what) : error("lookup_error", what) {}
};

/// Raised when the Monte Carlo similarity mass is exactly zero, i.e. the
/// plug-in similarity-adjusted surprisal would be +inf.
class infinite_surprisal_error : public error {
 public:
  explicit infinite_surprisal_error(const std::string& what)
      : error("infinite_surprisal", what) {}
};

class fit_error : public error {
 public:
  explicit fit_error(const std::string& what) : error("fit_error", what) {}
};

class build_error : public error {
 public:
  explicit build_error(const std::string& what) : error("build_error", what) {}
};

}  // namespace simsurp
