#pragma once

#include <stdexcept>
#include <string>

namespace nbhd {

/// Error category, used by the CLI to shape its JSON error object.
enum class ErrorKind {
  construction,  // malformed value on construction
  domain,        // precondition violated by otherwise well-formed inputs
  language,      // formula belongs to a different language fragment
  resource,      // configured cap exceeded
  parse          // concrete-syntax error
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  static Error construction(std::string m) { return {ErrorKind::construction, std::move(m)}; }
  static Error domain(std::string m) { return {ErrorKind::domain, std::move(m)}; }
  static Error language(std::string m) { return {ErrorKind::language, std::move(m)}; }
  static Error resource(std::string m) { return {ErrorKind::resource, std::move(m)}; }
  static Error parse(std::string m) { return {ErrorKind::parse, std::move(m)}; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::construction: return "construction";
    case ErrorKind::domain: return "domain";
    case ErrorKind::language: return "language";
    case ErrorKind::resource: return "resource";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

}  // namespace nbhd
