#ifndef NUCHECK_DIAGNOSTICS_HPP
#define NUCHECK_DIAGNOSTICS_HPP

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucheck {

enum class Severity { Error, Warning };

// A single validation finding. Validators collect these instead of throwing;
// only operations with unsatisfiable preconditions throw.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;      // stable rule id, e.g. "nu-in-precondition"
  std::string location;  // net element, file:line:col, ...
  std::string message;

  std::string str() const {
    std::ostringstream os;
    if (!location.empty()) os << location << ": ";
    os << (severity == Severity::Error ? "error" : "warning");
    os << ": " << code;
    if (!message.empty()) os << ": " << message;
    return os.str();
  }
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

// Base for all nucheck exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure with a source position (1-based line/column).
struct ParseError : Error {
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : Error(std::move(msg)), line(line), col(col) {}
  std::size_t line;
  std::size_t col;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nucheck

#endif
