#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmeur {

// Error classes map onto the CLI exit-status contract:
// usage and structural problems exit 2, numeric problems exit 1.
enum class ErrorKind { usage, structural, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorKind::structural, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// One failed density-matrix check together with the measured violation.
struct Violation {
  std::string check;  // "hermitian", "trace", "positivity", "dimension"
  double measured = 0.0;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorKind::structural, describe(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& v) {
    std::ostringstream out;
    out << "invalid density matrix:";
    for (const auto& item : v) {
      out << ' ' << item.check << " (violation " << item.measured << ')';
    }
    return out.str();
  }

  std::vector<Violation> violations_;
};

}  // namespace qmeur
