#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zmoment {

enum class ErrorKind {
  domain,
  pole,
  singularity,
  convergence,
  precision,
  range,
  resource,
  degenerate_fit,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::precision: return "precision";
    case ErrorKind::range: return "range";
    case ErrorKind::resource: return "resource";
    case ErrorKind::degenerate_fit: return "degenerate_fit";
  }
  return "unknown";
}

/// Computational failure raised by every module; the kind is machine readable
/// and ends up in the CLI's JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace zmoment
