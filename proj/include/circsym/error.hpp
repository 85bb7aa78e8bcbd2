#pragma once

#include <stdexcept>
#include <string>

namespace circsym {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  input,       // malformed files, bad arguments
  domain,      // evaluation point outside the trusted disk
  sampling,    // too few samples for the requested degree
  inapplicable,
  scope,       // domain outside the supported geometry (origin, slits)
  geometry,    // non-simple, misoriented or ambiguous curves
  numerical,   // branch tracking or convergence failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace circsym
