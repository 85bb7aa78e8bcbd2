#include "circsym/error.hpp"

namespace circsym {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::sampling: return "sampling";
    case ErrorKind::inapplicable: return "inapplicable";
    case ErrorKind::scope: return "scope";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace circsym
