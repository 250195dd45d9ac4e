#include "rkp/errors.hpp"

namespace rkp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::insufficient_precision: return "insufficient precision";
    case ErrorKind::invariant_violation: return "invariant violation";
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::parse: return "parse error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rkp
