#pragma once

#include <stdexcept>
#include <string>

namespace rkp {

enum class ErrorKind {
  invalid_argument,
  domain,
  insufficient_precision,
  invariant_violation,
  configuration,
  parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the core carries one of the kinds above; the C API
/// maps them one-to-one onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace rkp
