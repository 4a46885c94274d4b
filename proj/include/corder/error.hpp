#ifndef CORDER_ERROR_HPP
#define CORDER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace corder {

enum class ErrorKind {
  InvalidDescriptor,  // malformed group/order/automorphism data
  Mismatch,           // element does not belong to the descriptor at hand
  Unsupported,        // operation not defined for this variant
  BadInput,           // precondition violation with a witness in the message
  Internal,           // invariant breach inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace corder

#endif
