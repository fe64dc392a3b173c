#pragma once

#include <stdexcept>
#include <string>

namespace hkz {

// Failure categories; the CLI maps each to a distinct exit status.
enum class ErrorKind {
  kVerification,  // a checked inequality or certificate failed
  kParse,         // malformed textual input
  kInvalidInput,  // well-formed input violating a precondition
  kUnsupported,   // outside the supported rank / table range
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, std::string const& what) {
  throw Error(kind, what);
}

}  // namespace hkz
