#pragma once

#include <stdexcept>
#include <string>

namespace triboltz {

enum class ErrorKind { InvalidInput, Degenerate, Numerical, Config, Usage };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

// CLI exit-code contract.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Numerical:
      return 3;
    case ErrorKind::Config:
    case ErrorKind::Usage:
    case ErrorKind::InvalidInput:
    case ErrorKind::Degenerate:
      return 2;
  }
  return 2;
}

}  // namespace triboltz
