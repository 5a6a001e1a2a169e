#ifndef DECLAB_ERROR_HPP
#define DECLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace declab {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  InvalidP,
  NotSquare,
  NotASubgroup,
  InvalidGroup,
  InvalidCocycle,
  NotDiagonalInput,
  ParseError,
  IoError,
  SolverFailure,
  AssertionFailure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace declab

#endif
