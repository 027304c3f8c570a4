#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaoslab {

enum class ErrorCode {
  shape_mismatch,
  invalid_argument,
  non_convergence,
  size_limit,
  hypothesis_failed,
  support_violation,
  lipschitz_violation,
  asymmetric_input,
  aliasing,
  degenerate_input,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Structured error carried by every failing operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Adaptive quadrature gave up; the best estimate so far is still available.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : Error(ErrorCode::non_convergence, what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace chaoslab
