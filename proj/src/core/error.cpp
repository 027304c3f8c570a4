#include "chaoslab/error.hpp"

namespace chaoslab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::shape_mismatch: return "shape mismatch";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::size_limit: return "size limit exceeded";
    case ErrorCode::hypothesis_failed: return "hypothesis failed";
    case ErrorCode::support_violation: return "support violation";
    case ErrorCode::lipschitz_violation: return "lipschitz violation";
    case ErrorCode::asymmetric_input: return "asymmetric input";
    case ErrorCode::aliasing: return "aliasing";
    case ErrorCode::degenerate_input: return "degenerate input";
    case ErrorCode::io_error: return "io error";
  }
  return "unknown";
}

}  // namespace chaoslab
