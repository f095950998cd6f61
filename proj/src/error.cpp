#include "koszul/error.hpp"

namespace koszul {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_params: return "invalid_params";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::degree_overflow: return "degree_overflow";
    case ErrorCode::invalid_twist: return "invalid_twist";
    case ErrorCode::mismatched_algebra: return "mismatched_algebra";
    case ErrorCode::heart_property_violated: return "heart_property_violated";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::semantic_error: return "semantic_error";
  }
  return "unknown";
}

}  // namespace koszul
