#include "carnot/errors.hpp"

namespace carnot {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::OutOfDomain: return "out_of_domain";
    case ErrorKind::Validation: return "validation_failure";
    case ErrorKind::DegenerateDirections: return "degenerate_directions";
    case ErrorKind::Singular: return "singular_matrix";
    case ErrorKind::Infeasible: return "infeasible_parameters";
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::NotSurjective: return "bracket_map_not_surjective";
    case ErrorKind::Internal: return "internal_error";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace carnot
