#pragma once

// Versioned JSON form of a realized algebra, used as a cache:
// {"version":1,"p":..,"N":..,"dims":[..],"basis":[[words]],"rmult":..,"lmult":..}
// Words are arrays of generator indices; rmult[n][g] lists the columns of
// x -> x*g on A_n, each column as [[row, value], ...].

#include "json.hpp"
#include "koszul/graded_algebra.hpp"

namespace koszul::cli {

inline constexpr int kAlgebraCacheVersion = 1;

nlohmann::ordered_json algebra_to_json(const GradedAlgebra& A);

/// Throws invalid_params on a version, field or shape mismatch.
GradedAlgebra algebra_from_json(const nlohmann::ordered_json& j, const QuadraticPresentation& pres);

}  // namespace koszul::cli
