#pragma once

// Minimal graded free resolutions, computed degree by degree, and the
// bigraded Betti numbers beta_{i,j} = dim Tor_{i,j}(K, M).

#include <cstdint>
#include <string>
#include <vector>

#include "koszul/graded_algebra.hpp"
#include "koszul/ideals.hpp"

namespace koszul {

struct ModuleSpec {
  enum class Kind { trivial, augmentation, ideal, quotient };

  Kind kind = Kind::trivial;
  Side side = Side::left;
  Subspace w;  // degree-1 generators for ideal / quotient

  static ModuleSpec trivial_module(Side s = Side::left) { return {Kind::trivial, s, {}}; }
  static ModuleSpec augmentation_ideal(Side s = Side::left) { return {Kind::augmentation, s, {}}; }
  static ModuleSpec ideal_module(Subspace w, Side s = Side::left) {
    return {Kind::ideal, s, std::move(w)};
  }
  static ModuleSpec quotient_module(Subspace w, Side s = Side::left) {
    return {Kind::quotient, s, std::move(w)};
  }
  std::string describe(const std::vector<std::string>& names) const;
};

struct BettiTable {
  std::string module;
  std::size_t i_max = 0;
  std::size_t j_max = 0;
  std::vector<std::vector<std::uint64_t>> beta;  // [i][j]
  std::vector<bool> column_complete;             // per j

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return i < beta.size() && j < beta[i].size() ? beta[i][j] : 0;
  }
};

/// Columns j beyond the algebra's truncation degree are left at zero and
/// flagged incomplete.
BettiTable betti_table(const GradedAlgebra& A, const ModuleSpec& module, std::size_t i_max,
                       std::size_t j_max);

/// Coefficients p_0..p_n with h(z) p(-z) = 1; needs h[0] = 1.
std::vector<std::int64_t> poincare_from_hilbert(const std::vector<std::uint64_t>& h,
                                                std::size_t n);

}  // namespace koszul
