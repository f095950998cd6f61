#pragma once

// One-sided ideals generated in degree 1, colon ideals and generation
// checks. Right ideals of A are handled as left ideals of A.opposite().

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/graded_algebra.hpp"
#include "koszul/matrix.hpp"
#include "koszul/sparse.hpp"

namespace koszul {

enum class Side { left, right };
std::string_view to_string(Side s);

/// "t + a2", "2*x1"; "0" for the zero vector.
std::string linear_form(std::span<const Coeff> v, const std::vector<std::string>& names);
/// "(t + a2, a3)" from the reduced basis; "(0)" for the zero subspace.
std::string describe_subspace(const Subspace& w, const std::vector<std::string>& names);

struct GenerationVerdict {
  enum class Status { certified_yes, yes_up_to, no };

  Status status = Status::yes_up_to;
  std::size_t bound = 0;  // highest degree compared
  std::size_t witness_degree = 0;
  SparseVec witness;  // element of the family outside the generated ideal

  bool yes() const noexcept { return status != Status::no; }
};

class LinearIdeal {
 public:
  LinearIdeal() = default;

  Side side() const noexcept { return side_; }
  const Subspace& degree_one() const noexcept { return w_; }
  /// Components 0..top(); component 0 is always zero.
  const std::vector<EchelonSpace>& components() const noexcept { return comps_; }
  const EchelonSpace& component(std::size_t n) const;
  std::size_t top() const noexcept { return comps_.empty() ? 0 : comps_.size() - 1; }
  std::vector<std::size_t> dims() const;
  /// The algebra the ideal lives in (not the opposite used internally).
  const GradedAlgebra& algebra() const noexcept { return algebra_; }

  friend LinearIdeal ideal_from_subspace(const GradedAlgebra& A, const Subspace& w, Side side,
                                         std::optional<std::size_t> top);

 private:
  GradedAlgebra algebra_;
  Side side_ = Side::left;
  Subspace w_;
  std::vector<EchelonSpace> comps_;
};

/// The algebra whose left ideals model `side` ideals of A.
GradedAlgebra acting_algebra(const GradedAlgebra& A, Side side);

/// I_n = A_{n-1} W (left) or W A_{n-1} (right) for n <= top (default N).
LinearIdeal ideal_from_subspace(const GradedAlgebra& A, const Subspace& w, Side side = Side::left,
                                std::optional<std::size_t> top = std::nullopt);

/// Components of the left ideal of B generated by w, degrees 0..top.
std::vector<EchelonSpace> left_ideal_components(const GradedAlgebra& B, const Subspace& w,
                                                std::size_t top);

bool ideal_equal(const LinearIdeal& a, const LinearIdeal& b);
bool membership(const LinearIdeal& I, const Element& a);

struct ColonResult {
  Side side = Side::left;
  Vector x;
  bool degenerate = false;  // x lies in J
  std::vector<EchelonSpace> components;  // degrees 0..top
  GenerationVerdict verdict;

  std::size_t top() const noexcept { return components.empty() ? 0 : components.size() - 1; }
  std::vector<std::size_t> dims() const;
  Subspace degree_one() const { return components.at(1).to_dense(); }
};

/// (J:x)_n = { a in A_n : a x in J_{n+1} } for n < J.top(). When x is in J
/// the full family is returned and flagged degenerate.
ColonResult colon(const LinearIdeal& J, std::span<const Coeff> x);

/// Degreewise comparison of a family with the ideal its degree-1 part
/// generates. family[0] is ignored.
GenerationVerdict generated_in_degree_one(const GradedAlgebra& A,
                                          const std::vector<EchelonSpace>& family,
                                          Side side = Side::left);

/// S = {u in X : u in C_1}; returns S (as indices into X) when the ideal
/// generated by S equals C in every computed degree.
std::optional<std::vector<std::size_t>> generated_by_subset_of(const GradedAlgebra& A,
                                                               const ColonResult& c,
                                                               const std::vector<Vector>& X);

/// Shared, thread-safe cache of ideal dimensions keyed by the degree-1
/// part. Used by the exhaustive drivers.
class IdealDimCache {
 public:
  IdealDimCache(GradedAlgebra acting, std::size_t top) : b_(std::move(acting)), top_(top) {}
  std::vector<std::size_t> dims(const Subspace& w);
  const GradedAlgebra& acting() const noexcept { return b_; }
  std::size_t top() const noexcept { return top_; }

 private:
  GradedAlgebra b_;
  std::size_t top_;
  std::mutex mu_;
  std::map<Subspace, std::vector<std::size_t>> cache_;
};

/// Dimensions of (J:x)_n for n = 0..top-1 given the components of J in the
/// acting algebra (through degree top). Optionally keeps the kernels of
/// degrees 0..keep_through.
std::vector<std::size_t> colon_dims(const GradedAlgebra& acting,
                                    const std::vector<EchelonSpace>& j_components,
                                    std::span<const Coeff> x,
                                    std::vector<EchelonSpace>* kernels = nullptr,
                                    std::size_t keep_through = SIZE_MAX);

/// Canonical key of x modulo W up to a nonzero scalar: reduced, then scaled
/// so its first nonzero coordinate is 1. Empty when x lies in W.
std::optional<Vector> colon_key(const Subspace& w, std::span<const Coeff> x);

}  // namespace koszul
