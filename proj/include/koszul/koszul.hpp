#pragma once

// Decision procedures: linear resolutions, Koszul filtrations and flags,
// strong and universal Koszulity.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/graded_algebra.hpp"
#include "koszul/ideals.hpp"
#include "koszul/resolution.hpp"

namespace koszul {

enum class Status { holds_certified, holds_up_to, fails, inconclusive_up_to };
std::string_view to_string(Status s);
inline bool holds(Status s) { return s == Status::holds_certified || s == Status::holds_up_to; }

struct Budget {
  std::uint64_t max_subspaces = 200000;
  std::uint64_t max_bases = 5000;
  std::size_t max_basis_dim = 4;
  std::size_t vertex_cap = 10000;
  std::uint64_t max_component = 4'000'000;
};

struct SuiteOptions {
  Budget budget;
  std::size_t threads = 0;  // 0 = default_threads()
};

// ---- linear resolutions ----

struct LinearityResult {
  Status status = Status::holds_up_to;
  std::size_t base_degree = 0;  // n with generators in degree n
  BettiTable table;
  struct Offender {
    std::size_t i, j;
    std::uint64_t beta;
  };
  std::optional<Offender> offender;  // first off-linear entry in (i, j) order
};

/// Throws invalid_params when the module is not generated in one degree.
LinearityResult linear_resolution_check(const GradedAlgebra& A, const ModuleSpec& module,
                                        std::size_t i_max, std::size_t j_max);

// ---- universal Koszulity ----

struct ColonFailure {
  Subspace w;
  Vector x;                 // reduced modulo W, first nonzero entry 1
  std::size_t degree = 0;   // first degree where J:x differs from (C_1)
  SparseVec element;        // in (J:x)_degree but not in A_{degree-1} C_1
};

struct UniversalResult {
  Side side = Side::left;
  Status status = Status::holds_up_to;
  std::size_t bound = 0;  // colons compared through this degree
  std::uint64_t subspaces = 0;
  std::uint64_t pairs = 0;       // (W, x) with x outside W
  std::uint64_t colons = 0;      // distinct colon computations
  std::uint64_t degenerate = 0;  // (W, x) with x in W, skipped
  std::optional<ColonFailure> witness;
};

/// Every (W, x) with x in A_1 \ W must give J:x generated in degree 1. The
/// colon family is compared through degree A.truncation() - 1.
UniversalResult universal_koszulity(const GradedAlgebra& A, Side side = Side::left,
                                    const SuiteOptions& opts = {});

// ---- strong Koszulity ----

struct StrongFailure {
  std::vector<std::size_t> y;       // indices into X
  std::size_t x = 0;                // index into X
  std::size_t degree = 0;
  std::vector<std::size_t> subset;  // X intersected with C_1
};

struct StrongResult {
  Status status = Status::holds_up_to;
  std::size_t bound = 0;
  std::vector<Vector> basis;
  std::uint64_t colons = 0;
  std::optional<StrongFailure> witness;
};

class ColonMemo;

StrongResult strong_koszulity(const GradedAlgebra& A, const std::vector<Vector>& X,
                              Side side = Side::left, ColonMemo* memo = nullptr);

struct StrongSearchResult {
  Status status = Status::fails;
  std::size_t bound = 0;
  std::optional<std::size_t> passing;  // first basis that passes
  std::vector<StrongResult> per_basis;
};

/// p = 2 only; iterates every unordered basis of A_1.
StrongSearchResult strong_koszulity_search(const GradedAlgebra& A, Side side = Side::left,
                                           const SuiteOptions& opts = {});

// ---- filtrations ----

struct FiltrationStep {
  std::size_t ideal = 0;  // indices into the family
  std::size_t j = 0;
  std::size_t colon = 0;
  Vector x;
};

struct FiltrationResult {
  Status status = Status::fails;
  std::size_t bound = 0;
  std::vector<Subspace> family;  // sorted, deduplicated
  std::vector<FiltrationStep> witnesses;
  std::optional<std::size_t> unwitnessed;
  std::string reason;
};

FiltrationResult verify_koszul_filtration(const GradedAlgebra& A, std::vector<Subspace> family,
                                          Side side = Side::left);

/// All subspaces of A_1 (the family L(A)).
std::vector<Subspace> all_linear_ideals(const GradedAlgebra& A, const Budget& budget = {});

/// {I + J} over A_1 + B_1 (first block A).
std::vector<Subspace> build_direct_sum_filtration(const std::vector<Subspace>& fa,
                                                  const std::vector<Subspace>& fb);

/// First J (in sorted order) with J + At missing from the family.
std::optional<Subspace> heart_violation(const std::vector<Subspace>& fa, const Vector& t);

/// {I + (Y)} with Y among x_1..x_m, t - x_1..t - x_m over A_1 + F^m. Every J
/// in the input must have J + At in the input, else heart_property_violated.
std::vector<Subspace> build_twisted_extension_filtration(const std::vector<Subspace>& fa,
                                                         const Vector& t, std::size_t m,
                                                         const std::vector<std::string>& names = {});

// ---- flags ----

struct FlagResult {
  Status status = Status::holds_up_to;
  std::size_t i_max = 0, j_max = 0;
  std::vector<BettiTable> tables;  // one per ideal (x_1..x_k)
  std::optional<std::size_t> failing;  // k - 1
  std::optional<LinearityResult::Offender> offender;
};

FlagResult koszul_flag_check(const GradedAlgebra& A, const std::vector<Vector>& X,
                             std::size_t i_max, std::size_t j_max, Side side = Side::left);

// Cache of colon data keyed by (W, x mod W), shared between bases.
class ColonMemo {
 public:
  struct Entry {
    Subspace c1;
    std::vector<std::size_t> dims;
  };
  /// `top` is the highest ideal degree used (colons go one lower).
  ColonMemo(GradedAlgebra acting, std::size_t top)
      : b_(std::move(acting)), top_(top), gen_(b_, top - 1) {}
  Entry get(const Subspace& w, const Vector& key);
  std::vector<std::size_t> ideal_dims(const Subspace& w) { return gen_.dims(w); }
  const GradedAlgebra& acting() const noexcept { return b_; }

 private:
  GradedAlgebra b_;
  std::size_t top_;
  IdealDimCache gen_;
  std::mutex mu_;
  std::map<std::pair<Subspace, Vector>, Entry> cache_;
};

}  // namespace koszul
