#pragma once

// Truncated realization of a quadratic algebra: bases of A_0..A_N and the
// sparse left/right multiplication maps by generators.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koszul/free_algebra.hpp"
#include "koszul/sparse.hpp"

namespace koszul {

struct Element {
  std::size_t degree = 0;
  SparseVec coords;

  friend bool operator==(const Element&, const Element&) = default;
};

struct RealizeOptions {
  std::optional<std::size_t> degree;  // default max(2d+2, 8)
  std::optional<MonomialOrder> order;
  std::uint64_t max_component = 4'000'000;  // cap on dims[n] * d
};

std::size_t default_truncation(std::size_t generators);

class GradedAlgebra {
 public:
  const QuadraticPresentation& presentation() const noexcept { return *pres_; }
  const PrimeField& field() const noexcept { return pres_->field; }
  std::size_t gens() const noexcept { return pres_->dim(); }
  std::size_t truncation() const noexcept { return dims_.size() - 1; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t n) const { return n < dims_.size() ? dims_[n] : 0; }
  bool finite_dim_certified() const noexcept { return certified_; }
  bool is_opposite() const noexcept { return opposite_; }
  /// True when both objects view the same realization from the same side.
  bool same_realization(const GradedAlgebra& o) const noexcept {
    return right_ == o.right_ && left_ == o.left_;
  }

  const std::vector<Word>& basis_words(std::size_t n) const { return (*words_)[n]; }

  /// x -> x*g and x -> g*x on A_n, for n < N.
  const SparseMatrix& right(std::size_t n, std::uint32_t g) const;
  const SparseMatrix& left(std::size_t n, std::uint32_t g) const;
  /// Right / left multiplication by a degree-1 element given in generator
  /// coordinates.
  SparseMatrix right_by(std::size_t n, std::span<const Coeff> x) const;
  SparseMatrix left_by(std::size_t n, std::span<const Coeff> x) const;

  Element one() const;
  Element generator(std::uint32_t g) const;
  Element degree_one(std::span<const Coeff> x) const;
  /// Class of a word in A_{|w|}.
  Element word_class(const Word& w) const;
  /// Class of a homogeneous polynomial.
  Element evaluate(const NcPoly& q) const;
  Element multiply(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(const Element& a, Coeff c) const;

  std::vector<std::uint64_t> hilbert_series() const;

  /// Same graded spaces with the multiplication reversed; basis words are
  /// reversed and left/right maps trade places.
  GradedAlgebra opposite() const;

  friend GradedAlgebra realize(const QuadraticPresentation& pres, const RealizeOptions& opts);

  struct Tables {
    std::vector<std::size_t> dims;
    std::vector<std::vector<Word>> basis;
    std::vector<std::vector<SparseMatrix>> right, left;  // [n][g] for n < N
  };
  Tables tables() const;
  /// Rebuilds an algebra from cached tables. Shapes, word lengths and
  /// coefficients are checked, the multiplication itself is trusted.
  static GradedAlgebra from_tables(const QuadraticPresentation& pres, Tables t);

 private:
  using Maps = std::vector<std::vector<SparseMatrix>>;  // [n][g]
  std::shared_ptr<const QuadraticPresentation> pres_;
  std::vector<std::size_t> dims_;
  std::shared_ptr<const std::vector<std::vector<Word>>> words_;
  std::shared_ptr<const Maps> right_;
  std::shared_ptr<const Maps> left_;
  bool certified_ = false;
  bool opposite_ = false;
};

GradedAlgebra realize(const QuadraticPresentation& pres, const RealizeOptions& opts = {});
inline GradedAlgebra realize(const QuadraticPresentation& pres, std::size_t degree) {
  RealizeOptions o;
  o.degree = degree;
  return realize(pres, o);
}

/// dim V^{(x)n} - dim sum_i V^i R V^{n-2-i}, computed densely in the full
/// tensor slice. Only usable for tiny d and n; kept as an oracle.
std::size_t tensor_slice_dimension(const QuadraticPresentation& pres, std::size_t n);

}  // namespace koszul
