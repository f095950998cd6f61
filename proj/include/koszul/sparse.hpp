#pragma once

// Sparse companions to the dense routines in matrix.hpp. Graded components of
// realized algebras can be tens of thousands of dimensions wide while their
// multiplication maps carry a handful of entries per column, so everything
// that lives in A_n (n >= 2) is stored in this form.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/matrix.hpp"

namespace koszul {

struct SparseEntry {
  std::uint32_t index;
  Coeff value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
  friend auto operator<=>(const SparseEntry&, const SparseEntry&) = default;
};

/// Entries sorted by strictly increasing index, no zero values.
struct SparseVec {
  std::vector<SparseEntry> entries;

  static SparseVec unit(std::uint32_t index, Coeff value = 1);
  static SparseVec from_dense(std::span<const Coeff> v);
  Vector to_dense(std::size_t n) const;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  std::uint32_t leading_index() const { return entries.front().index; }
  Coeff get(std::uint32_t index) const;

  void scale(Coeff c, const PrimeField& f);
  /// this += c * other
  void axpy(Coeff c, const SparseVec& other, const PrimeField& f);

  friend bool operator==(const SparseVec&, const SparseVec&) = default;
  friend auto operator<=>(const SparseVec&, const SparseVec&) = default;
};

/// Column-major sparse matrix: column j is the image of the j-th basis vector.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseMatrix from_dense(const Matrix& m);
  Matrix to_dense(const PrimeField& f) const;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const SparseVec& column(std::size_t j) const { return columns_[j]; }
  SparseVec& column(std::size_t j) { return columns_[j]; }

  SparseVec apply(const SparseVec& v, const PrimeField& f) const;
  /// sum_k coeffs[k] * mats[k]; all operands must share a shape.
  static SparseMatrix linear_combination(std::span<const SparseMatrix* const> mats,
                                         std::span<const Coeff> coeffs, const PrimeField& f);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

/// Row echelon form over F_p with sparse rows. Rows are monic at their
/// leading (smallest) index and no two rows share a leading index; they are
/// not back-substituted, so `canonical_basis` is the comparison form.
class EchelonSpace {
 public:
  EchelonSpace() = default;
  EchelonSpace(std::size_t ambient, PrimeField field);

  static EchelonSpace full(std::size_t ambient, PrimeField field);
  static EchelonSpace from_subspace(const Subspace& s);
  static EchelonSpace span(std::size_t ambient, PrimeField field, std::span<const SparseVec> vs);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<SparseVec>& rows() const noexcept { return rows_; }
  bool is_pivot(std::uint32_t index) const { return pivot_row_[index] >= 0; }

  /// Clears every pivot coordinate; the result is the canonical
  /// representative of v modulo this space.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const;
  bool contains(const EchelonSpace& other) const;
  bool same_span(const EchelonSpace& other) const;

  /// Returns true when v was independent of the current rows.
  bool insert(const SparseVec& v);

  /// Fully reduced basis sorted by pivot (unique for the span).
  std::vector<SparseVec> canonical_basis() const;
  Subspace to_dense() const;

 private:
  std::size_t ambient_ = 0;
  PrimeField field_{};
  std::vector<SparseVec> rows_;
  std::vector<std::int32_t> pivot_row_;
};

/// Kernel of the linear map sending e_i to images[i]; the result lives in
/// F_p^images.size(). Vectors are returned in the order they are discovered.
std::vector<SparseVec> kernel_of(std::span<const SparseVec> images, std::size_t codomain_dim,
                                 const PrimeField& f);

/// Dimension of the span of `vs`.
std::size_t rank_of(std::span<const SparseVec> vs, std::size_t ambient, const PrimeField& f);

}  // namespace koszul
