#pragma once

// Dense exact linear algebra over F_p: row reduction, kernels, canonical
// subspaces and exhaustive enumeration of subspaces and bases of F_p^d.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

using Vector = std::vector<Coeff>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, PrimeField field);

  /// Entries are reduced mod p; every row must have the same length.
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p);
  static Matrix from_vectors(std::span<const Vector> rows, std::size_t cols, PrimeField field);
  static Matrix identity(std::size_t n, PrimeField field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Coeff v) { data_[r * cols_ + c] = v; }
  std::span<const Coeff> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Coeff> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;

  Vector apply(std::span<const Coeff> v) const;  // M * v
  Matrix operator*(const Matrix& rhs) const;
  Matrix transpose() const;
  Matrix stacked(const Matrix& below) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
           a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  PrimeField field_{};
  std::vector<Coeff> data_;
};

struct RrefResult {
  Matrix reduced;  // only the nonzero rows
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);

/// A subspace of F_p^ambient stored by its reduced row echelon basis. Two
/// subspaces are equal exactly when their canonical bases are.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, PrimeField field);  // zero subspace

  static Subspace span(std::size_t ambient, PrimeField field, std::span<const Vector> vectors);
  static Subspace full(std::size_t ambient, PrimeField field);
  static Subspace from_matrix(const Matrix& rows);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const PrimeField& field() const noexcept { return basis_.field(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
  std::vector<Vector> basis_vectors() const;

  /// Remainder of v after clearing every pivot coordinate.
  Vector reduce(Vector v) const;
  bool contains(std::span<const Coeff> v) const;
  bool contains(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel_basis(const Matrix& m);

/// Number of k-dimensional subspaces of F_p^d; saturates at UINT64_MAX.
std::uint64_t gaussian_binomial(std::size_t d, std::size_t k, std::uint32_t p);

/// Every subspace of F_p^d (optionally only those of one dimension), one
/// canonical representative each, sorted by dimension then basis. Throws
/// budget_exceeded when the count would exceed `cap`.
std::vector<Subspace> enumerate_subspaces(std::size_t d, std::uint32_t p,
                                          std::optional<std::size_t> dim_filter,
                                          std::uint64_t cap);

/// Unordered bases of F_p^d. Each basis lists its vectors in increasing
/// base-p code order; the list is sorted lexicographically.
std::vector<std::vector<Vector>> enumerate_bases(std::size_t d, std::uint32_t p,
                                                 std::size_t max_dim, std::uint64_t cap);

/// Vector <-> integer code in base p (coordinate 0 most significant).
std::uint64_t vector_code(std::span<const Coeff> v, std::uint32_t p);
Vector vector_from_code(std::uint64_t code, std::size_t d, std::uint32_t p);

}  // namespace koszul
