#include "koszul/matrix.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "koszul/error.hpp"

namespace koszul {

Matrix::Matrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
  PrimeField f(p);
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols, f);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::invalid_params, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.from_int(rows[r][c]));
  }
  return m;
}

Matrix Matrix::from_vectors(std::span<const Vector> rows, std::size_t cols, PrimeField field) {
  Matrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::invalid_params, "vector length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n, PrimeField field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return Vector(s.begin(), s.end());
}

Vector Matrix::apply(std::span<const Coeff> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::invalid_params, "dimension mismatch in apply");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(at(r, c)) * v[c]) % field_.p();
    }
    out[r] = static_cast<Coeff>(acc);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::invalid_params, "dimension mismatch in product");
  Matrix out(rows_, rhs.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Coeff a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.set(i, j, field_.add(out.at(i, j), field_.mul(a, rhs.at(k, j))));
      }
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

Matrix Matrix::stacked(const Matrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (cols_ != below.cols_) throw Error(ErrorCode::invalid_params, "column mismatch in stack");
  Matrix out(rows_ + below.rows_, cols_, field_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

RrefResult rref(const Matrix& m) {
  const PrimeField& f = m.field();
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a.at(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r) {
      auto x = a.row(sel);
      auto y = a.row(r);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    Coeff inv = f.inv(a.at(r, c));
    for (auto& e : a.row(r)) e = f.mul(e, inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      Coeff factor = a.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) {
        a.set(i, j, f.sub(a.at(i, j), f.mul(factor, a.at(r, j))));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, a.cols(), f);
  for (std::size_t i = 0; i < r; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), reduced.row(i).begin());
  }
  return {std::move(reduced), std::move(pivots), r};
}

Subspace::Subspace(std::size_t ambient, PrimeField field)
    : ambient_(ambient), basis_(0, ambient, field) {}

Subspace Subspace::from_matrix(const Matrix& rows) {
  auto res = rref(rows);
  Subspace s(rows.cols(), rows.field());
  s.basis_ = std::move(res.reduced);
  s.pivots_ = std::move(res.pivots);
  return s;
}

Subspace Subspace::span(std::size_t ambient, PrimeField field, std::span<const Vector> vectors) {
  return from_matrix(Matrix::from_vectors(vectors, ambient, field));
}

Subspace Subspace::full(std::size_t ambient, PrimeField field) {
  return from_matrix(Matrix::identity(ambient, field));
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
  return out;
}

Vector Subspace::reduce(Vector v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::invalid_params, "vector length mismatch");
  const PrimeField& f = field();
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    Coeff c = v[pivots_[r]];
    if (c == 0) continue;
    auto row = basis_.row(r);
    for (std::size_t j = pivots_[r]; j < ambient_; ++j) v[j] = f.sub(v[j], f.mul(c, row[j]));
  }
  return v;
}

bool Subspace::contains(std::span<const Coeff> v) const {
  Vector rem = reduce(Vector(v.begin(), v.end()));
  return std::all_of(rem.begin(), rem.end(), [](Coeff c) { return c == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis_.row(i))) return false;
  }
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw Error(ErrorCode::invalid_params, "ambient mismatch");
  return from_matrix(basis_.stacked(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw Error(ErrorCode::invalid_params, "ambient mismatch");
  // Solve sum a_i u_i = sum b_j w_j via the kernel of the stacked basis.
  const PrimeField& f = field();
  std::size_t n1 = dim();
  std::size_t n2 = other.dim();
  Matrix m(ambient_, n1 + n2, f);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t c = 0; c < ambient_; ++c) m.set(c, i, basis_.at(i, c));
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t c = 0; c < ambient_; ++c) m.set(c, n1 + j, other.basis_.at(j, c));
  Subspace ker = kernel_basis(m);
  std::vector<Vector> vs;
  for (std::size_t k = 0; k < ker.dim(); ++k) {
    Vector v(ambient_, 0);
    for (std::size_t i = 0; i < n1; ++i) {
      Coeff a = ker.basis_.at(k, i);
      if (a == 0) continue;
      for (std::size_t c = 0; c < ambient_; ++c) v[c] = f.add(v[c], f.mul(a, basis_.at(i, c)));
    }
    vs.push_back(std::move(v));
  }
  return span(ambient_, f, vs);
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    auto x = a.basis_.row(r);
    auto y = b.basis_.row(r);
    if (auto c = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
        c != 0)
      return c;
  }
  return std::strong_ordering::equal;
}

Subspace kernel_basis(const Matrix& m) {
  const PrimeField& f = m.field();
  auto res = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  std::vector<Vector> vs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < res.rank; ++r) {
      v[res.pivots[r]] = f.neg(res.reduced.at(r, free));
    }
    vs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), f, vs);
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

void enumerate_with_pivots(std::size_t d, const PrimeField& f, const std::vector<std::size_t>& piv,
                           std::vector<Subspace>& out) {
  const std::size_t k = piv.size();
  std::vector<bool> is_pivot(d, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::size_t>> free_slots;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = piv[r] + 1; c < d; ++c)
      if (!is_pivot[c]) free_slots.emplace_back(r, c);

  Matrix m(k, d, f);
  for (std::size_t r = 0; r < k; ++r) m.set(r, piv[r], 1);
  std::vector<Coeff> digits(free_slots.size(), 0);
  while (true) {
    for (std::size_t s = 0; s < free_slots.size(); ++s)
      m.set(free_slots[s].first, free_slots[s].second, digits[s]);
    out.push_back(Subspace::from_matrix(m));
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < f.p()) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
  }
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn);

}  // namespace

std::uint64_t gaussian_binomial(std::size_t d, std::size_t k, std::uint32_t p) {
  if (k > d) return 0;
  // Recurrence [d,k] = [d-1,k-1] + p^k [d-1,k].
  std::vector<std::vector<std::uint64_t>> t(d + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::size_t n = 0; n <= d; ++n) {
    t[n][0] = 1;
    for (std::size_t j = 1; j <= n; ++j) {
      t[n][j] = sat_add(t[n - 1][j - 1], sat_mul(sat_pow(p, j), j <= n - 1 ? t[n - 1][j] : 0));
    }
  }
  return t[d][k];
}

std::vector<Subspace> enumerate_subspaces(std::size_t d, std::uint32_t p,
                                          std::optional<std::size_t> dim_filter,
                                          std::uint64_t cap) {
  PrimeField f(p);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    if (dim_filter && *dim_filter != k) continue;
    total = sat_add(total, gaussian_binomial(d, k, p));
  }
  if (total > cap) {
    throw Error(ErrorCode::budget_exceeded,
                "subspace enumeration of F_" + std::to_string(p) + "^" + std::to_string(d) +
                    " needs " + std::to_string(total) + " entries (cap " + std::to_string(cap) +
                    ")");
  }
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::size_t k = 0; k <= d; ++k) {
    if (dim_filter && *dim_filter != k) continue;
    if (k == 0) {
      out.emplace_back(d, f);
      continue;
    }
    for_each_combination(d, k, [&](const std::vector<std::size_t>& piv) {
      enumerate_with_pivots(d, f, piv, out);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t vector_code(std::span<const Coeff> v, std::uint32_t p) {
  std::uint64_t code = 0;
  for (Coeff c : v) code = code * p + c;
  return code;
}

Vector vector_from_code(std::uint64_t code, std::size_t d, std::uint32_t p) {
  Vector v(d, 0);
  for (std::size_t i = d; i-- > 0;) {
    v[i] = static_cast<Coeff>(code % p);
    code /= p;
  }
  return v;
}

std::vector<std::vector<Vector>> enumerate_bases(std::size_t d, std::uint32_t p,
                                                 std::size_t max_dim, std::uint64_t cap) {
  PrimeField f(p);
  if (d > max_dim) {
    throw Error(ErrorCode::budget_exceeded, "basis enumeration limited to dimension " +
                                                std::to_string(max_dim) + ", requested " +
                                                std::to_string(d));
  }
  // prod (p^d - p^i) / d!
  std::uint64_t ordered = 1;
  const std::uint64_t pd = sat_pow(p, d);
  for (std::size_t i = 0; i < d; ++i) ordered = sat_mul(ordered, pd - sat_pow(p, i));
  std::uint64_t count = ordered;
  for (std::size_t i = 2; i <= d; ++i) count /= i;
  if (ordered == kSaturated || count > cap) {
    throw Error(ErrorCode::budget_exceeded,
                "basis enumeration needs " + std::to_string(count) + " bases (cap " +
                    std::to_string(cap) + ")");
  }

  std::vector<std::vector<Vector>> out;
  std::vector<Vector> chosen;
  std::vector<Subspace> spans{Subspace(d, f)};
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t next_code) {
    if (chosen.size() == d) {
      out.push_back(chosen);
      return;
    }
    for (std::uint64_t code = next_code; code < pd; ++code) {
      Vector v = vector_from_code(code, d, p);
      if (spans.back().contains(v)) continue;
      chosen.push_back(v);
      spans.push_back(spans.back() + Subspace::span(d, f, std::span<const Vector>(&v, 1)));
      rec(code + 1);
      spans.pop_back();
      chosen.pop_back();
    }
  };
  rec(1);
  return out;
}

namespace {
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}
}  // namespace

}  // namespace koszul
