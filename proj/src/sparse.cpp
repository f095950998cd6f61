#include "koszul/sparse.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "koszul/error.hpp"

namespace koszul {

SparseVec SparseVec::unit(std::uint32_t index, Coeff value) {
  SparseVec v;
  if (value != 0) v.entries.push_back({index, value});
  return v;
}

SparseVec SparseVec::from_dense(std::span<const Coeff> v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.entries.push_back({static_cast<std::uint32_t>(i), v[i]});
  return out;
}

Vector SparseVec::to_dense(std::size_t n) const {
  Vector out(n, 0);
  for (const auto& e : entries) {
    if (e.index >= n) throw Error(ErrorCode::invalid_params, "sparse index out of range");
    out[e.index] = e.value;
  }
  return out;
}

Coeff SparseVec::get(std::uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  return it != entries.end() && it->index == index ? it->value : 0;
}

void SparseVec::scale(Coeff c, const PrimeField& f) {
  if (c == 0) {
    entries.clear();
    return;
  }
  for (auto& e : entries) e.value = f.mul(e.value, c);
}

void SparseVec::axpy(Coeff c, const SparseVec& other, const PrimeField& f) {
  if (c == 0 || other.empty()) return;
  std::vector<SparseEntry> out;
  out.reserve(entries.size() + other.entries.size());
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() || b != other.entries.end()) {
    if (b == other.entries.end() || (a != entries.end() && a->index < b->index)) {
      out.push_back(*a++);
    } else if (a == entries.end() || b->index < a->index) {
      out.push_back({b->index, f.mul(c, b->value)});
      ++b;
    } else {
      Coeff v = f.add(a->value, f.mul(c, b->value));
      if (v != 0) out.push_back({a->index, v});
      ++a;
      ++b;
    }
  }
  entries = std::move(out);
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m.at(r, c) != 0)
        out.columns_[c].entries.push_back({static_cast<std::uint32_t>(r), m.at(r, c)});
  return out;
}

Matrix SparseMatrix::to_dense(const PrimeField& f) const {
  Matrix m(rows_, cols(), f);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : columns_[c].entries) m.set(e.index, c, e.value);
  return m;
}

namespace {

// Dense scratch vector that remembers which coordinates it touched; the
// min-heap hands them back in increasing order.
class Accumulator {
 public:
  void reset(std::size_t n) {
    if (values_.size() < n) {
      values_.resize(n, 0);
      stamp_.resize(n, 0);
    }
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    heap_ = {};
  }

  void add(std::uint32_t i, Coeff v, const PrimeField& f) {
    if (stamp_[i] != generation_) {
      stamp_[i] = generation_;
      values_[i] = 0;
      heap_.push(i);
    }
    values_[i] = f.add(values_[i], v);
  }

  void add(const SparseVec& v, Coeff c, const PrimeField& f) {
    if (c == 0) return;
    for (const auto& e : v.entries) add(e.index, f.mul(c, e.value), f);
  }

  bool empty() const { return heap_.empty(); }

  // Smallest touched index; each index is yielded once per generation.
  std::uint32_t pop() {
    std::uint32_t i = heap_.top();
    heap_.pop();
    return i;
  }

  Coeff value(std::uint32_t i) const { return values_[i]; }
  void clear(std::uint32_t i) { values_[i] = 0; }

  // Re-arm an index that was already popped so a later add re-queues it.
  void forget(std::uint32_t i) { stamp_[i] = 0; }

  SparseVec drain() {
    SparseVec out;
    while (!heap_.empty()) {
      std::uint32_t i = pop();
      if (values_[i] != 0) out.entries.push_back({i, values_[i]});
    }
    return out;
  }

 private:
  std::vector<Coeff> values_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
};

thread_local Accumulator t_main;
thread_local Accumulator t_track;

}  // namespace

SparseVec SparseMatrix::apply(const SparseVec& v, const PrimeField& f) const {
  Accumulator& acc = t_main;
  acc.reset(rows_);
  for (const auto& e : v.entries) {
    if (e.index >= cols()) throw Error(ErrorCode::invalid_params, "sparse apply out of range");
    acc.add(columns_[e.index], e.value, f);
  }
  return acc.drain();
}

SparseMatrix SparseMatrix::linear_combination(std::span<const SparseMatrix* const> mats,
                                              std::span<const Coeff> coeffs,
                                              const PrimeField& f) {
  if (mats.empty()) return {};
  SparseMatrix out(mats.front()->rows(), mats.front()->cols());
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k]->rows() != out.rows() || mats[k]->cols() != out.cols())
      throw Error(ErrorCode::invalid_params, "shape mismatch in linear combination");
    if (coeffs[k] == 0) continue;
    for (std::size_t c = 0; c < out.cols(); ++c)
      out.columns_[c].axpy(coeffs[k], mats[k]->columns_[c], f);
  }
  return out;
}

EchelonSpace::EchelonSpace(std::size_t ambient, PrimeField field)
    : ambient_(ambient), field_(field), pivot_row_(ambient, -1) {}

EchelonSpace EchelonSpace::full(std::size_t ambient, PrimeField field) {
  EchelonSpace s(ambient, field);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.pivot_row_[i] = static_cast<std::int32_t>(s.rows_.size());
    s.rows_.push_back(SparseVec::unit(static_cast<std::uint32_t>(i)));
  }
  return s;
}

EchelonSpace EchelonSpace::from_subspace(const Subspace& sub) {
  EchelonSpace s(sub.ambient_dim(), sub.field());
  for (std::size_t r = 0; r < sub.dim(); ++r) {
    s.pivot_row_[sub.pivots()[r]] = static_cast<std::int32_t>(s.rows_.size());
    s.rows_.push_back(SparseVec::from_dense(sub.basis().row(r)));
  }
  return s;
}

EchelonSpace EchelonSpace::span(std::size_t ambient, PrimeField field,
                                std::span<const SparseVec> vs) {
  EchelonSpace s(ambient, field);
  for (const auto& v : vs) s.insert(v);
  return s;
}

SparseVec EchelonSpace::reduce(const SparseVec& v) const {
  Accumulator& acc = t_main;
  acc.reset(ambient_);
  for (const auto& e : v.entries) {
    if (e.index >= ambient_) throw Error(ErrorCode::invalid_params, "vector outside ambient");
    acc.add(e.index, e.value, field_);
  }
  SparseVec out;
  while (!acc.empty()) {
    std::uint32_t i = acc.pop();
    Coeff c = acc.value(i);
    if (c == 0) continue;
    std::int32_t r = pivot_row_[i];
    if (r < 0) {
      out.entries.push_back({i, c});
      continue;
    }
    const auto& row = rows_[static_cast<std::size_t>(r)];
    Coeff m = field_.neg(c);
    acc.clear(i);
    for (std::size_t k = 1; k < row.entries.size(); ++k)
      acc.add(row.entries[k].index, field_.mul(m, row.entries[k].value), field_);
  }
  return out;
}

bool EchelonSpace::contains(const SparseVec& v) const { return reduce(v).empty(); }

bool EchelonSpace::contains(const EchelonSpace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [&](const SparseVec& r) { return contains(r); });
}

bool EchelonSpace::same_span(const EchelonSpace& other) const {
  return dim() == other.dim() && contains(other);
}

bool EchelonSpace::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  r.scale(field_.inv(r.entries.front().value), field_);
  pivot_row_[r.leading_index()] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> EchelonSpace::canonical_basis() const {
  // Back-substitute from the largest pivot down; every later row is then
  // already free of larger pivots.
  std::vector<std::uint32_t> pivots;
  pivots.reserve(rows_.size());
  for (const auto& r : rows_) pivots.push_back(r.leading_index());
  std::sort(pivots.begin(), pivots.end());
  EchelonSpace done(ambient_, field_);
  std::vector<SparseVec> out(pivots.size());
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto& row = rows_[static_cast<std::size_t>(pivot_row_[pivots[k]])];
    SparseVec tail;
    tail.entries.assign(row.entries.begin() + 1, row.entries.end());
    SparseVec red = done.reduce(tail);
    red.entries.insert(red.entries.begin(), SparseEntry{pivots[k], 1});
    done.pivot_row_[pivots[k]] = static_cast<std::int32_t>(done.rows_.size());
    done.rows_.push_back(red);
    out[k] = std::move(red);
  }
  return out;
}

Subspace EchelonSpace::to_dense() const {
  std::vector<Vector> vs;
  vs.reserve(rows_.size());
  for (const auto& r : rows_) vs.push_back(r.to_dense(ambient_));
  return Subspace::span(ambient_, field_, vs);
}

std::vector<SparseVec> kernel_of(std::span<const SparseVec> images, std::size_t codomain_dim,
                                 const PrimeField& f) {
  struct Row {
    SparseVec value;
    SparseVec track;
  };
  std::vector<Row> rows;
  std::vector<std::int32_t> pivot_row(codomain_dim, -1);
  std::vector<SparseVec> kernel;

  for (std::size_t i = 0; i < images.size(); ++i) {
    Accumulator& acc = t_main;
    Accumulator& tr = t_track;
    acc.reset(codomain_dim);
    tr.reset(images.size());
    for (const auto& e : images[i].entries) {
      if (e.index >= codomain_dim) throw Error(ErrorCode::invalid_params, "image out of range");
      acc.add(e.index, e.value, f);
    }
    tr.add(static_cast<std::uint32_t>(i), 1, f);
    SparseVec rem;
    while (!acc.empty()) {
      std::uint32_t j = acc.pop();
      Coeff c = acc.value(j);
      if (c == 0) continue;
      std::int32_t r = pivot_row[j];
      if (r < 0) {
        rem.entries.push_back({j, c});
        continue;
      }
      const Row& row = rows[static_cast<std::size_t>(r)];
      Coeff m = f.neg(c);
      acc.clear(j);
      for (std::size_t k = 1; k < row.value.entries.size(); ++k)
        acc.add(row.value.entries[k].index, f.mul(m, row.value.entries[k].value), f);
      tr.add(row.track, m, f);
    }
    SparseVec track = tr.drain();
    if (rem.empty()) {
      kernel.push_back(std::move(track));
      continue;
    }
    Coeff inv = f.inv(rem.entries.front().value);
    rem.scale(inv, f);
    track.scale(inv, f);
    pivot_row[rem.leading_index()] = static_cast<std::int32_t>(rows.size());
    rows.push_back({std::move(rem), std::move(track)});
  }
  return kernel;
}

std::size_t rank_of(std::span<const SparseVec> vs, std::size_t ambient, const PrimeField& f) {
  return EchelonSpace::span(ambient, f, vs).dim();
}

}  // namespace koszul
