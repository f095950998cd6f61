#include "koszul/graded_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "koszul/error.hpp"

namespace koszul {

std::size_t default_truncation(std::size_t generators) {
  return std::max<std::size_t>(2 * generators + 2, 8);
}

namespace {

SparseVec collect(std::vector<SparseEntry>& raw, const PrimeField& f) {
  std::sort(raw.begin(), raw.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  SparseVec out;
  for (const auto& e : raw) {
    if (!out.entries.empty() && out.entries.back().index == e.index) {
      out.entries.back().value = f.add(out.entries.back().value, e.value);
      if (out.entries.back().value == 0) out.entries.pop_back();
    } else if (e.value != 0) {
      out.entries.push_back(e);
    }
  }
  return out;
}

}  // namespace

GradedAlgebra realize(const QuadraticPresentation& pres, const RealizeOptions& opts) {
  pres.validate();
  const std::size_t d = pres.dim();
  const std::size_t N = opts.degree.value_or(default_truncation(d));
  if (N < 2) throw Error(ErrorCode::invalid_params, "truncation degree must be at least 2");
  const MonomialOrder order = opts.order.value_or(MonomialOrder::identity(d));
  if (order.size() != d) throw Error(ErrorCode::invalid_params, "order does not match generators");
  const PrimeField& f = pres.field;

  std::vector<std::size_t> dims(N + 1, 0);
  std::vector<std::vector<Word>> words(N + 1);
  GradedAlgebra::Maps right(N), left(N);
  // word j of A_n is word(parent[n][j]) followed by last[n][j]
  std::vector<std::vector<std::uint32_t>> parent(N + 1), last(N + 1);

  dims[0] = 1;
  words[0] = {Word{}};
  dims[1] = d;
  for (std::uint32_t g = 0; g < d; ++g) {
    words[1].push_back(Word{g});
    parent[1].push_back(0);
    last[1].push_back(g);
  }
  right[0].resize(d, SparseMatrix(d, 1));
  left[0].resize(d, SparseMatrix(d, 1));
  for (std::uint32_t g = 0; g < d; ++g) {
    right[0][g].column(0) = SparseVec::unit(g);
    left[0][g].column(0) = SparseVec::unit(g);
  }

  for (std::size_t n = 1; n < N; ++n) {
    const std::size_t cur = dims[n];
    const std::size_t width = cur * d;
    if (width > opts.max_component) {
      throw Error(ErrorCode::budget_exceeded,
                  "degree " + std::to_string(n + 1) + " needs a working space of " +
                      std::to_string(width) + " coordinates (cap " +
                      std::to_string(opts.max_component) + ")");
    }
    // Coordinates of A_n (x) V sorted by word, greatest first, so pivots of
    // the relation echelon sit on the largest words.
    std::vector<std::uint32_t> sorted(width);
    std::iota(sorted.begin(), sorted.end(), 0u);
    auto word_cmp = [&](std::uint32_t a, std::uint32_t b) {
      const Word& wa = words[n][a / d];
      const Word& wb = words[n][b / d];
      for (std::size_t i = 0; i < wa.size(); ++i)
        if (wa[i] != wb[i]) return order.rank(wa[i]) > order.rank(wb[i]);
      return order.rank(a % d) > order.rank(b % d);
    };
    std::sort(sorted.begin(), sorted.end(), word_cmp);
    std::vector<std::uint32_t> pos(width);
    for (std::uint32_t i = 0; i < width; ++i) pos[sorted[i]] = i;

    EchelonSpace rel(width, f);
    std::vector<SparseEntry> raw;
    for (std::size_t u = 0; u < dims[n - 1]; ++u) {
      for (const auto& r : pres.relators) {
        raw.clear();
        for (const auto& [mono, c] : r.terms()) {
          std::uint32_t a = mono.word[0];
          std::uint32_t b = mono.word[1];
          for (const auto& e : right[n - 1][a].column(u).entries)
            raw.push_back({pos[e.index * d + b], f.mul(c, e.value)});
        }
        SparseVec v = collect(raw, f);
        if (!v.empty()) rel.insert(v);
      }
    }
    std::vector<SparseVec> reduced = rel.canonical_basis();
    std::vector<std::int32_t> pivot_row(width, -1);
    for (std::size_t i = 0; i < reduced.size(); ++i)
      pivot_row[reduced[i].leading_index()] = static_cast<std::int32_t>(i);

    // Non-pivot coordinates, smallest word first, become the next basis.
    const std::size_t next = width - reduced.size();
    std::vector<std::uint32_t> new_index(width, 0);
    std::size_t k = 0;
    for (std::size_t i = width; i-- > 0;) {
      if (pivot_row[i] >= 0) continue;
      new_index[i] = static_cast<std::uint32_t>(k++);
      std::uint32_t coord = sorted[i];
      Word w = words[n][coord / d];
      w.push_back(coord % d);
      words[n + 1].push_back(std::move(w));
      parent[n + 1].push_back(coord / d);
      last[n + 1].push_back(coord % d);
    }
    dims[n + 1] = next;

    right[n].assign(d, SparseMatrix(next, cur));
    for (std::uint32_t g = 0; g < d; ++g) {
      for (std::size_t col = 0; col < cur; ++col) {
        std::uint32_t c = pos[col * d + g];
        SparseVec img;
        if (pivot_row[c] < 0) {
          img = SparseVec::unit(new_index[c]);
        } else {
          const auto& row = reduced[static_cast<std::size_t>(pivot_row[c])];
          for (std::size_t t = 1; t < row.entries.size(); ++t)
            img.entries.push_back({new_index[row.entries[t].index], f.neg(row.entries[t].value)});
          // new_index reverses the coordinate order
          std::reverse(img.entries.begin(), img.entries.end());
        }
        right[n][g].column(col) = std::move(img);
      }
    }
    left[n].assign(d, SparseMatrix(next, cur));
    for (std::uint32_t g = 0; g < d; ++g) {
      for (std::size_t col = 0; col < cur; ++col) {
        const SparseVec& base = left[n - 1][g].column(parent[n][col]);
        left[n][g].column(col) = right[n][last[n][col]].apply(base, f);
      }
    }
  }

  GradedAlgebra A;
  A.pres_ = std::make_shared<const QuadraticPresentation>(pres);
  A.dims_ = std::move(dims);
  A.words_ = std::make_shared<const std::vector<std::vector<Word>>>(std::move(words));
  A.right_ = std::make_shared<const GradedAlgebra::Maps>(std::move(right));
  A.left_ = std::make_shared<const GradedAlgebra::Maps>(std::move(left));
  A.certified_ = std::find(A.dims_.begin(), A.dims_.end(), 0u) != A.dims_.end();
  return A;
}

const SparseMatrix& GradedAlgebra::right(std::size_t n, std::uint32_t g) const {
  if (n >= truncation())
    throw Error(ErrorCode::degree_overflow,
                "product lands in degree " + std::to_string(n + 1) + " beyond truncation " +
                    std::to_string(truncation()));
  return (*right_)[n][g];
}

const SparseMatrix& GradedAlgebra::left(std::size_t n, std::uint32_t g) const {
  if (n >= truncation())
    throw Error(ErrorCode::degree_overflow,
                "product lands in degree " + std::to_string(n + 1) + " beyond truncation " +
                    std::to_string(truncation()));
  return (*left_)[n][g];
}

namespace {
SparseMatrix combine(const std::vector<SparseMatrix>& maps, std::span<const Coeff> x,
                     const PrimeField& f) {
  std::vector<const SparseMatrix*> ptrs;
  std::vector<Coeff> cs;
  for (std::size_t g = 0; g < maps.size(); ++g) {
    if (x[g] == 0) continue;
    ptrs.push_back(&maps[g]);
    cs.push_back(x[g]);
  }
  if (ptrs.empty()) {
    return maps.empty() ? SparseMatrix() : SparseMatrix(maps.front().rows(), maps.front().cols());
  }
  return SparseMatrix::linear_combination(ptrs, cs, f);
}
}  // namespace

SparseMatrix GradedAlgebra::right_by(std::size_t n, std::span<const Coeff> x) const {
  if (x.size() != gens()) throw Error(ErrorCode::invalid_params, "degree-1 element has wrong size");
  right(n, 0);  // range check
  return combine((*right_)[n], x, field());
}

SparseMatrix GradedAlgebra::left_by(std::size_t n, std::span<const Coeff> x) const {
  if (x.size() != gens()) throw Error(ErrorCode::invalid_params, "degree-1 element has wrong size");
  left(n, 0);
  return combine((*left_)[n], x, field());
}

Element GradedAlgebra::one() const { return {0, SparseVec::unit(0)}; }

Element GradedAlgebra::generator(std::uint32_t g) const {
  if (g >= gens()) throw Error(ErrorCode::invalid_params, "generator index out of range");
  return {1, SparseVec::unit(g)};
}

Element GradedAlgebra::degree_one(std::span<const Coeff> x) const {
  if (x.size() != gens()) throw Error(ErrorCode::invalid_params, "degree-1 element has wrong size");
  return {1, SparseVec::from_dense(x)};
}

Element GradedAlgebra::word_class(const Word& w) const {
  if (w.size() > truncation())
    throw Error(ErrorCode::degree_overflow, "word longer than truncation");
  SparseVec v = SparseVec::unit(0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= gens()) throw Error(ErrorCode::invalid_params, "generator index out of range");
    v = (*right_)[i][w[i]].apply(v, field());
  }
  return {w.size(), std::move(v)};
}

Element GradedAlgebra::evaluate(const NcPoly& q) const {
  if (q.is_zero()) return {0, {}};
  std::size_t deg = q.terms().begin()->first.degree();
  if (!q.homogeneous_of_degree(deg))
    throw Error(ErrorCode::invalid_params, "only homogeneous polynomials can be evaluated");
  Element out{deg, {}};
  for (const auto& [m, c] : q.terms()) out.coords.axpy(c, word_class(m.word).coords, field());
  return out;
}

Element GradedAlgebra::multiply(const Element& a, const Element& b) const {
  const std::size_t deg = a.degree + b.degree;
  if (deg > truncation())
    throw Error(ErrorCode::degree_overflow,
                "product of degree " + std::to_string(deg) + " exceeds truncation " +
                    std::to_string(truncation()));
  Element out{deg, {}};
  for (const auto& e : b.coords.entries) {
    SparseVec v = a.coords;
    const Word& w = basis_words(b.degree)[e.index];
    // words are stored in this algebra's own multiplication order
    for (std::size_t i = 0; i < w.size(); ++i) v = (*right_)[a.degree + i][w[i]].apply(v, field());
    out.coords.axpy(e.value, v, field());
  }
  return out;
}

Element GradedAlgebra::add(const Element& a, const Element& b) const {
  if (a.degree != b.degree && !a.coords.empty() && !b.coords.empty())
    throw Error(ErrorCode::invalid_params, "adding elements of different degrees");
  Element out = a.coords.empty() ? Element{b.degree, a.coords} : a;
  out.coords.axpy(1, b.coords, field());
  return out;
}

Element GradedAlgebra::scale(const Element& a, Coeff c) const {
  Element out = a;
  out.coords.scale(c % field().p(), field());
  return out;
}

std::vector<std::uint64_t> GradedAlgebra::hilbert_series() const {
  return {dims_.begin(), dims_.end()};
}

GradedAlgebra::Tables GradedAlgebra::tables() const {
  return {dims_, *words_, *right_, *left_};
}

GradedAlgebra GradedAlgebra::from_tables(const QuadraticPresentation& pres, Tables t) {
  pres.validate();
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::invalid_params, "cached tables: " + what);
  };
  const std::size_t d = pres.dim();
  if (t.dims.size() < 3) throw bad("truncation below 2");
  const std::size_t N = t.dims.size() - 1;
  if (t.dims[0] != 1 || t.dims[1] != d) throw bad("dims[0..1] do not match the presentation");
  if (t.basis.size() != N + 1) throw bad("basis has the wrong number of degrees");
  for (std::size_t n = 0; n <= N; ++n) {
    if (t.basis[n].size() != t.dims[n]) throw bad("basis size differs from dims in degree " + std::to_string(n));
    for (const auto& w : t.basis[n]) {
      if (w.size() != n) throw bad("word of the wrong length in degree " + std::to_string(n));
      for (auto g : w)
        if (g >= d) throw bad("generator index out of range");
    }
  }
  for (const auto* maps : {&t.right, &t.left}) {
    if (maps->size() != N) throw bad("multiplication tables have the wrong number of degrees");
    for (std::size_t n = 0; n < N; ++n) {
      if ((*maps)[n].size() != d) throw bad("one table per generator expected");
      for (const auto& m : (*maps)[n]) {
        if (m.rows() != t.dims[n + 1] || m.cols() != t.dims[n]) throw bad("table shape mismatch");
        for (std::size_t c = 0; c < m.cols(); ++c) {
          std::uint32_t prev = 0;
          bool first = true;
          for (const auto& e : m.column(c).entries) {
            if (e.index >= m.rows() || e.value == 0 || e.value >= pres.p() ||
                (!first && e.index <= prev))
              throw bad("malformed column");
            prev = e.index;
            first = false;
          }
        }
      }
    }
  }
  GradedAlgebra A;
  A.pres_ = std::make_shared<const QuadraticPresentation>(pres);
  A.dims_ = std::move(t.dims);
  A.words_ = std::make_shared<const std::vector<std::vector<Word>>>(std::move(t.basis));
  A.right_ = std::make_shared<const Maps>(std::move(t.right));
  A.left_ = std::make_shared<const Maps>(std::move(t.left));
  A.certified_ = std::find(A.dims_.begin(), A.dims_.end(), 0u) != A.dims_.end();
  return A;
}

GradedAlgebra GradedAlgebra::opposite() const {
  GradedAlgebra op = *this;
  QuadraticPresentation p = *pres_;
  for (auto& r : p.relators) r = r.reversed();
  if (!p.provenance.empty()) p.provenance = "opposite(" + p.provenance + ")";
  op.pres_ = std::make_shared<const QuadraticPresentation>(std::move(p));
  auto words = *words_;
  for (auto& layer : words)
    for (auto& w : layer) std::reverse(w.begin(), w.end());
  op.words_ = std::make_shared<const std::vector<std::vector<Word>>>(std::move(words));
  std::swap(op.left_, op.right_);
  op.opposite_ = !opposite_;
  return op;
}

std::size_t tensor_slice_dimension(const QuadraticPresentation& pres, std::size_t n) {
  const std::size_t d = pres.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  if (n < 2) return total;
  const PrimeField& f = pres.field;
  EchelonSpace span(total, f);
  auto code = [d](const Word& w) {
    std::uint32_t c = 0;
    for (auto g : w) c = c * static_cast<std::uint32_t>(d) + g;
    return c;
  };
  std::vector<SparseEntry> raw;
  for (std::size_t i = 0; i + 2 <= n; ++i) {
    std::size_t left_count = 1, right_count = 1;
    for (std::size_t k = 0; k < i; ++k) left_count *= d;
    for (std::size_t k = 0; k < n - 2 - i; ++k) right_count *= d;
    for (std::size_t lc = 0; lc < left_count; ++lc) {
      for (std::size_t rc = 0; rc < right_count; ++rc) {
        for (const auto& r : pres.relators) {
          raw.clear();
          for (const auto& [m, c] : r.terms()) {
            std::uint32_t idx = static_cast<std::uint32_t>(lc);
            idx = idx * static_cast<std::uint32_t>(d * d) + code(m.word);
            idx = idx * static_cast<std::uint32_t>(right_count) + static_cast<std::uint32_t>(rc);
            raw.push_back({idx, c});
          }
          span.insert(collect(raw, f));
        }
      }
    }
  }
  return total - span.dim();
}

}  // namespace koszul
