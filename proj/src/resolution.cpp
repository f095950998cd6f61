#include "koszul/resolution.hpp"

#include <algorithm>

#include "koszul/error.hpp"

namespace koszul {

std::string ModuleSpec::describe(const std::vector<std::string>& names) const {
  std::string side_tag = side == Side::left ? "" : " (right)";
  switch (kind) {
    case Kind::trivial:
      return "K" + side_tag;
    case Kind::augmentation:
      return "A_+" + side_tag;
    case Kind::ideal:
      return describe_subspace(w, names) + side_tag;
    case Kind::quotient:
      return "A/" + describe_subspace(w, names) + side_tag;
  }
  return "?";
}

namespace {

constexpr std::uint64_t kMaxFreeRank = 2'000'000;

// Degree-j slice of a free module sum_k A(-s_k): one block of A_{j-s_k} for
// every generator with s_k <= j, in generator order.
struct Slice {
  std::vector<std::size_t> gen;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

struct FreeModule {
  std::vector<std::size_t> shifts;  // nondecreasing
  std::vector<Slice> slices;        // per degree 0..j_max

  FreeModule(const GradedAlgebra& B, std::vector<std::size_t> s, std::size_t j_max)
      : shifts(std::move(s)) {
    for (std::size_t j = 0; j <= j_max; ++j) {
      Slice sl;
      for (std::size_t k = 0; k < shifts.size() && shifts[k] <= j; ++k) {
        sl.gen.push_back(k);
        sl.offset.push_back(sl.total);
        sl.total += B.dim(j - shifts[k]);
      }
      if (sl.total > kMaxFreeRank)
        throw Error(ErrorCode::budget_exceeded, "free module in the resolution grew past " +
                                                    std::to_string(kMaxFreeRank) + " dimensions");
      slices.push_back(std::move(sl));
    }
  }
};

// g * v for v in F_j, landing in F_{j+1}.
SparseVec left_act(const GradedAlgebra& B, const FreeModule& F, std::size_t j, std::uint32_t g,
                   const SparseVec& v) {
  const Slice& here = F.slices[j];
  const Slice& next = F.slices[j + 1];
  const PrimeField& f = B.field();
  SparseVec out;
  std::size_t block = 0;
  std::size_t k = here.gen.size();
  SparseVec piece;
  auto flush = [&]() {
    if (k == here.gen.size() || piece.empty()) return;
    const std::size_t n = j - F.shifts[here.gen[k]];
    SparseVec img = B.left(n, g).apply(piece, f);
    for (auto& e : img.entries) e.index += static_cast<std::uint32_t>(next.offset[k]);
    out.axpy(1, img, f);
    piece.entries.clear();
  };
  for (const auto& e : v.entries) {
    auto it = std::upper_bound(here.offset.begin(), here.offset.end(), e.index);
    block = static_cast<std::size_t>(it - here.offset.begin()) - 1;
    if (block != k) {
      flush();
      k = block;
    }
    piece.entries.push_back({static_cast<std::uint32_t>(e.index - here.offset[k]), e.value});
  }
  flush();
  return out;
}

// Betti numbers beta_{0..steps-1, 0..j_max} of the submodule Z of the free
// module with the given shifts.
std::vector<std::vector<std::uint64_t>> resolve(const GradedAlgebra& B,
                                                std::vector<std::size_t> shifts,
                                                std::vector<EchelonSpace> Z, std::size_t steps,
                                                std::size_t j_max) {
  const PrimeField& f = B.field();
  std::vector<std::vector<std::uint64_t>> beta;
  FreeModule F(B, std::move(shifts), j_max);
  for (std::size_t i = 0; i < steps; ++i) {
    std::vector<std::uint64_t> row(j_max + 1, 0);
    std::vector<std::size_t> gen_deg;
    std::vector<SparseVec> gens;
    for (std::size_t j = 0; j <= j_max; ++j) {
      EchelonSpace cover(F.slices[j].total, f);
      if (j > 0)
        for (const auto& z : Z[j - 1].rows())
          for (std::uint32_t g = 0; g < B.gens(); ++g) cover.insert(left_act(B, F, j - 1, g, z));
      for (const auto& z : Z[j].canonical_basis()) {
        if (cover.dim() == Z[j].dim()) break;
        if (cover.insert(z)) {
          gens.push_back(z);
          gen_deg.push_back(j);
          ++row[j];
        }
      }
    }
    beta.push_back(std::move(row));
    if (i + 1 == steps) break;

    // syzygies of the chosen generators
    FreeModule G(B, gen_deg, j_max);
    // T[z][m][e] = (basis element e of A_m) * z
    std::vector<std::vector<std::vector<SparseVec>>> T(gens.size());
    for (std::size_t z = 0; z < gens.size(); ++z) {
      T[z].push_back({gens[z]});
      for (std::size_t m = 0; gen_deg[z] + m + 1 <= j_max; ++m) {
        std::vector<SparseVec> cols;
        for (const Word& w : B.basis_words(m + 1)) {
          Word rest(w.begin() + 1, w.end());
          SparseVec acc;
          for (const auto& e : B.word_class(rest).coords.entries)
            acc.axpy(e.value, T[z][m][e.index], f);
          cols.push_back(left_act(B, F, gen_deg[z] + m, w[0], acc));
        }
        T[z].push_back(std::move(cols));
      }
    }
    std::vector<EchelonSpace> next;
    for (std::size_t j = 0; j <= j_max; ++j) {
      std::vector<SparseVec> images;
      images.reserve(G.slices[j].total);
      for (std::size_t z : G.slices[j].gen)
        for (const auto& c : T[z][j - gen_deg[z]]) images.push_back(c);
      auto ker = kernel_of(images, F.slices[j].total, f);
      next.push_back(EchelonSpace::span(G.slices[j].total, f, ker));
    }
    F = std::move(G);
    Z = std::move(next);
  }
  return beta;
}

}  // namespace

BettiTable betti_table(const GradedAlgebra& A, const ModuleSpec& module, std::size_t i_max,
                       std::size_t j_max) {
  if (module.kind == ModuleSpec::Kind::ideal || module.kind == ModuleSpec::Kind::quotient) {
    if (module.w.ambient_dim() != A.gens())
      throw Error(ErrorCode::invalid_params, "ideal generators live in the wrong space");
  }
  GradedAlgebra B = acting_algebra(A, module.side);
  BettiTable t;
  t.module = module.describe(A.presentation().generators);
  t.i_max = i_max;
  t.j_max = j_max;
  t.beta.assign(i_max + 1, std::vector<std::uint64_t>(j_max + 1, 0));
  const std::size_t jc = std::min(j_max, A.truncation());
  for (std::size_t j = 0; j <= j_max; ++j) t.column_complete.push_back(j <= jc);

  Subspace w;
  bool shifted = false;  // quotient-type modules: beta_{0,0} = 1, then the ideal
  switch (module.kind) {
    case ModuleSpec::Kind::trivial:
      w = Subspace::full(A.gens(), A.field());
      shifted = true;
      break;
    case ModuleSpec::Kind::augmentation:
      w = Subspace::full(A.gens(), A.field());
      break;
    case ModuleSpec::Kind::ideal:
      w = module.w;
      break;
    case ModuleSpec::Kind::quotient:
      w = module.w;
      shifted = true;
      break;
  }
  std::size_t steps = i_max + 1;
  if (shifted) {
    t.beta[0][0] = 1;
    if (i_max == 0) return t;
    steps = i_max;
  }
  auto Z = left_ideal_components(B, w, jc);
  auto beta = resolve(B, {0}, std::move(Z), steps, jc);
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::size_t j = 0; j <= jc; ++j) t.beta[i + (shifted ? 1 : 0)][j] = beta[i][j];
  return t;
}

std::vector<std::int64_t> poincare_from_hilbert(const std::vector<std::uint64_t>& h,
                                                std::size_t n) {
  if (h.empty() || h[0] != 1)
    throw Error(ErrorCode::invalid_params, "Hilbert series must start with 1");
  // q = 1/h, p_k = (-1)^k q_k
  std::vector<std::int64_t> q(n + 1, 0);
  q[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::int64_t s = 0;
    for (std::size_t i = 1; i <= k && i < h.size(); ++i) {
      std::int64_t term;
      if (__builtin_mul_overflow(static_cast<std::int64_t>(h[i]), q[k - i], &term) ||
          __builtin_sub_overflow(s, term, &s))
        throw Error(ErrorCode::budget_exceeded, "Poincare coefficient overflows 64 bits");
    }
    q[k] = s;
  }
  for (std::size_t k = 1; k <= n; k += 2) q[k] = -q[k];
  return q;
}

}  // namespace koszul
