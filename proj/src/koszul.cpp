#include "koszul/koszul.hpp"

#include <algorithm>
#include <set>

#include "koszul/error.hpp"
#include "koszul/parallel.hpp"

namespace koszul {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds_certified: return "holds_certified";
    case Status::holds_up_to: return "holds_up_to";
    case Status::fails: return "fails";
    case Status::inconclusive_up_to: return "inconclusive_up_to";
  }
  return "?";
}

namespace {

Status passing_status(const GradedAlgebra& A) {
  return A.finite_dim_certified() ? Status::holds_certified : Status::holds_up_to;
}

std::size_t colon_top(const GradedAlgebra& A) {
  if (A.truncation() < 2)
    throw Error(ErrorCode::degree_overflow, "colon checks need the algebra through degree 2");
  return A.truncation();
}

Subspace span_of(const std::vector<Vector>& X, const std::vector<std::size_t>& idx, std::size_t d,
                 const PrimeField& f) {
  std::vector<Vector> vs;
  for (auto i : idx) vs.push_back(X[i]);
  return Subspace::span(d, f, vs);
}

}  // namespace

// ---- linear resolutions ----

LinearityResult linear_resolution_check(const GradedAlgebra& A, const ModuleSpec& module,
                                        std::size_t i_max, std::size_t j_max) {
  LinearityResult r;
  r.base_degree = (module.kind == ModuleSpec::Kind::augmentation ||
                   module.kind == ModuleSpec::Kind::ideal)
                      ? 1
                      : 0;
  r.table = betti_table(A, module, i_max, j_max);
  for (std::size_t j = 0; j <= j_max; ++j)
    if (j != r.base_degree && r.table.at(0, j) != 0)
      throw Error(ErrorCode::invalid_params, "module is not generated in a single degree");
  for (std::size_t i = 0; i <= i_max && !r.offender; ++i)
    for (std::size_t j = 0; j <= j_max; ++j) {
      if (!r.table.column_complete[j]) continue;
      if (j != i + r.base_degree && r.table.at(i, j) != 0) {
        r.offender = LinearityResult::Offender{i, j, r.table.at(i, j)};
        break;
      }
    }
  r.status = r.offender ? Status::fails : Status::holds_up_to;
  return r;
}

// ---- universal Koszulity ----

UniversalResult universal_koszulity(const GradedAlgebra& A, Side side, const SuiteOptions& opts) {
  const std::size_t N = colon_top(A);
  const std::size_t d = A.gens();
  const std::uint32_t p = A.field().p();
  GradedAlgebra B = acting_algebra(A, side);
  auto subspaces = enumerate_subspaces(d, p, std::nullopt, opts.budget.max_subspaces);
  IdealDimCache generated(B, N - 1);

  struct Local {
    std::uint64_t pairs = 0, colons = 0, degenerate = 0;
    std::optional<ColonFailure> fail;
  };
  std::vector<Local> local(subspaces.size());
  std::uint64_t codes = 1;
  for (std::size_t i = 0; i < d; ++i) codes *= p;

  parallel_for(
      subspaces.size(),
      [&](std::size_t i) {
        const Subspace& W = subspaces[i];
        Local& out = local[i];
        // J:x only depends on the class of x modulo W up to a scalar
        std::set<Vector> keys;
        for (std::uint64_t code = 1; code < codes; ++code) {
          Vector x = vector_from_code(code, d, p);
          auto key = colon_key(W, x);
          if (!key) {
            ++out.degenerate;
            continue;
          }
          ++out.pairs;
          keys.insert(std::move(*key));
        }
        if (keys.empty()) return;
        auto jc = left_ideal_components(B, W, N);
        for (const Vector& x : keys) {
          ++out.colons;
          std::vector<EchelonSpace> ker;
          auto dims = colon_dims(B, jc, x, &ker, 1);
          Subspace c1 = ker[1].to_dense();
          auto gdims = generated.dims(c1);
          for (std::size_t n = 2; n < N; ++n) {
            if (dims[n] == gdims[n]) continue;
            ColonFailure f;
            f.w = W;
            f.x = x;
            f.degree = n;
            colon_dims(B, jc, x, &ker, n);
            auto gen = left_ideal_components(B, c1, n);
            for (const auto& row : ker[n].canonical_basis())
              if (!gen[n].contains(row)) {
                f.element = row;
                break;
              }
            out.fail = std::move(f);
            return;
          }
        }
      },
      opts.threads);

  UniversalResult r;
  r.side = side;
  r.bound = N - 1;
  r.subspaces = subspaces.size();
  for (auto& l : local) {
    r.pairs += l.pairs;
    r.colons += l.colons;
    r.degenerate += l.degenerate;
    if (l.fail && !r.witness) r.witness = std::move(l.fail);
  }
  r.status = r.witness ? Status::fails : passing_status(A);
  return r;
}

// ---- strong Koszulity ----

ColonMemo::Entry ColonMemo::get(const Subspace& w, const Vector& key) {
  auto k = std::make_pair(w, key);
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
  }
  auto jc = left_ideal_components(b_, w, top_);
  std::vector<EchelonSpace> ker;
  Entry e;
  e.dims = colon_dims(b_, jc, key, &ker, 1);
  e.c1 = ker[1].to_dense();
  std::lock_guard lock(mu_);
  return cache_.emplace(std::move(k), std::move(e)).first->second;
}

StrongResult strong_koszulity(const GradedAlgebra& A, const std::vector<Vector>& X, Side side,
                              ColonMemo* memo) {
  const std::size_t N = colon_top(A);
  const std::size_t d = A.gens();
  if (X.size() != d || Subspace::span(d, A.field(), X).dim() != d)
    throw Error(ErrorCode::invalid_params, "X must be a basis of the degree-1 component");
  if (d > 20) throw Error(ErrorCode::budget_exceeded, "too many generators for subset checks");
  std::optional<ColonMemo> own;
  if (!memo) memo = &own.emplace(acting_algebra(A, side), N);

  StrongResult r;
  r.basis = X;
  r.bound = N - 1;
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    std::vector<std::size_t> y;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) y.push_back(i);
    Subspace W = span_of(X, y, d, A.field());
    for (std::size_t xi = 0; xi < d; ++xi) {
      if (mask >> xi & 1) continue;
      ++r.colons;
      auto key = colon_key(W, X[xi]);
      auto entry = memo->get(W, *key);
      std::vector<std::size_t> s;
      for (std::size_t u = 0; u < d; ++u)
        if (entry.c1.contains(X[u])) s.push_back(u);
      std::optional<std::size_t> bad;
      if (entry.c1.dim() != s.size()) {
        bad = 1;
      } else {
        auto gdims = memo->ideal_dims(span_of(X, s, d, A.field()));
        for (std::size_t n = 2; n < N && !bad; ++n)
          if (entry.dims[n] != gdims[n]) bad = n;
      }
      if (bad) {
        r.status = Status::fails;
        r.witness = StrongFailure{y, xi, *bad, s};
        return r;
      }
    }
  }
  r.status = passing_status(A);
  return r;
}

StrongSearchResult strong_koszulity_search(const GradedAlgebra& A, Side side,
                                           const SuiteOptions& opts) {
  const std::size_t N = colon_top(A);
  if (A.field().p() != 2)
    throw Error(ErrorCode::invalid_params, "basis search is only implemented over F_2");
  if (A.gens() > opts.budget.max_basis_dim)
    throw Error(ErrorCode::budget_exceeded,
                "basis search capped at dimension " + std::to_string(opts.budget.max_basis_dim));
  auto bases = enumerate_bases(A.gens(), 2, opts.budget.max_basis_dim, opts.budget.max_bases);
  ColonMemo memo(acting_algebra(A, side), N);
  StrongSearchResult r;
  r.bound = N - 1;
  r.per_basis.resize(bases.size());
  parallel_for(
      bases.size(), [&](std::size_t i) { r.per_basis[i] = strong_koszulity(A, bases[i], side, &memo); },
      opts.threads);
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (holds(r.per_basis[i].status)) {
      r.passing = i;
      r.status = r.per_basis[i].status;
      break;
    }
  return r;
}

// ---- filtrations ----

std::vector<Subspace> all_linear_ideals(const GradedAlgebra& A, const Budget& budget) {
  return enumerate_subspaces(A.gens(), A.field().p(), std::nullopt, budget.max_subspaces);
}

FiltrationResult verify_koszul_filtration(const GradedAlgebra& A, std::vector<Subspace> family,
                                          Side side) {
  const std::size_t N = colon_top(A);
  const std::size_t d = A.gens();
  for (const auto& s : family)
    if (s.ambient_dim() != d)
      throw Error(ErrorCode::invalid_params, "family member lives in the wrong space");
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  FiltrationResult r;
  r.bound = N - 1;
  r.family = family;
  auto index_of = [&](const Subspace& s) -> std::optional<std::size_t> {
    auto it = std::lower_bound(family.begin(), family.end(), s);
    if (it == family.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - family.begin());
  };
  if (!index_of(Subspace(d, A.field()))) {
    r.reason = "the zero ideal is missing";
    return r;
  }
  if (!index_of(Subspace::full(d, A.field()))) {
    r.reason = "A_+ is missing";
    return r;
  }

  GradedAlgebra B = acting_algebra(A, side);
  IdealDimCache generated(B, N - 1);
  std::vector<std::optional<std::vector<EchelonSpace>>> comps(family.size());

  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subspace& I = family[i];
    if (I.dim() == 0) continue;
    bool found = false;
    for (std::size_t j = 0; j < family.size() && !found; ++j) {
      const Subspace& J = family[j];
      if (J.dim() + 1 != I.dim() || !I.contains(J)) continue;
      // J:x depends only on x modulo J, so one x per hyperplane J of I
      Vector x;
      for (const auto& v : I.basis_vectors())
        if (!J.contains(v)) {
          x = *colon_key(J, v);
          break;
        }
      if (!comps[j]) comps[j] = left_ideal_components(B, J, N);
      std::vector<EchelonSpace> ker;
      auto dims = colon_dims(B, *comps[j], x, &ker, 1);
      Subspace c1 = ker[1].to_dense();
      auto target = index_of(c1);
      if (!target) continue;
      auto gdims = generated.dims(c1);
      bool ok = true;
      for (std::size_t n = 2; n < N && ok; ++n) ok = dims[n] == gdims[n];
      if (!ok) continue;
      r.witnesses.push_back({i, j, *target, x});
      found = true;
    }
    if (!found) {
      r.unwitnessed = i;
      r.reason = "no J in the family with I = J + Ax and J:x in the family";
      r.witnesses.clear();
      return r;
    }
  }
  r.status = passing_status(A);
  return r;
}

std::vector<Subspace> build_direct_sum_filtration(const std::vector<Subspace>& fa,
                                                  const std::vector<Subspace>& fb) {
  if (fa.empty() || fb.empty()) return {};
  const std::size_t da = fa.front().ambient_dim();
  const std::size_t db = fb.front().ambient_dim();
  const PrimeField f = fa.front().field();
  std::set<Subspace> out;
  for (const auto& I : fa)
    for (const auto& J : fb) {
      std::vector<Vector> vs;
      for (const auto& v : I.basis_vectors()) {
        Vector e(da + db, 0);
        std::copy(v.begin(), v.end(), e.begin());
        vs.push_back(std::move(e));
      }
      for (const auto& v : J.basis_vectors()) {
        Vector e(da + db, 0);
        std::copy(v.begin(), v.end(), e.begin() + static_cast<std::ptrdiff_t>(da));
        vs.push_back(std::move(e));
      }
      out.insert(Subspace::span(da + db, f, vs));
    }
  return {out.begin(), out.end()};
}

std::optional<Subspace> heart_violation(const std::vector<Subspace>& fa, const Vector& t) {
  std::vector<Subspace> sorted(fa.begin(), fa.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& J : sorted) {
    Subspace grown = J + Subspace::span(J.ambient_dim(), J.field(), std::vector<Vector>{t});
    if (!std::binary_search(sorted.begin(), sorted.end(), grown)) return J;
  }
  return std::nullopt;
}

std::vector<Subspace> build_twisted_extension_filtration(const std::vector<Subspace>& fa,
                                                         const Vector& t, std::size_t m,
                                                         const std::vector<std::string>& names) {
  if (fa.empty()) return {};
  const std::size_t da = fa.front().ambient_dim();
  const PrimeField f = fa.front().field();
  if (t.size() != da) throw Error(ErrorCode::invalid_params, "t must be a degree-1 element");
  if (2 * m > 62) throw Error(ErrorCode::budget_exceeded, "too many new generators");
  std::vector<Subspace> sorted(fa.begin(), fa.end());
  std::sort(sorted.begin(), sorted.end());
  if (auto J = heart_violation(sorted, t)) {
    Subspace grown = *J + Subspace::span(da, f, std::vector<Vector>{t});
    throw Error(ErrorCode::heart_property_violated,
                "J = " + describe_subspace(*J, names) + " is in the family but J + At = " +
                    describe_subspace(grown, names) + " is not");
  }
  const std::size_t n = da + m;
  std::vector<Vector> extra;
  for (std::size_t i = 0; i < m; ++i) {
    Vector e(n, 0);
    e[da + i] = 1;
    extra.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < m; ++i) {
    Vector e(n, 0);
    std::copy(t.begin(), t.end(), e.begin());
    e[da + i] = f.neg(1);
    extra.push_back(std::move(e));
  }
  std::set<Subspace> out;
  for (const auto& I : sorted)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * m)); ++mask) {
      std::vector<Vector> vs;
      for (const auto& v : I.basis_vectors()) {
        Vector e(n, 0);
        std::copy(v.begin(), v.end(), e.begin());
        vs.push_back(std::move(e));
      }
      for (std::size_t k = 0; k < 2 * m; ++k)
        if (mask >> k & 1) vs.push_back(extra[k]);
      out.insert(Subspace::span(n, f, vs));
    }
  return {out.begin(), out.end()};
}

// ---- flags ----

FlagResult koszul_flag_check(const GradedAlgebra& A, const std::vector<Vector>& X,
                             std::size_t i_max, std::size_t j_max, Side side) {
  const std::size_t d = A.gens();
  if (X.size() != d || Subspace::span(d, A.field(), X).dim() != d)
    throw Error(ErrorCode::invalid_params, "X must be a basis of the degree-1 component");
  FlagResult r;
  r.i_max = i_max;
  r.j_max = j_max;
  for (std::size_t k = 1; k <= d; ++k) {
    Subspace w = Subspace::span(d, A.field(), std::span<const Vector>(X.data(), k));
    auto lr = linear_resolution_check(A, ModuleSpec::ideal_module(w, side), i_max, j_max);
    r.tables.push_back(lr.table);
    if (lr.offender) {
      r.status = Status::fails;
      r.failing = k - 1;
      r.offender = lr.offender;
      return r;
    }
  }
  return r;
}

}  // namespace koszul
