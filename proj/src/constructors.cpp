#include "koszul/constructors.hpp"

#include <algorithm>
#include <set>

#include "koszul/error.hpp"

namespace koszul {

namespace {

Monomial mono(std::uint32_t a, std::uint32_t b) { return Monomial{a, b}; }

// c1*m1 + c2*m2 with signed integer coefficients
NcPoly binomial(const PrimeField& f, const Monomial& m1, long long c1, const Monomial& m2,
                long long c2) {
  NcPoly q(f);
  q.add_term(m1, f.from_int(c1));
  q.add_term(m2, f.from_int(c2));
  return q;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t from, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(from + i));
  return out;
}

// Every degree-2 monomial not in `special` becomes a zero relator; each
// special monomial m with coefficient c becomes m - c*omega.
QuadraticPresentation one_dim_top(const PrimeField& f, std::vector<std::string> names,
                                  const Monomial& omega,
                                  const std::vector<std::pair<Monomial, long long>>& special) {
  QuadraticPresentation pres;
  pres.field = f;
  pres.generators = std::move(names);
  const auto d = static_cast<std::uint32_t>(pres.generators.size());
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      Monomial m = mono(i, j);
      if (m == omega) continue;
      auto it = std::find_if(special.begin(), special.end(),
                             [&](const auto& s) { return s.first == m; });
      if (it == special.end()) {
        pres.relators.push_back(NcPoly::monomial(m, f));
      } else {
        pres.relators.push_back(binomial(f, m, 1, omega, -it->second));
      }
    }
  }
  return pres;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::invalid_params, what);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

NcPoly shifted(const NcPoly& q, std::uint32_t offset) {
  NcPoly out(q.field());
  for (const auto& [m, c] : q.terms()) {
    Word w = m.word;
    for (auto& g : w) g += offset;
    out.add_term(Monomial(std::move(w)), c);
  }
  return out;
}

// Concatenates generators of a and b (renaming clashes in b) and copies
// both relator sets.
QuadraticPresentation juxtapose(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  if (!(a.field == b.field))
    throw Error(ErrorCode::mismatched_algebra, "constructions need algebras over the same field");
  QuadraticPresentation out;
  out.field = a.field;
  out.generators = a.generators;
  std::set<std::string> taken(a.generators.begin(), a.generators.end());
  for (const auto& n : b.generators) {
    std::string name = fresh_name(n, taken);
    taken.insert(name);
    out.generators.push_back(name);
  }
  out.relators = a.relators;
  const auto off = static_cast<std::uint32_t>(a.dim());
  for (const auto& r : b.relators) out.relators.push_back(shifted(r, off));
  if (a.designated || b.designated) {
    Vector t(out.dim(), 0);
    if (a.designated) std::copy(a.designated->begin(), a.designated->end(), t.begin());
    if (b.designated) std::copy(b.designated->begin(), b.designated->end(), t.begin() + off);
    out.designated = t;
  }
  out.notes = a.notes;
  out.notes.insert(out.notes.end(), b.notes.begin(), b.notes.end());
  return out;
}

}  // namespace

QuadraticPresentation free_preset(std::size_t d, std::uint32_t p) {
  PrimeField f(p);
  QuadraticPresentation pres;
  pres.field = f;
  pres.generators = numbered("a", 1, d);
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j) pres.relators.push_back(NcPoly::monomial(mono(i, j), f));
  pres.provenance = "free(d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")";
  return pres;
}

QuadraticPresentation demushkin1(std::size_t k, std::uint32_t p) {
  require(k >= 1, "demushkin case 1 needs k >= 1");
  PrimeField f(p);
  std::vector<std::pair<Monomial, long long>> special;
  for (std::uint32_t l = 0; l < k; ++l) {
    special.emplace_back(mono(2 * l, 2 * l + 1), 1);
    special.emplace_back(mono(2 * l + 1, 2 * l), -1);
  }
  auto pres = one_dim_top(f, numbered("a", 1, 2 * k), mono(0, 1), special);
  pres.provenance = "demushkin(case=1,k=" + std::to_string(k) + ",p=" + std::to_string(p) + ")";
  pres.notes.push_back("degree-2 basis vector is the class of a1*a2");
  return pres;
}

QuadraticPresentation demushkin2(std::size_t k) {
  require(k >= 1, "demushkin case 2 needs k >= 1");
  PrimeField f(2);
  std::vector<std::pair<Monomial, long long>> special;
  for (std::uint32_t l = 1; l <= k; ++l) {
    special.emplace_back(mono(2 * l - 1, 2 * l), 1);
    special.emplace_back(mono(2 * l, 2 * l - 1), 1);
  }
  auto pres = one_dim_top(f, numbered("a", 1, 2 * k + 1), mono(0, 0), special);
  pres.provenance = "demushkin(case=2,k=" + std::to_string(k) + ",p=2)";
  pres.notes.push_back("degree-2 basis vector is the class of a1*a1");
  return pres;
}

QuadraticPresentation demushkin3(std::size_t k) {
  require(k >= 1, "demushkin case 3 needs k >= 1");
  PrimeField f(2);
  std::vector<std::pair<Monomial, long long>> special{{mono(0, 0), 1}, {mono(1, 0), 1}};
  for (std::uint32_t l = 1; l < k; ++l) {
    special.emplace_back(mono(2 * l, 2 * l + 1), 1);
    special.emplace_back(mono(2 * l + 1, 2 * l), 1);
  }
  auto pres = one_dim_top(f, numbered("a", 1, 2 * k), mono(0, 1), special);
  pres.provenance = "demushkin(case=3,k=" + std::to_string(k) + ",p=2)";
  pres.notes.push_back("degree-2 basis vector is the class of a1*a2");
  return pres;
}

QuadraticPresentation poly_t(std::uint32_t p) {
  QuadraticPresentation pres;
  pres.field = PrimeField(p);
  pres.generators = {"t"};
  pres.designated = Vector{1};
  pres.provenance = "poly_t(p=" + std::to_string(p) + ")";
  return pres;
}

QuadraticPresentation c2_preset() {
  auto pres = poly_t(2);
  pres.provenance = "c2";
  return pres;
}

QuadraticPresentation t_mod_t2() {
  auto pres = poly_t(2);
  pres.relators.push_back(NcPoly::monomial(mono(0, 0), pres.field));
  pres.provenance = "t_mod_t2";
  return pres;
}

namespace {
QuadraticPresentation rigid(std::size_t d, bool level2) {
  require(d >= 1, "need at least one generator");
  PrimeField f(2);
  QuadraticPresentation pres;
  pres.field = f;
  pres.generators = {"t"};
  auto rest = numbered("a", 2, d - 1);
  pres.generators.insert(pres.generators.end(), rest.begin(), rest.end());
  const auto n = static_cast<std::uint32_t>(d);
  for (std::uint32_t i = 1; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      pres.relators.push_back(binomial(f, mono(j, i), 1, mono(i, j), -1));
  for (std::uint32_t i = 1; i < n; ++i) pres.relators.push_back(binomial(f, mono(i, 0), 1, mono(0, i), -1));
  for (std::uint32_t i = 1; i < n; ++i) pres.relators.push_back(binomial(f, mono(i, i), 1, mono(0, i), -1));
  if (level2) pres.relators.push_back(NcPoly::monomial(mono(0, 0), f));
  Vector t(d, 0);
  t[0] = 1;
  pres.designated = t;
  return pres;
}
}  // namespace

QuadraticPresentation superpythagorean(std::size_t d) {
  auto pres = rigid(d, false);
  pres.provenance = "superpythagorean(d=" + std::to_string(d) + ")";
  return pres;
}

QuadraticPresentation rigid_level2(std::size_t d) {
  auto pres = rigid(d, true);
  pres.provenance = "rigid_level2(d=" + std::to_string(d) + ")";
  return pres;
}

QuadraticPresentation exterior(std::size_t m, std::uint32_t p) {
  PrimeField f(p);
  QuadraticPresentation pres;
  pres.field = f;
  pres.generators = numbered("x", 1, m);
  const auto n = static_cast<std::uint32_t>(m);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      pres.relators.push_back(binomial(f, mono(i, j), 1, mono(j, i), 1));
  for (std::uint32_t i = 0; i < n; ++i) pres.relators.push_back(NcPoly::monomial(mono(i, i), f));
  pres.provenance = "exterior(m=" + std::to_string(m) + ",p=" + std::to_string(p) + ")";
  return pres;
}

QuadraticPresentation direct_sum(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  auto out = juxtapose(a, b);
  const auto da = static_cast<std::uint32_t>(a.dim());
  const auto db = static_cast<std::uint32_t>(b.dim());
  for (std::uint32_t i = 0; i < da; ++i) {
    for (std::uint32_t j = 0; j < db; ++j) {
      out.relators.push_back(NcPoly::monomial(mono(i, da + j), out.field));
      out.relators.push_back(NcPoly::monomial(mono(da + j, i), out.field));
    }
  }
  out.provenance = "direct_sum(" + a.provenance + "," + b.provenance + ")";
  return out;
}

QuadraticPresentation skew_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  auto out = juxtapose(a, b);
  const auto da = static_cast<std::uint32_t>(a.dim());
  const auto db = static_cast<std::uint32_t>(b.dim());
  for (std::uint32_t i = 0; i < da; ++i)
    for (std::uint32_t j = 0; j < db; ++j)
      out.relators.push_back(binomial(out.field, mono(i, da + j), 1, mono(da + j, i), 1));
  out.provenance = "skew_tensor(" + a.provenance + "," + b.provenance + ")";
  return out;
}

QuadraticPresentation twisted_extension(const QuadraticPresentation& a, const Vector& t,
                                        std::size_t m, std::vector<std::string> names) {
  const PrimeField& f = a.field;
  if (t.size() != a.dim())
    throw Error(ErrorCode::invalid_twist, "twist element has the wrong number of coordinates");
  for (Coeff c : t) {
    if (c >= f.p()) throw Error(ErrorCode::invalid_twist, "twist coordinate not reduced mod p");
    // A_1 = V, so t + t = 0 holds iff 2t = 0 coordinatewise
    if (f.add(c, c) != 0)
      throw Error(ErrorCode::invalid_twist,
                  "twist element must satisfy t + t = 0 (only t = 0 is allowed for odd p)");
  }
  std::set<std::string> taken(a.generators.begin(), a.generators.end());
  if (names.empty()) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::string n = fresh_name("x" + std::to_string(j), taken);
      taken.insert(n);
      names.push_back(n);
    }
  } else if (names.size() != m) {
    throw Error(ErrorCode::invalid_params, "twisted extension needs one name per new generator");
  }
  QuadraticPresentation out;
  out.field = f;
  out.generators = a.generators;
  out.generators.insert(out.generators.end(), names.begin(), names.end());
  out.relators = a.relators;
  const auto da = static_cast<std::uint32_t>(a.dim());
  const auto mm = static_cast<std::uint32_t>(m);
  for (std::uint32_t i = 0; i < mm; ++i)
    for (std::uint32_t j = i + 1; j < mm; ++j)
      out.relators.push_back(binomial(f, mono(da + i, da + j), 1, mono(da + j, da + i), 1));
  for (std::uint32_t j = 0; j < mm; ++j)
    for (std::uint32_t g = 0; g < da; ++g)
      out.relators.push_back(binomial(f, mono(da + j, g), 1, mono(g, da + j), 1));
  for (std::uint32_t j = 0; j < mm; ++j) {
    NcPoly q = NcPoly::monomial(mono(da + j, da + j), f);
    for (std::uint32_t g = 0; g < da; ++g)
      if (t[g] != 0) q.add_term(mono(g, da + j), f.neg(t[g]));
    out.relators.push_back(std::move(q));
  }
  Vector tt(out.dim(), 0);
  std::copy(t.begin(), t.end(), tt.begin());
  out.designated = tt;
  out.notes = a.notes;
  std::string tdesc;
  for (Coeff c : t) tdesc += std::to_string(c);
  out.provenance = "twisted_extension(" + a.provenance + ",t=" + tdesc + ",m=" +
                   std::to_string(m) + ")";
  return out;
}

QuadraticPresentation opposite(const QuadraticPresentation& a) {
  QuadraticPresentation out = a;
  for (auto& r : out.relators) r = r.reversed();
  out.provenance = "opposite(" + a.provenance + ")";
  return out;
}

Vector designated_element(const QuadraticPresentation& a) {
  if (!a.designated)
    throw Error(ErrorCode::invalid_twist,
                "algebra '" + a.provenance + "' has no designated degree-1 element");
  return *a.designated;
}

QuadraticPresentation make_preset(const std::string& kind, const std::vector<long long>& params) {
  auto arg = [&](std::size_t i, const char* what) -> long long {
    if (i >= params.size())
      throw Error(ErrorCode::invalid_params, kind + " needs parameter " + what);
    if (params[i] < 0) throw Error(ErrorCode::invalid_params, std::string(what) + " must be >= 0");
    return params[i];
  };
  auto expect = [&](std::size_t n) {
    if (params.size() != n)
      throw Error(ErrorCode::invalid_params,
                  kind + " takes " + std::to_string(n) + " parameter(s)");
  };
  auto u32 = [](long long v) { return static_cast<std::uint32_t>(v); };
  auto sz = [](long long v) { return static_cast<std::size_t>(v); };
  if (kind == "free") {
    expect(2);
    return free_preset(sz(arg(0, "d")), u32(arg(1, "p")));
  }
  if (kind == "demushkin1") {
    expect(2);
    return demushkin1(sz(arg(0, "k")), u32(arg(1, "p")));
  }
  if (kind == "demushkin2") {
    expect(1);
    return demushkin2(sz(arg(0, "k")));
  }
  if (kind == "demushkin3") {
    expect(1);
    return demushkin3(sz(arg(0, "k")));
  }
  if (kind == "c2") {
    expect(0);
    return c2_preset();
  }
  if (kind == "poly_t") {
    expect(1);
    return poly_t(u32(arg(0, "p")));
  }
  if (kind == "t_mod_t2") {
    expect(0);
    return t_mod_t2();
  }
  if (kind == "superpythagorean") {
    expect(1);
    return superpythagorean(sz(arg(0, "d")));
  }
  if (kind == "rigid_level2") {
    expect(1);
    return rigid_level2(sz(arg(0, "d")));
  }
  if (kind == "exterior") {
    expect(2);
    return exterior(sz(arg(0, "m")), u32(arg(1, "p")));
  }
  throw Error(ErrorCode::invalid_params, "unknown preset '" + kind + "'");
}

QuadraticPresentation build_tree(const ConstructorTree& tree) {
  using Kind = ConstructorTree::Kind;
  auto child = [&](std::size_t i) {
    if (i >= tree.children.size() || !tree.children[i])
      throw Error(ErrorCode::invalid_params, "constructor node is missing a child");
    return build_tree(*tree.children[i]);
  };
  auto arity = [&](std::size_t n) {
    if (tree.children.size() != n)
      throw Error(ErrorCode::invalid_params, "constructor node has the wrong number of children");
  };
  switch (tree.kind) {
    case Kind::preset:
      arity(0);
      return make_preset(tree.preset, tree.params);
    case Kind::direct_sum:
      arity(2);
      return direct_sum(child(0), child(1));
    case Kind::skew_tensor:
      arity(2);
      return skew_tensor(child(0), child(1));
    case Kind::opposite:
      arity(1);
      return opposite(child(0));
    case Kind::twisted_extension: {
      arity(1);
      auto base = child(0);
      Vector t;
      switch (tree.twist) {
        case ConstructorTree::Twist::designated:
          t = designated_element(base);
          break;
        case ConstructorTree::Twist::zero:
          t.assign(base.dim(), 0);
          break;
        case ConstructorTree::Twist::explicit_vector:
          t = tree.t;
          break;
      }
      return twisted_extension(base, t, tree.m, tree.names);
    }
  }
  throw Error(ErrorCode::invalid_params, "unknown constructor node");
}

}  // namespace koszul
