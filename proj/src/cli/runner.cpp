#include "koszul/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "koszul/constructors.hpp"
#include "koszul/koszul.hpp"
#include "koszul/parallel.hpp"
#include "koszul/rewriting.hpp"

namespace koszul::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kColonDegree = 8;
constexpr std::size_t kBettiBound = 6;

// Statuses beyond the four verdicts.
constexpr const char* kComputed = "computed";
constexpr const char* kSkipped = "skipped";
constexpr const char* kBudget = "budget_exceeded";
constexpr const char* kError = "error";

std::string deg(std::size_t n) { return "up to degree " + std::to_string(n); }

std::string qualifier_for(Status s, std::size_t bound) {
  switch (s) {
    case Status::holds_certified: return "certified";
    case Status::holds_up_to: return deg(bound);
    case Status::fails: return "definitive";
    case Status::inconclusive_up_to: return "inconclusive " + deg(bound);
  }
  return "";
}

std::optional<long long> int_arg(const Call& c, std::string_view key) {
  if (const Arg* a = c.find(key)) return a->value.integer;
  return std::nullopt;
}

Side side_arg(const Call& c) {
  const Arg* a = c.find("side");
  return a && a->value.text == "right" ? Side::right : Side::left;
}

json value_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::integer: return v.integer;
    case Value::Kind::identifier:
    case Value::Kind::string: return v.text;
    case Value::Kind::list: {
      json out = json::array();
      for (const auto& x : v.items) out.push_back(value_json(x));
      return out;
    }
    case Value::Kind::call: return serialize(*v.call);
  }
  return nullptr;
}

json args_json(const Call& c) {
  json out = json::object();
  for (const auto& a : c.args)
    if (!a.key.empty() && a.key != "note") out[a.key] = value_json(a.value);
  return out;
}

std::string element_string(const GradedAlgebra& A, std::size_t n, const SparseVec& v) {
  NcPoly q;
  bool first = true;
  for (const auto& e : v.entries) {
    NcPoly t = NcPoly::monomial(Monomial(A.basis_words(n)[e.index]), A.field(), e.value);
    if (first) {
      q = t;
      first = false;
    } else {
      q += t;
    }
  }
  if (first) return "0";
  return to_string(q, A.presentation().generators);
}

json subspace_json(const Subspace& w, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& v : w.basis_vectors()) out.push_back(linear_form(v, names));
  return out;
}

json vectors_json(const std::vector<Vector>& vs, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(linear_form(v, names));
  return out;
}

json betti_json(const BettiTable& t) {
  json j;
  j["module"] = t.module;
  j["i_max"] = t.i_max;
  j["j_max"] = t.j_max;
  j["beta"] = t.beta;
  json cc = json::array();
  for (bool b : t.column_complete) cc.push_back(static_cast<bool>(b));
  j["column_complete"] = cc;
  return j;
}

class Runner {
 public:
  explicit Runner(const RunOptions& o) : opt_(o) {
    if (opt_.budget) {
      budget_.max_subspaces = *opt_.budget;
      budget_.max_bases = *opt_.budget;
      budget_.vertex_cap = static_cast<std::size_t>(*opt_.budget);
    }
    threads_ = std::max<std::size_t>(1, opt_.threads);
  }

  RunResult go(const Script& s) {
    try {
      for (const auto& st : s.statements) statement(st);
      write_dot_option();
    } catch (const ParseError& e) {
      fatal("parse_error", e.line(), e.column(), e.detail());
    } catch (const SemanticError& e) {
      fatal(e.kind(), e.pos().line, e.pos().column, e.detail());
    } catch (const Error& e) {
      fatal(std::string(to_string(e.code())), current_.line, current_.column, e.what());
    }
    return finish();
  }

  // Used for errors raised before anything ran.
  RunResult failed(const std::string& kind, std::size_t line, std::size_t column,
                   const std::string& message) {
    fatal(kind, line, column, message);
    return finish();
  }

 private:
  struct Algebra {
    QuadraticPresentation pres;
    std::set<std::size_t> realized;
  };

  // ---- statements ----

  void statement(const Statement& st) {
    current_ = st.pos;
    switch (st.kind) {
      case Statement::Kind::define_algebra: {
        QuadraticPresentation P;
        P.field = PrimeField(static_cast<std::uint32_t>(st.p));
        P.generators = st.generators;
        for (const auto& r : st.relations)
          P.relators.push_back(parse_relation(r, P.generators, P.field));
        P.provenance = "script";
        define(st.name, std::move(P));
        return;
      }
      case Statement::Kind::define_preset:
      case Statement::Kind::build:
        define(st.name, construct(st.call));
        return;
      case Statement::Kind::check:
        check(st.call);
        return;
      case Statement::Kind::emit:
        emit(st.call);
        return;
    }
  }

  void define(const std::string& name, QuadraticPresentation P) {
    P.validate();
    order_.push_back(name);
    algebras_[name] = Algebra{std::move(P), {}};
  }

  const QuadraticPresentation& pres(const std::string& name) const {
    return algebras_.at(name).pres;
  }

  QuadraticPresentation operand(const Value& v) {
    if (v.kind == Value::Kind::call) return construct(*v.call);
    return pres(v.text);
  }

  QuadraticPresentation construct(const Call& c) {
    auto num = [&](const char* key, long long fallback) {
      return int_arg(c, key).value_or(fallback);
    };
    auto pos = c.positional();
    if (c.name == "free") return make_preset("free", {num("d", 0), num("p", 0)});
    if (c.name == "demushkin") {
      const long long kase = num("case", 0);
      const long long p = num("p", 2);
      if (kase == 1) return make_preset("demushkin1", {num("k", 0), p});
      if (kase == 2 || kase == 3) {
        if (p != 2)
          throw SemanticError("bad_argument", c.pos, "Demushkin cases 2 and 3 live over F_2");
        return make_preset("demushkin" + std::to_string(kase), {num("k", 0)});
      }
      throw SemanticError("bad_argument", c.pos, "case must be 1, 2 or 3");
    }
    if (c.name == "c2") return make_preset("c2", {});
    if (c.name == "poly_t") return make_preset("poly_t", {num("p", 2)});
    if (c.name == "t_mod_t2") return make_preset("t_mod_t2", {});
    if (c.name == "superpythagorean") return make_preset("superpythagorean", {num("d", 0)});
    if (c.name == "rigid_level2") return make_preset("rigid_level2", {num("d", 0)});
    if (c.name == "exterior") return make_preset("exterior", {num("m", 0), num("p", 2)});
    if (c.name == "direct_sum") return direct_sum(operand(pos[0]->value), operand(pos[1]->value));
    if (c.name == "skew_tensor")
      return skew_tensor(operand(pos[0]->value), operand(pos[1]->value));
    if (c.name == "opposite") return opposite(operand(pos[0]->value));
    if (c.name == "twisted_extension") {
      auto base = operand(pos[0]->value);
      Vector t = twist(base, c.find("t"));
      std::vector<std::string> names;
      if (const Arg* a = c.find("names"))
        for (const auto& v : a->value.items) names.push_back(v.text);
      return twisted_extension(base, t, static_cast<std::size_t>(num("m", 1)), names);
    }
    throw SemanticError("unknown_constructor", c.pos, "no constructor named '" + c.name + "'");
  }

  // ---- argument helpers ----

  Vector element(const QuadraticPresentation& P, const Value& v) {
    NcPoly q;
    try {
      q = parse_polynomial(v.text, P.generators, P.field);
    } catch (const ParseError& e) {
      throw ParseError(v.pos.line, v.pos.column + e.column(), e.detail());
    }
    Vector out(P.dim(), 0);
    for (const auto& [m, coeff] : q.terms()) {
      if (m.degree() != 1)
        throw SemanticError("bad_element", v.pos, "\"" + v.text + "\" is not a degree-1 element");
      out[m.word[0]] = coeff;
    }
    return out;
  }

  std::vector<Vector> elements(const QuadraticPresentation& P, const Value& list) {
    std::vector<Vector> out;
    for (const auto& v : list.items) out.push_back(element(P, v));
    return out;
  }

  Subspace span(const QuadraticPresentation& P, const Value& list) {
    auto vs = elements(P, list);
    return Subspace::span(P.dim(), P.field, vs);
  }

  Vector twist(const QuadraticPresentation& P, const Arg* a) {
    if (!a || (a->value.kind == Value::Kind::identifier && a->value.text == "designated"))
      return designated_element(P);
    if (a->value.kind == Value::Kind::identifier) return Vector(P.dim(), 0);
    return element(P, a->value);
  }

  std::vector<Subspace> family(const QuadraticPresentation& P, const Value& v) {
    if (v.kind == Value::Kind::identifier)
      return enumerate_subspaces(P.dim(), P.p(), std::nullopt, budget_.max_subspaces);
    std::vector<Subspace> out;
    for (const auto& member : v.items) out.push_back(span(P, member));
    return out;
  }

  std::size_t colon_degree(const Call& c) const {
    if (auto d = int_arg(c, "degree")) return static_cast<std::size_t>(*d);
    return opt_.degree.value_or(kColonDegree);
  }

  std::size_t truncation(const Call& c, const QuadraticPresentation& P) const {
    if (auto d = int_arg(c, "degree")) return static_cast<std::size_t>(*d);
    return opt_.degree.value_or(default_truncation(P.dim()));
  }

  const GradedAlgebra& realized(const std::string& name, std::size_t N) {
    if (N < 2) throw Error(ErrorCode::invalid_params, "truncation degree must be at least 2");
    auto key = std::make_pair(name, N);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RealizeOptions ro;
    ro.degree = N;
    ro.max_component = budget_.max_component;
    auto& alg = algebras_.at(name);
    alg.realized.insert(N);
    return cache_.emplace(key, realize(alg.pres, ro)).first->second;
  }

  GradedAlgebra realize_unnamed(const QuadraticPresentation& P, std::size_t N) {
    RealizeOptions ro;
    ro.degree = N;
    ro.max_component = budget_.max_component;
    return realize(P, ro);
  }

  SuiteOptions suite() const { return {budget_, threads_}; }

  // ---- checks ----

  using Body = std::function<void(json&)>;

  void check(const Call& c) {
    std::vector<std::string> names;
    for (const Arg* a : c.positional()) names.push_back(a->value.text);
    if (c.name == "all") {
      all(c, names[0]);
      return;
    }
    run_check(c, names, [&](json& e) { dispatch(c, names[0], e); });
  }

  void dispatch(const Call& c, const std::string& S, json& e) {
    if (c.name == "realize") return check_realize(c, S, e, false);
    if (c.name == "hilbert") return check_realize(c, S, e, true);
    if (c.name == "pbw") return check_pbw(c, S, e);
    if (c.name == "universal_koszul") return check_universal(c, S, e);
    if (c.name == "strong_koszul") return check_strong(c, S, e);
    if (c.name == "strong_koszul_search") return check_search(c, S, e);
    if (c.name == "betti") return check_betti(c, S, e, false);
    if (c.name == "linear") return check_betti(c, S, e, true);
    if (c.name == "colon") return check_colon(c, S, e);
    if (c.name == "filtration") return check_filtration(c, S, e);
    if (c.name == "flag") return check_flag(c, S, e);
    if (c.name == "twisted_filtration") return check_twisted(c, S, e);
    if (c.name == "direct_sum_filtration") return check_direct_sum(c, e);
    throw SemanticError("unknown_check", c.pos, "no check named '" + c.name + "'");
  }

  void run_check(const Call& c, const std::vector<std::string>& names, const Body& body) {
    json e;
    e["check"] = c.name;
    if (names.size() == 1)
      e["algebra"] = names[0];
    else
      e["algebra"] = names;
    e["args"] = args_json(c);
    e["status"] = nullptr;
    e["qualifier"] = nullptr;
    e["bound"] = nullptr;
    e["witness"] = nullptr;
    e["note"] = nullptr;
    if (const Arg* a = c.find("note")) e["note"] = a->value.text;
    auto start = std::chrono::steady_clock::now();
    try {
      body(e);
    } catch (const ParseError&) {
      throw;
    } catch (const SemanticError&) {
      throw;
    } catch (const Error& err) {
      const bool budget = err.code() == ErrorCode::budget_exceeded;
      e["status"] = budget ? kBudget : kError;
      e["qualifier"] = std::string(to_string(err.code()));
      e["error"] = {{"code", std::string(to_string(err.code()))}, {"message", err.what()}};
    }
    if (opt_.timings) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
      e["elapsed_ms"] = std::round(ms.count() * 1000.0) / 1000.0;
    }
    record(c, std::move(e));
  }

  void verdict(json& e, Status s, std::size_t bound) {
    e["status"] = std::string(to_string(s));
    e["qualifier"] = qualifier_for(s, bound);
    e["bound"] = bound;
  }

  void check_realize(const Call& c, const std::string& S, json& e, bool series) {
    const auto& A = realized(S, truncation(c, pres(S)));
    e["status"] = kComputed;
    e["qualifier"] = A.finite_dim_certified() ? "certified (finite-dimensional)"
                                              : "truncated at degree " + std::to_string(A.truncation());
    e["bound"] = A.truncation();
    e["truncation"] = A.truncation();
    e["finite_dim_certified"] = A.finite_dim_certified();
    if (series) {
      auto h = A.hilbert_series();
      e["hilbert_series"] = h;
      e["inverse_series"] = poincare_from_hilbert(h, A.truncation());
    } else {
      e["dims"] = A.dims();
    }
  }

  MonomialOrder order_arg(const Call& c, const QuadraticPresentation& P) {
    const Arg* a = c.find("order");
    if (!a) return MonomialOrder::identity(P.dim());
    std::vector<std::uint32_t> seq;
    std::set<std::uint32_t> seen;
    for (const auto& v : a->value.items) {
      auto g = P.generator_index(v.text);
      if (!g) throw SemanticError("bad_argument", v.pos, "'" + v.text + "' is not a generator");
      if (!seen.insert(*g).second)
        throw SemanticError("bad_argument", v.pos, "'" + v.text + "' repeated in order");
      seq.push_back(*g);
    }
    if (seq.size() != P.dim())
      throw SemanticError("bad_argument", a->value.pos, "order must list every generator once");
    return MonomialOrder::from_sequence(std::move(seq));
  }

  PbwCertificate pbw(const Call& c, const std::string& S) {
    const auto& P = pres(S);
    PbwOptions po;
    po.degree = truncation(c, P);
    po.vertex_cap = static_cast<std::size_t>(int_arg(c, "vertex_cap").value_or(budget_.vertex_cap));
    po.threads = threads_;
    auto cert = certify_pbw(P, order_arg(c, P), po);
    algebras_.at(S).realized.insert(*po.degree);
    graphs_[S] = cert.graphs;
    return cert;
  }

  void check_pbw(const Call& c, const std::string& S, json& e) {
    const auto& P = pres(S);
    auto cert = pbw(c, S);
    const auto& names = P.generators;
    json order = json::array();
    for (auto g : cert.order.ascending()) order.push_back(names[g]);
    e["order"] = order;
    json graphs = json::array();
    for (const auto& g : cert.graphs) {
      json terms = json::array();
      for (auto t : g.terminals) terms.push_back(to_string(g.vertices[t], names));
      graphs.push_back({{"source", to_string(g.source, names)},
                        {"vertices", g.vertices.size()},
                        {"edges", g.edges.size()},
                        {"terminals", terms},
                        {"confluent", g.confluent()}});
    }
    e["critical_monomials"] = cert.critical.size();
    e["graphs"] = graphs;
    e["reduced_counts"] = cert.reduced_counts;
    e["realized_dims"] = cert.realized_dims;
    e["consistent"] = cert.consistent;
    const std::size_t N = cert.realized_dims.empty() ? 0 : cert.realized_dims.size() - 1;
    if (cert.pbw) {
      verdict(e, Status::holds_certified, N);
      e["qualifier"] = "certified (every critical monomial is confluent)";
    } else {
      verdict(e, Status::fails, N);
      const auto& g = cert.graphs[*cert.witness];
      e["witness"] = {{"graph", *cert.witness},
                      {"source", to_string(g.source, names)},
                      {"terminals", graphs[*cert.witness]["terminals"]}};
    }
  }

  void check_universal(const Call& c, const std::string& S, json& e) {
    const std::size_t D = colon_degree(c);
    const auto& A = realized(S, D + 1);
    auto r = universal_koszulity(A, side_arg(c), suite());
    const auto& names = A.presentation().generators;
    verdict(e, r.status, r.bound);
    e["side"] = std::string(to_string(r.side));
    e["subspaces"] = r.subspaces;
    e["pairs"] = r.pairs;
    e["colons"] = r.colons;
    e["degenerate"] = r.degenerate;
    if (r.witness) {
      const auto& w = *r.witness;
      e["witness"] = {{"W", subspace_json(w.w, names)},
                      {"x", linear_form(w.x, names)},
                      {"degree", w.degree},
                      {"element", element_string(A, w.degree, w.element)}};
    }
  }

  json strong_witness(const GradedAlgebra& A, const StrongResult& r, Side side) {
    const auto& names = A.presentation().generators;
    const auto& f = *r.witness;
    std::vector<Vector> ys;
    for (auto i : f.y) ys.push_back(r.basis[i]);
    std::vector<Vector> sub;
    for (auto i : f.subset) sub.push_back(r.basis[i]);
    Subspace W = Subspace::span(A.gens(), A.field(), ys);
    auto col = colon(ideal_from_subspace(A, W, side, 2), r.basis[f.x]);
    return {{"Y", vectors_json(ys, names)},
            {"x", linear_form(r.basis[f.x], names)},
            {"degree", f.degree},
            {"subset", vectors_json(sub, names)},
            {"colon_degree_one", subspace_json(col.degree_one(), names)}};
  }

  void check_strong(const Call& c, const std::string& S, json& e) {
    const std::size_t D = colon_degree(c);
    const auto& A = realized(S, D + 1);
    auto X = elements(A.presentation(), c.find("basis")->value);
    const Side side = side_arg(c);
    auto r = strong_koszulity(A, X, side);
    verdict(e, r.status, r.bound);
    e["side"] = std::string(to_string(side));
    e["basis"] = vectors_json(r.basis, A.presentation().generators);
    e["colons"] = r.colons;
    if (r.witness) e["witness"] = strong_witness(A, r, side);
  }

  void check_search(const Call& c, const std::string& S, json& e) {
    const std::size_t D = colon_degree(c);
    const auto& A = realized(S, D + 1);
    const Side side = side_arg(c);
    auto r = strong_koszulity_search(A, side, suite());
    const auto& names = A.presentation().generators;
    verdict(e, r.status, r.bound);
    e["side"] = std::string(to_string(side));
    e["bases"] = r.per_basis.size();
    e["passing"] = r.passing ? json(vectors_json(r.per_basis[*r.passing].basis, names)) : json();
    json per = json::array();
    json failures = json::array();
    for (const auto& b : r.per_basis) {
      json item{{"basis", vectors_json(b.basis, names)},
                {"status", std::string(to_string(b.status))}};
      if (b.witness) {
        item["witness"] = strong_witness(A, b, side);
        failures.push_back(item);
      }
      per.push_back(std::move(item));
    }
    e["per_basis"] = per;
    if (!holds(r.status)) e["witness"] = {{"per_basis_failures", failures}};
  }

  ModuleSpec module_arg(const Call& c, const QuadraticPresentation& P) {
    const Side side = side_arg(c);
    const Arg* m = c.find("module");
    const std::string kind = m ? m->value.text : "K";
    if (kind == "K") return ModuleSpec::trivial_module(side);
    if (kind == "A_plus") return ModuleSpec::augmentation_ideal(side);
    const Arg* g = c.find("gens");
    if (!g) throw SemanticError("missing_argument", c.pos, c.name + " with module=" + kind + " needs 'gens'");
    auto W = span(P, g->value);
    return kind == "ideal" ? ModuleSpec::ideal_module(W, side) : ModuleSpec::quotient_module(W, side);
  }

  std::pair<std::size_t, std::size_t> bigrade(const Call& c) const {
    auto i = static_cast<std::size_t>(int_arg(c, "i").value_or(kBettiBound));
    auto j = static_cast<std::size_t>(
        int_arg(c, "j").value_or(static_cast<long long>(opt_.degree.value_or(kBettiBound))));
    return {i, j};
  }

  void check_betti(const Call& c, const std::string& S, json& e, bool linear) {
    auto [i, j] = bigrade(c);
    const auto& A = realized(S, std::max<std::size_t>(j, 2));
    auto module = module_arg(c, A.presentation());
    const std::string bound = "through (i, j) = (" + std::to_string(i) + ", " + std::to_string(j) + ")";
    if (!linear) {
      e["status"] = kComputed;
      e["qualifier"] = bound;
      e["bound"] = j;
      e["table"] = betti_json(betti_table(A, module, i, j));
      return;
    }
    auto r = linear_resolution_check(A, module, i, j);
    verdict(e, r.status, j);
    e["qualifier"] = r.status == Status::fails ? "definitive" : bound;
    e["base_degree"] = r.base_degree;
    e["table"] = betti_json(r.table);
    if (r.offender)
      e["witness"] = {{"i", r.offender->i}, {"j", r.offender->j}, {"beta", r.offender->beta}};
  }

  void check_colon(const Call& c, const std::string& S, json& e) {
    const std::size_t D = colon_degree(c);
    const auto& A = realized(S, D + 1);
    const auto& P = A.presentation();
    Subspace W(P.dim(), P.field);
    if (const Arg* a = c.find("ideal")) W = span(P, a->value);
    Vector x = element(P, c.find("x")->value);
    const Side side = side_arg(c);
    auto r = colon(ideal_from_subspace(A, W, side), x);
    e["side"] = std::string(to_string(side));
    e["degenerate"] = r.degenerate;
    e["dims"] = r.dims();
    e["degree_one"] = subspace_json(r.degree_one(), P.generators);
    switch (r.verdict.status) {
      case GenerationVerdict::Status::certified_yes:
        verdict(e, Status::holds_certified, r.verdict.bound);
        break;
      case GenerationVerdict::Status::yes_up_to:
        verdict(e, Status::holds_up_to, r.verdict.bound);
        break;
      case GenerationVerdict::Status::no:
        verdict(e, Status::fails, r.verdict.bound);
        e["witness"] = {
            {"degree", r.verdict.witness_degree},
            {"element", element_string(A, r.verdict.witness_degree, r.verdict.witness)}};
        break;
    }
  }

  void filtration_report(json& e, const GradedAlgebra& A, const FiltrationResult& r) {
    const auto& names = A.presentation().generators;
    verdict(e, r.status, r.bound);
    json fam = json::array();
    for (const auto& s : r.family) fam.push_back(subspace_json(s, names));
    e["family_size"] = r.family.size();
    e["family"] = fam;
    e["witnessed"] = r.witnesses.size();
    if (r.status == Status::fails) {
      json w;
      w["reason"] = r.reason;
      w["unwitnessed"] = r.unwitnessed ? subspace_json(r.family[*r.unwitnessed], names) : json();
      e["witness"] = w;
    }
  }

  void check_filtration(const Call& c, const std::string& S, json& e) {
    const std::size_t D = colon_degree(c);
    const auto& A = realized(S, D + 1);
    const Side side = side_arg(c);
    e["side"] = std::string(to_string(side));
    filtration_report(e, A, verify_koszul_filtration(A, family(A.presentation(), c.find("family")->value), side));
  }

  void check_flag(const Call& c, const std::string& S, json& e) {
    auto [i, j] = bigrade(c);
    const auto& A = realized(S, std::max<std::size_t>(j, 2));
    const auto& P = A.presentation();
    std::vector<Vector> X;
    if (const Arg* a = c.find("basis")) {
      X = elements(P, a->value);
    } else {
      for (std::size_t g = 0; g < P.dim(); ++g) {
        Vector v(P.dim(), 0);
        v[g] = 1;
        X.push_back(v);
      }
    }
    const Side side = side_arg(c);
    auto r = koszul_flag_check(A, X, i, j, side);
    verdict(e, r.status, j);
    e["side"] = std::string(to_string(side));
    e["basis"] = vectors_json(X, P.generators);
    json tables = json::array();
    for (const auto& t : r.tables) tables.push_back(betti_json(t));
    e["tables"] = tables;
    if (r.failing) {
      std::vector<Vector> prefix(X.begin(), X.begin() + static_cast<std::ptrdiff_t>(*r.failing + 1));
      json w{{"ideal", vectors_json(prefix, P.generators)}};
      if (r.offender)
        w["offender"] = {{"i", r.offender->i}, {"j", r.offender->j}, {"beta", r.offender->beta}};
      e["witness"] = w;
    }
  }

  void check_twisted(const Call& c, const std::string& S, json& e) {
    const auto& P = pres(S);
    auto fa = family(P, c.find("family")->value);
    Vector t = twist(P, c.find("t"));
    const auto m = static_cast<std::size_t>(*int_arg(c, "m"));
    if (auto bad = heart_violation(fa, t)) {
      Subspace closed = *bad + Subspace::span(P.dim(), P.field, std::vector<Vector>{t});
      e["status"] = std::string(to_string(Status::fails));
      e["qualifier"] = "definitive";
      e["witness"] = {{"heart_property_violated",
                       {{"J", subspace_json(*bad, P.generators)},
                        {"J_plus_At", subspace_json(closed, P.generators)}}}};
      return;
    }
    auto ext = twisted_extension(P, t, m);
    auto fam = build_twisted_extension_filtration(fa, t, m, ext.generators);
    auto A = realize_unnamed(ext, colon_degree(c) + 1);
    e["extension"] = {{"generators", ext.generators}, {"relators", relators_json(ext)}};
    filtration_report(e, A, verify_koszul_filtration(A, std::move(fam)));
  }

  void check_direct_sum(const Call& c, json& e) {
    auto pos = c.positional();
    const auto& Pa = pres(pos[0]->value.text);
    const auto& Pb = pres(pos[1]->value.text);
    auto fa = family(Pa, c.find("family_a")->value);
    auto fb = family(Pb, c.find("family_b")->value);
    auto sum = direct_sum(Pa, Pb);
    auto A = realize_unnamed(sum, colon_degree(c) + 1);
    e["sum"] = {{"generators", sum.generators}, {"relators", relators_json(sum)}};
    filtration_report(e, A, verify_koszul_filtration(A, build_direct_sum_filtration(fa, fb)));
  }

  void all(const Call& c, const std::string& S) {
    auto sub = [&](const char* name, std::vector<Arg> extra = {}) {
      Call k;
      k.name = name;
      k.pos = c.pos;
      k.args.push_back(*c.positional()[0]);
      for (auto& a : extra) k.args.push_back(std::move(a));
      if (const Arg* n = c.find("note")) k.args.push_back(*n);
      return k;
    };
    auto word = [](const char* key, const char* text) {
      Arg a;
      a.key = key;
      a.value.kind = Value::Kind::identifier;
      a.value.text = text;
      return a;
    };
    for (const char* name : {"realize", "hilbert", "pbw"}) {
      Call k = sub(name);
      run_check(k, {S}, [&](json& e) { dispatch(k, S, e); });
    }
    {
      Call k = sub("universal_koszul", {word("side", "left")});
      run_check(k, {S}, [&](json& e) { dispatch(k, S, e); });
    }
    {
      Call k = sub("strong_koszul_search");
      const auto& P = pres(S);
      run_check(k, {S}, [&](json& e) {
        if (P.p() != 2 || P.dim() > budget_.max_basis_dim) {
          e["status"] = kSkipped;
          e["qualifier"] = P.p() != 2 ? "needs p = 2"
                                      : "more than " + std::to_string(budget_.max_basis_dim) +
                                            " generators";
          return;
        }
        dispatch(k, S, e);
      });
    }
    {
      Call k = sub("betti", {word("module", "K")});
      run_check(k, {S}, [&](json& e) { dispatch(k, S, e); });
    }
  }

  // ---- emits ----

  void emit(const Call& c) {
    if (c.name == "json") {
      json_paths_.push_back(c.find("path")->value.text);
      artifacts_.push_back({{"kind", "json"}, {"path", c.find("path")->value.text}});
      return;
    }
    const std::string S = c.positional()[0]->value.text;
    const std::string dir = c.find("dir") ? c.find("dir")->value.text : ".";
    if (!graphs_.count(S)) {
      Call k;
      k.name = "pbw";
      pbw(k, S);
    }
    auto files = write_dot(S, dir);
    artifacts_.push_back({{"kind", "dot"}, {"algebra", S}, {"files", files}});
    log_.push_back("[emit] dot(" + S + ") -> " + std::to_string(files.size()) + " file(s) in " + dir);
  }

  std::vector<std::string> write_dot(const std::string& S, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create " + dir + ": " + ec.message());
    std::vector<std::string> files;
    const auto& g = graphs_.at(S);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string file = dot_file_name(S, i);
      const fs::path path = fs::path(dir) / file;
      std::ofstream out(path, std::ios::binary);
      out << to_dot(g[i], pres(S).generators, S + "_critical_" + std::to_string(i));
      if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
      files.push_back((fs::path(dir) / file).generic_string());
    }
    return files;
  }

  void write_dot_option() {
    if (!opt_.dot_dir) return;
    for (const auto& [S, g] : graphs_) {
      auto files = write_dot(S, *opt_.dot_dir);
      log_.push_back("[dot] " + S + " -> " + std::to_string(files.size()) + " file(s)");
    }
  }

  // ---- bookkeeping ----

  static json relators_json(const QuadraticPresentation& P) {
    json out = json::array();
    for (const auto& r : P.relators) out.push_back(to_string(r, P.generators));
    return out;
  }

  void record(const Call& c, json e) {
    const std::string status = e["status"].is_string() ? e["status"].get<std::string>() : kError;
    if (status == "fails") saw_fail_ = true;
    if (status == kBudget) saw_budget_ = true;
    if (status == kError) saw_error_ = true;
    std::string line = "[" + status + "] " + serialize(c);
    if (e["qualifier"].is_string()) line += "  " + e["qualifier"].get<std::string>();
    log_.push_back(std::move(line));
    checks_.push_back(std::move(e));
  }

  void fatal(const std::string& kind, std::size_t line, std::size_t column, const std::string& msg) {
    error_ = {{"kind", kind}, {"line", line}, {"column", column}, {"message", msg}};
    saw_error_ = true;
    log_.push_back("error: " + msg);
  }

  RunResult finish() {
    RunResult out;
    out.exit_code = saw_error_    ? exit_usage
                    : saw_budget_ ? exit_budget
                    : saw_fail_   ? exit_fails
                                  : exit_ok;
    json& r = out.report;
    r["schema"] = kSchemaId;
    r["schema_version"] = kSchemaVersion;
    r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    json settings;
    settings["script"] = opt_.script_name;
    settings["degree"] = opt_.degree ? json(*opt_.degree) : json();
    settings["budget"] = opt_.budget ? json(*opt_.budget) : json();
    settings["defaults"] = {{"colon_degree", kColonDegree},
                            {"betti_bound", kBettiBound},
                            {"truncation", "max(2d + 2, 8)"}};
    r["settings"] = settings;
    json algs = json::array();
    for (const auto& name : order_) {
      const auto& a = algebras_.at(name);
      const auto& P = a.pres;
      json j;
      j["name"] = name;
      j["p"] = P.p();
      j["generators"] = P.generators;
      j["relators"] = relators_json(P);
      j["provenance"] = P.provenance;
      j["designated"] = P.designated ? json(linear_form(*P.designated, P.generators)) : json();
      j["notes"] = P.notes;
      j["realized_degrees"] = std::vector<std::size_t>(a.realized.begin(), a.realized.end());
      algs.push_back(std::move(j));
    }
    r["algebras"] = algs;
    r["checks"] = checks_;
    r["artifacts"] = artifacts_;
    if (!error_.is_null()) r["error"] = error_;
    std::size_t holds_n = 0, fails_n = 0, errors_n = 0, budget_n = 0;
    for (const auto& e : checks_) {
      const std::string s = e["status"].get<std::string>();
      if (s == "holds_certified" || s == "holds_up_to") ++holds_n;
      if (s == "fails") ++fails_n;
      if (s == kError) ++errors_n;
      if (s == kBudget) ++budget_n;
    }
    r["summary"] = {{"checks", checks_.size()},
                    {"holds", holds_n},
                    {"fails", fails_n},
                    {"budget_exceeded", budget_n},
                    {"errors", errors_n + (error_.is_null() ? 0 : 1)},
                    {"exit_code", out.exit_code}};
    out.log = std::move(log_);
    out.json_paths = json_paths_;
    const std::string text = dump_report(r);
    for (const auto& path : json_paths_) {
      std::ofstream f(path, std::ios::binary);
      f << text;
      if (!f) {
        out.log.push_back("error: cannot write " + path);
        out.exit_code = exit_usage;
      }
    }
    return out;
  }

  RunOptions opt_;
  Budget budget_;
  std::size_t threads_ = 1;
  Pos current_;
  std::vector<std::string> order_;
  std::map<std::string, Algebra> algebras_;
  std::map<std::pair<std::string, std::size_t>, GradedAlgebra> cache_;
  std::map<std::string, std::vector<ConfluenceGraph>> graphs_;
  json checks_ = json::array();
  json artifacts_ = json::array();
  json error_;
  std::vector<std::string> log_;
  std::vector<std::string> json_paths_;
  bool saw_fail_ = false, saw_budget_ = false, saw_error_ = false;
};

}  // namespace

RunResult run(const Script& script, const RunOptions& opts) {
  Runner r(opts);
  try {
    validate(script);
  } catch (const ParseError& e) {
    return r.failed("parse_error", e.line(), e.column(), e.detail());
  } catch (const SemanticError& e) {
    return r.failed(e.kind(), e.pos().line, e.pos().column, e.detail());
  }
  return r.go(script);
}

RunResult run_text(std::string_view text, const RunOptions& opts) {
  Script s;
  try {
    s = parse(text);
  } catch (const ParseError& e) {
    return Runner(opts).failed("parse_error", e.line(), e.column(), e.detail());
  }
  return run(s, opts);
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace koszul::cli
