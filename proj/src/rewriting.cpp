#include "koszul/rewriting.hpp"

#include <algorithm>
#include <deque>

#include "koszul/error.hpp"
#include "koszul/graded_algebra.hpp"
#include "koszul/parallel.hpp"

namespace koszul {

RewritingSystem RewritingSystem::make(const QuadraticPresentation& pres,
                                      const MonomialOrder& order) {
  RewritingSystem sys;
  sys.normalized = normalize_relators(pres, order);
  sys.field = pres.field;
  sys.generators = pres.dim();
  for (std::size_t i = 0; i < sys.normalized.rows.size(); ++i) {
    const Monomial& lead = sys.normalized.leading[i];
    sys.rules.emplace(lead, NcPoly::monomial(lead, pres.field) - sys.normalized.rows[i]);
  }
  return sys;
}

bool RewritingSystem::is_leading(std::uint32_t a, std::uint32_t b) const {
  return rules.count(Monomial{a, b}) > 0;
}

bool RewritingSystem::is_reduced(const Word& w) const {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (is_leading(w[i], w[i + 1])) return false;
  return true;
}

namespace {

// Terms of q sorted greatest first under the system's order.
std::vector<std::pair<Monomial, Coeff>> terms_desc(const RewritingSystem& sys, const NcPoly& q) {
  std::vector<std::pair<Monomial, Coeff>> out(q.terms().begin(), q.terms().end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return sys.order().compare(a.first, b.first) > 0;
  });
  return out;
}

NcPoly apply_rule(const RewritingSystem& sys, const NcPoly& q, const Monomial& term, Coeff c,
                  std::size_t pos) {
  const Word& w = term.word;
  Monomial lead{w[pos], w[pos + 1]};
  Monomial prefix(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos)));
  Monomial suffix(Word(w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end()));
  NcPoly out = q;
  out.add_term(term, sys.field.neg(c));
  for (const auto& [m, v] : sys.rules.at(lead).terms())
    out.add_term(prefix * m * suffix, sys.field.mul(c, v));
  return out;
}

}  // namespace

NcPoly reduce(const RewritingSystem& sys, const NcPoly& q) {
  NcPoly cur = q;
  while (true) {
    bool changed = false;
    for (const auto& [term, c] : terms_desc(sys, cur)) {
      const Word& w = term.word;
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!sys.is_leading(w[i], w[i + 1])) continue;
        if (!best || sys.order().compare(Word{w[i], w[i + 1]},
                                         Word{w[*best], w[*best + 1]}) > 0)
          best = i;
      }
      if (!best) continue;
      cur = apply_rule(sys, cur, term, c, *best);
      changed = true;
      break;
    }
    if (!changed) return cur;
  }
}

std::vector<Monomial> critical_monomials(const RewritingSystem& sys) {
  std::vector<Monomial> out;
  const auto d = static_cast<std::uint32_t>(sys.generators);
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b) {
      if (!sys.is_leading(a, b)) continue;
      for (std::uint32_t c = 0; c < d; ++c)
        if (sys.is_leading(b, c)) out.push_back(Monomial{a, b, c});
    }
  std::sort(out.begin(), out.end(),
            [&](const Monomial& x, const Monomial& y) { return sys.order().compare(x, y) < 0; });
  return out;
}

ConfluenceGraph confluence_graph(const RewritingSystem& sys, const Monomial& source,
                                 std::size_t vertex_cap) {
  ConfluenceGraph g;
  g.source = source;
  std::map<NcPoly, std::size_t> index;
  auto intern = [&](NcPoly q) {
    auto [it, fresh] = index.try_emplace(q, g.vertices.size());
    if (fresh) {
      if (g.vertices.size() >= vertex_cap)
        throw Error(ErrorCode::budget_exceeded,
                    "confluence graph exceeds " + std::to_string(vertex_cap) + " vertices");
      g.vertices.push_back(std::move(q));
    }
    return it->second;
  };
  intern(NcPoly::monomial(source, sys.field));
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    bool any = false;
    const NcPoly here = g.vertices[v];
    for (const auto& [term, c] : terms_desc(sys, here)) {
      const Word& w = term.word;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!sys.is_leading(w[i], w[i + 1])) continue;
        any = true;
        std::size_t to = intern(apply_rule(sys, here, term, c, i));
        g.edges.push_back({v, to, Monomial{w[i], w[i + 1]}, term, i});
      }
    }
    if (!any) g.terminals.push_back(v);
  }
  return g;
}

std::vector<std::uint64_t> reduced_monomial_counts(const RewritingSystem& sys, std::size_t n) {
  const std::size_t d = sys.generators;
  std::vector<std::uint64_t> out(n + 1, 0);
  out[0] = 1;
  if (n == 0 || d == 0) return out;
  std::vector<std::uint64_t> ending(d, 1);  // reduced words of length k ending in g
  out[1] = d;
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::uint64_t> next(d, 0);
    for (std::uint32_t g = 0; g < d; ++g)
      for (std::uint32_t h = 0; h < d; ++h)
        if (!sys.is_leading(g, h)) next[h] += ending[g];
    ending = std::move(next);
    for (auto e : ending) out[k] += e;
  }
  return out;
}

PbwCertificate certify_pbw(const QuadraticPresentation& pres, const MonomialOrder& order,
                           const PbwOptions& opts) {
  PbwCertificate cert;
  cert.order = order;
  auto sys = RewritingSystem::make(pres, order);
  cert.critical = critical_monomials(sys);
  cert.graphs.resize(cert.critical.size());
  parallel_for(
      cert.critical.size(),
      [&](std::size_t i) { cert.graphs[i] = confluence_graph(sys, cert.critical[i], opts.vertex_cap); },
      opts.threads);
  cert.pbw = true;
  for (std::size_t i = 0; i < cert.graphs.size(); ++i) {
    if (!cert.graphs[i].confluent()) {
      cert.pbw = false;
      cert.witness = i;
      break;
    }
  }
  RealizeOptions ro;
  ro.degree = opts.degree.value_or(default_truncation(pres.dim()));
  ro.order = order;
  auto A = realize(pres, ro);
  cert.realized_dims = A.dims();
  cert.finite_dim_certified = A.finite_dim_certified();
  cert.reduced_counts = reduced_monomial_counts(sys, A.truncation());
  cert.consistent = true;
  for (std::size_t n = 0; n <= A.truncation(); ++n) {
    if (cert.reduced_counts[n] < A.dim(n)) cert.consistent = false;
    if (cert.pbw && cert.reduced_counts[n] != A.dim(n)) cert.consistent = false;
  }
  return cert;
}

namespace {
std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string to_dot(const ConfluenceGraph& g, const std::vector<std::string>& names,
                   const std::string& graph_name) {
  std::string out = "digraph \"" + escape(graph_name) + "\" {\n";
  out += "  rankdir=TB;\n  node [shape=ellipse];\n";
  std::vector<bool> terminal(g.vertices.size(), false);
  for (auto t : g.terminals) terminal[t] = true;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out += "  v" + std::to_string(v) + " [label=\"" + escape(to_string(g.vertices[v], names)) + "\"";
    if (terminal[v]) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (const auto& e : g.edges) {
    out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" +
           escape(to_string(e.rule, names)) + "@" + std::to_string(e.position) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string dot_file_name(const std::string& algebra, std::size_t index) {
  return algebra + "-critical-" + std::to_string(index) + ".dot";
}

}  // namespace koszul
