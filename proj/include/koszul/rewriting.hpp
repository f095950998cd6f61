#pragma once

// Rewriting with a normalized quadratic relator basis: normal forms,
// critical monomials, confluence graphs and the PBW check.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszul/free_algebra.hpp"

namespace koszul {

struct RewritingSystem {
  NormalizedBasis normalized;
  // leading monomial -> what it rewrites to (only smaller monomials)
  std::map<Monomial, NcPoly> rules;
  PrimeField field;
  std::size_t generators = 0;

  static RewritingSystem make(const QuadraticPresentation& pres, const MonomialOrder& order);
  const MonomialOrder& order() const noexcept { return normalized.order; }
  bool is_leading(std::uint32_t a, std::uint32_t b) const;
  /// True when no degree-2 subword is a leading monomial.
  bool is_reduced(const Word& w) const;
};

/// Repeatedly rewrites the leftmost occurrence of the largest applicable
/// leading monomial inside the largest reducible term.
NcPoly reduce(const RewritingSystem& sys, const NcPoly& q);

/// Degree-3 words whose two degree-2 subwords are both leading; ascending
/// under the system's order.
std::vector<Monomial> critical_monomials(const RewritingSystem& sys);

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Monomial rule;          // leading monomial that was rewritten
  Monomial term;          // the term it was rewritten inside
  std::size_t position = 0;
};

struct ConfluenceGraph {
  Monomial source;
  std::vector<NcPoly> vertices;  // vertices[0] is the source
  std::vector<GraphEdge> edges;
  std::vector<std::size_t> terminals;

  bool confluent() const noexcept { return terminals.size() == 1; }
};

/// Exhaustive closure of the source under single rule applications at every
/// term and position. Throws budget_exceeded past `vertex_cap` vertices.
ConfluenceGraph confluence_graph(const RewritingSystem& sys, const Monomial& source,
                                 std::size_t vertex_cap = 10000);

/// Number of reduced words of each length 0..n.
std::vector<std::uint64_t> reduced_monomial_counts(const RewritingSystem& sys, std::size_t n);

struct PbwOptions {
  std::optional<std::size_t> degree;
  std::size_t vertex_cap = 10000;
  std::size_t threads = 0;
};

struct PbwCertificate {
  MonomialOrder order;
  bool pbw = false;
  std::optional<std::size_t> witness;  // index of a non-confluent graph
  std::vector<Monomial> critical;
  std::vector<ConfluenceGraph> graphs;
  std::vector<std::uint64_t> reduced_counts;
  std::vector<std::size_t> realized_dims;
  bool finite_dim_certified = false;
  /// reduced counts bound the dims from above, with equality when pbw
  bool consistent = false;
};

PbwCertificate certify_pbw(const QuadraticPresentation& pres, const MonomialOrder& order,
                           const PbwOptions& opts = {});

/// Graphviz text for one graph; terminals are drawn double-circled.
std::string to_dot(const ConfluenceGraph& g, const std::vector<std::string>& names,
                   const std::string& graph_name);
std::string dot_file_name(const std::string& algebra, std::size_t index);

}  // namespace koszul
