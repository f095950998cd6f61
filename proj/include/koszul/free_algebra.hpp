#pragma once

// Words, deglex orders, noncommutative polynomials and quadratic
// presentations Q(V,R) over F_p.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/matrix.hpp"

namespace koszul {

using Word = std::vector<std::uint32_t>;

/// A word in the generators. The built-in comparison is deglex by generator
/// index; other orders go through MonomialOrder.
struct Monomial {
  Word word;

  Monomial() = default;
  explicit Monomial(Word w) : word(std::move(w)) {}
  Monomial(std::initializer_list<std::uint32_t> w) : word(w) {}

  std::size_t degree() const noexcept { return word.size(); }
  Monomial operator*(const Monomial& o) const;
  Monomial reversed() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

/// Degree-lexicographic order with the generators ranked by a permutation.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  static MonomialOrder identity(std::size_t n);
  /// `ascending` lists every generator index once, least first.
  static MonomialOrder from_sequence(std::vector<std::uint32_t> ascending);

  std::size_t size() const noexcept { return ascending_.size(); }
  std::uint32_t rank(std::uint32_t g) const { return rank_[g]; }
  const std::vector<std::uint32_t>& ascending() const noexcept { return ascending_; }

  std::strong_ordering compare(const Word& a, const Word& b) const;
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    return compare(a.word, b.word);
  }
  bool less(const Word& a, const Word& b) const { return compare(a, b) < 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<std::uint32_t> ascending_;
  std::vector<std::uint32_t> rank_;
};

class NcPoly {
 public:
  using Terms = std::map<Monomial, Coeff>;

  NcPoly() = default;
  explicit NcPoly(PrimeField f) : field_(f) {}
  static NcPoly monomial(const Monomial& m, PrimeField f, Coeff c = 1);

  const PrimeField& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Coeff coeff(const Monomial& m) const;

  void add_term(const Monomial& m, Coeff c);
  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scaled(Coeff c) const;

  /// Largest monomial under `order`; the polynomial must be nonzero.
  const Monomial& leading(const MonomialOrder& order) const;
  bool homogeneous_of_degree(std::size_t d) const;
  NcPoly reversed() const;

  friend bool operator==(const NcPoly&, const NcPoly&) = default;
  friend std::strong_ordering operator<=>(const NcPoly& a, const NcPoly& b);

 private:
  PrimeField field_{};
  Terms terms_;
};

std::string to_string(const Monomial& m, const std::vector<std::string>& names);
/// Canonical text: terms in descending deglex order joined by " + ",
/// coefficient prefix "c*" unless it is 1; zero prints as "0".
std::string to_string(const NcPoly& q, const std::vector<std::string>& names);

/// Parses the canonical text form, also accepting "-" and integer
/// coefficients. Errors carry 1-based columns (line is always 1).
NcPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names,
                        PrimeField f);
/// Same as parse_polynomial but accepts "lhs = rhs" and returns lhs - rhs.
NcPoly parse_relation(std::string_view text, const std::vector<std::string>& names,
                      PrimeField f);

struct QuadraticPresentation {
  PrimeField field{};
  std::vector<std::string> generators;
  std::vector<NcPoly> relators;
  std::string provenance;
  // A degree-1 element singled out by the constructor that produced this
  // presentation (the image of 1+1 for Witt-flavoured trees).
  std::optional<Vector> designated;
  std::vector<std::string> notes;

  std::size_t dim() const noexcept { return generators.size(); }
  std::uint32_t p() const noexcept { return field.p(); }
  /// Throws invalid_params on duplicate names or non-quadratic relators.
  void validate() const;
  std::optional<std::uint32_t> generator_index(std::string_view name) const;
};

struct NormalizedBasis {
  MonomialOrder order;
  std::vector<NcPoly> rows;
  std::vector<Monomial> leading;
};

/// All degree-2 words over n generators, ascending under `order`.
std::vector<Monomial> quadratic_monomials(std::size_t n, const MonomialOrder& order);

/// Reduced echelon form of the relator coefficients with columns ordered by
/// decreasing monomial, so that each row is monic at its leading monomial.
NormalizedBasis normalize_relators(const QuadraticPresentation& pres, const MonomialOrder& order);

}  // namespace koszul
