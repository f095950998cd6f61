#include "koszul/free_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "koszul/error.hpp"

namespace koszul {

Monomial Monomial::operator*(const Monomial& o) const {
  Word w = word;
  w.insert(w.end(), o.word.begin(), o.word.end());
  return Monomial(std::move(w));
}

Monomial Monomial::reversed() const { return Monomial(Word(word.rbegin(), word.rend())); }

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.word.size() <=> b.word.size(); c != 0) return c;
  return a.word <=> b.word;
}

MonomialOrder MonomialOrder::identity(std::size_t n) {
  std::vector<std::uint32_t> seq(n);
  std::iota(seq.begin(), seq.end(), 0u);
  return from_sequence(std::move(seq));
}

MonomialOrder MonomialOrder::from_sequence(std::vector<std::uint32_t> ascending) {
  MonomialOrder o;
  o.rank_.assign(ascending.size(), static_cast<std::uint32_t>(ascending.size()));
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    std::uint32_t g = ascending[i];
    if (g >= ascending.size() || o.rank_[g] != ascending.size())
      throw Error(ErrorCode::invalid_params, "monomial order is not a permutation");
    o.rank_[g] = static_cast<std::uint32_t>(i);
  }
  o.ascending_ = std::move(ascending);
  return o;
}

std::strong_ordering MonomialOrder::compare(const Word& a, const Word& b) const {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return rank_[a[i]] <=> rank_[b[i]];
  }
  return std::strong_ordering::equal;
}

NcPoly NcPoly::monomial(const Monomial& m, PrimeField f, Coeff c) {
  NcPoly q(f);
  q.add_term(m, c);
  return q;
}

Coeff NcPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void NcPoly::add_term(const Monomial& m, Coeff c) {
  c %= field_.p();
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (fresh) return;
  it->second = field_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  if (!(o.field_ == field_)) throw Error(ErrorCode::invalid_params, "field mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  if (!(o.field_ == field_)) throw Error(ErrorCode::invalid_params, "field mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  NcPoly r = *this;
  r += o;
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
  NcPoly r = *this;
  r -= o;
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  NcPoly r(field_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(a * b, field_.mul(ca, cb));
  return r;
}

NcPoly NcPoly::scaled(Coeff c) const {
  NcPoly r(field_);
  for (const auto& [m, v] : terms_) r.add_term(m, field_.mul(v, c));
  return r;
}

const Monomial& NcPoly::leading(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error(ErrorCode::invalid_params, "leading monomial of zero");
  const Monomial* best = &terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    if (order.compare(*best, m) < 0) best = &m;
  return *best;
}

bool NcPoly::homogeneous_of_degree(std::size_t d) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

NcPoly NcPoly::reversed() const {
  NcPoly r(field_);
  for (const auto& [m, c] : terms_) r.add_term(m.reversed(), c);
  return r;
}

std::strong_ordering operator<=>(const NcPoly& a, const NcPoly& b) {
  // Compare from the top term down, the way the polynomials print.
  auto x = a.terms_.rbegin();
  auto y = b.terms_.rbegin();
  for (; x != a.terms_.rend() && y != b.terms_.rend(); ++x, ++y) {
    if (auto c = x->first <=> y->first; c != 0) return c;
    if (auto c = x->second <=> y->second; c != 0) return c;
  }
  if (x == a.terms_.rend() && y == b.terms_.rend()) return std::strong_ordering::equal;
  return x == a.terms_.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const Monomial& m, const std::vector<std::string>& names) {
  if (m.word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.word.size(); ++i) {
    if (i) out += '*';
    out += m.word[i] < names.size() ? names[m.word[i]] : "g" + std::to_string(m.word[i]);
  }
  return out;
}

std::string to_string(const NcPoly& q, const std::vector<std::string>& names) {
  if (q.is_zero()) return "0";
  std::string out;
  for (auto it = q.terms().rbegin(); it != q.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    const auto& [m, c] = *it;
    if (c != 1) {
      out += std::to_string(c);
      if (!m.word.empty()) out += '*';
      if (m.word.empty()) continue;
    }
    out += to_string(m, names);
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& names, PrimeField f)
      : text_(text), names_(names), f_(f) {}

  NcPoly parse_all(bool allow_equation) {
    NcPoly lhs = expression();
    skip_space();
    if (allow_equation && peek() == '=') {
      ++pos_;
      NcPoly rhs = expression();
      skip_space();
      if (pos_ != text_.size()) fail("expected end of relation");
      return lhs - rhs;
    }
    if (pos_ != text_.size())
      fail(allow_equation ? "expected '+', '-', '*', '=' or end" : "expected '+', '-', '*' or end");
    return lhs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  NcPoly expression() {
    NcPoly out(f_);
    skip_space();
    Coeff sign = 1;
    if (peek() == '-' || peek() == '+') {
      if (peek() == '-') sign = f_.neg(1);
      ++pos_;
    }
    while (true) {
      auto [m, c] = term();
      out.add_term(m, f_.mul(sign, c));
      skip_space();
      if (peek() == '+') {
        sign = 1;
      } else if (peek() == '-') {
        sign = f_.neg(1);
      } else {
        return out;
      }
      ++pos_;
    }
  }

  std::pair<Monomial, Coeff> term() {
    Monomial m;
    Coeff c = 1;
    while (true) {
      skip_space();
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          v = (v * 10 + (text_[pos_] - '0')) % f_.p();
          ++pos_;
        }
        c = f_.mul(c, f_.from_int(v));
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '\''))
          ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) {
          pos_ = start;
          fail("unknown generator '" + std::string(name) + "'");
        }
        m.word.push_back(static_cast<std::uint32_t>(it - names_.begin()));
      } else {
        fail("expected generator name or integer");
      }
      skip_space();
      if (peek() != '*') return {m, c};
      ++pos_;
    }
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  PrimeField f_;
  std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names,
                        PrimeField f) {
  return PolyParser(text, names, f).parse_all(false);
}

NcPoly parse_relation(std::string_view text, const std::vector<std::string>& names,
                      PrimeField f) {
  return PolyParser(text, names, f).parse_all(true);
}

void QuadraticPresentation::validate() const {
  std::set<std::string> seen;
  for (const auto& n : generators) {
    if (n.empty()) throw Error(ErrorCode::invalid_params, "empty generator name");
    if (!seen.insert(n).second)
      throw Error(ErrorCode::invalid_params, "duplicate generator name '" + n + "'");
  }
  for (const auto& r : relators) {
    if (!(r.field() == field)) throw Error(ErrorCode::invalid_params, "relator over wrong field");
    if (!r.homogeneous_of_degree(2))
      throw Error(ErrorCode::invalid_params,
                  "relator '" + to_string(r, generators) + "' is not quadratic");
    for (const auto& [m, c] : r.terms())
      for (auto g : m.word)
        if (g >= generators.size())
          throw Error(ErrorCode::invalid_params, "relator uses unknown generator");
  }
  if (designated && designated->size() != generators.size())
    throw Error(ErrorCode::invalid_params, "designated element has wrong length");
}

std::optional<std::uint32_t> QuadraticPresentation::generator_index(std::string_view name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - generators.begin());
}

std::vector<Monomial> quadratic_monomials(std::size_t n, const MonomialOrder& order) {
  std::vector<Monomial> out;
  out.reserve(n * n);
  for (auto a : order.ascending())
    for (auto b : order.ascending()) out.push_back(Monomial{a, b});
  return out;
}

NormalizedBasis normalize_relators(const QuadraticPresentation& pres, const MonomialOrder& order) {
  if (order.size() != pres.dim())
    throw Error(ErrorCode::invalid_params, "order size does not match generator count");
  const std::size_t n = pres.dim();
  std::vector<Monomial> cols = quadratic_monomials(n, order);
  std::reverse(cols.begin(), cols.end());  // greatest first
  std::map<Monomial, std::size_t> col_of;
  for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;

  Matrix m(pres.relators.size(), cols.size(), pres.field);
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    if (!pres.relators[r].homogeneous_of_degree(2))
      throw Error(ErrorCode::invalid_params, "non-quadratic relator");
    for (const auto& [mono, c] : pres.relators[r].terms()) m.set(r, col_of.at(mono), c);
  }
  auto red = rref(m);
  NormalizedBasis out;
  out.order = order;
  for (std::size_t r = 0; r < red.rank; ++r) {
    NcPoly q(pres.field);
    for (std::size_t c = 0; c < cols.size(); ++c) q.add_term(cols[c], red.reduced.at(r, c));
    out.leading.push_back(cols[red.pivots[r]]);
    out.rows.push_back(std::move(q));
  }
  return out;
}

}  // namespace koszul
