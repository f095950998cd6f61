#include <random>
#include <set>

#include "doctest.h"
#include "koszul/constructors.hpp"
#include "koszul/error.hpp"
#include "koszul/free_algebra.hpp"

using namespace koszul;

TEST_CASE("deglex comparison") {
  auto o = MonomialOrder::identity(3);
  CHECK(o.compare(Word{}, Word{0}) < 0);
  CHECK(o.compare(Word{}, Word{}) == 0);
  CHECK(o.compare(Word{2}, Word{0, 0}) < 0);
  // t < a2 < a3 with t = 0
  CHECK(o.compare(Word{0}, Word{1}) < 0);

  auto rev = MonomialOrder::from_sequence({2, 1, 0});
  CHECK(rev.compare(Word{0}, Word{1}) > 0);
  CHECK(rev.compare(Word{2, 0}, Word{1, 1}) < 0);
  CHECK_THROWS_AS(MonomialOrder::from_sequence({0, 0}), Error);
}

TEST_CASE("order is compatible with multiplication") {
  std::mt19937 rng(5);
  auto o = MonomialOrder::from_sequence({1, 3, 0, 2});
  std::uniform_int_distribution<std::uint32_t> letter(0, 3);
  std::uniform_int_distribution<std::size_t> len(0, 4);
  auto word = [&] {
    Word w(len(rng));
    for (auto& g : w) g = letter(rng);
    return w;
  };
  for (int i = 0; i < 500; ++i) {
    Word a = word(), b = word(), c = word();
    if (!o.less(a, b)) continue;
    Word ac = a, bc = b, ca = c, cb = c;
    ac.insert(ac.end(), c.begin(), c.end());
    bc.insert(bc.end(), c.begin(), c.end());
    ca.insert(ca.end(), a.begin(), a.end());
    cb.insert(cb.end(), b.begin(), b.end());
    CHECK(o.less(ac, bc));
    CHECK(o.less(ca, cb));
  }
}

TEST_CASE("normalization") {
  QuadraticPresentation pres;
  pres.field = PrimeField(2);
  pres.generators = {"x", "y"};
  pres.relators = {parse_polynomial("x*y + y*x", pres.generators, pres.field),
                   parse_polynomial("x*y", pres.generators, pres.field)};
  auto nb = normalize_relators(pres, MonomialOrder::identity(2));
  REQUIRE(nb.rows.size() == 2);
  CHECK(to_string(nb.rows[0], pres.generators) == "y*x");
  CHECK(to_string(nb.rows[1], pres.generators) == "x*y");

  pres.relators.clear();
  CHECK(normalize_relators(pres, MonomialOrder::identity(2)).rows.empty());
}

TEST_CASE("superpythagorean relators are already normalized") {
  auto pres = superpythagorean(3);
  auto nb = normalize_relators(pres, MonomialOrder::identity(3));
  REQUIRE(nb.rows.size() == pres.relators.size());
  std::set<NcPoly> given(pres.relators.begin(), pres.relators.end());
  std::set<NcPoly> normal(nb.rows.begin(), nb.rows.end());
  CHECK(given == normal);
  std::set<Monomial> leading(nb.leading.begin(), nb.leading.end());
  // a_j a_i (i<j), a_i t, a_i a_i
  std::set<Monomial> expect{{2, 1}, {1, 0}, {2, 0}, {1, 1}, {2, 2}};
  CHECK(leading == expect);
}

TEST_CASE("normalized basis invariants on random presentations") {
  std::mt19937 rng(9);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      QuadraticPresentation pres;
      pres.field = f;
      pres.generators = {"a", "b", "c"};
      std::uniform_int_distribution<int> coef(-3, static_cast<int>(p) - 1);
      for (int r = 0; r < 1 + trial % 6; ++r) {
        NcPoly q(f);
        for (std::uint32_t i = 0; i < 3; ++i)
          for (std::uint32_t j = 0; j < 3; ++j) q.add_term(Monomial{i, j}, static_cast<Coeff>(std::max(0, coef(rng))));
        pres.relators.push_back(q);
      }
      auto order = MonomialOrder::from_sequence({2, 0, 1});
      auto nb = normalize_relators(pres, order);
      // same span: stacking does not raise the rank
      QuadraticPresentation both = pres;
      both.relators.insert(both.relators.end(), nb.rows.begin(), nb.rows.end());
      CHECK(normalize_relators(both, order).rows.size() == nb.rows.size());
      for (std::size_t i = 0; i < nb.rows.size(); ++i) {
        CHECK(nb.rows[i].leading(order) == nb.leading[i]);
        CHECK(nb.rows[i].coeff(nb.leading[i]) == 1);
        for (std::size_t j = 0; j < nb.rows.size(); ++j)
          if (j != i) CHECK(nb.rows[j].coeff(nb.leading[i]) == 0);
      }
    }
  }
}

TEST_CASE("polynomial text round trip") {
  std::vector<std::string> names{"t", "a2", "a3"};
  PrimeField f(3);
  auto q = parse_polynomial("a2*a2 + t*a2", names, f);
  CHECK(to_string(q, names) == "a2*a2 + t*a2");
  auto r = parse_relation("a3*a2 = a2*a3", names, f);
  CHECK(to_string(r, names) == "a3*a2 + 2*a2*a3");
  CHECK(parse_polynomial(to_string(r, names), names, f) == r);
  CHECK(to_string(parse_relation("t*t = 0", names, f), names) == "t*t");
  CHECK(to_string(NcPoly(f), names) == "0");
  CHECK(to_string(parse_polynomial("- t*a2 + 2*3*a3*t", names, f), names) == "2*t*a2");
}

TEST_CASE("polynomial parse errors carry columns") {
  std::vector<std::string> names{"x", "y"};
  PrimeField f(2);
  try {
    parse_polynomial("x*y + z*x", names, f);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_polynomial("x*", names, f), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x = y", names, f), ParseError);
}

TEST_CASE("presentation validation") {
  auto pres = free_preset(2, 2);
  CHECK_NOTHROW(pres.validate());
  pres.generators[1] = pres.generators[0];
  CHECK_THROWS_AS(pres.validate(), Error);
  auto bad = free_preset(2, 2);
  bad.relators.push_back(parse_polynomial("a1*a2*a1", bad.generators, bad.field));
  CHECK_THROWS_AS(bad.validate(), Error);
}
