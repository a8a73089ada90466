#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "pibase/errors.hpp"
#include "pibase/generate.hpp"
#include "pibase/ordinal.hpp"

using namespace pibase;

namespace {
Ordinal P(const char* s) { return parse(s); }
}

TEST_CASE("parse and print") {
  CHECK(print(P("w^2+w*3+5")) == "w^2 + w*3 + 5");
  CHECK(P("0").is_zero());
  CHECK(print(P("0")) == "0");
  const auto t = P("w1*2+w");
  REQUIRE(t.terms().size() == 2);
  CHECK(t.terms()[0].atom == 1);
  CHECK(t.terms()[0].coeff == 2);
  CHECK(t.terms()[1].atom == 0);
  CHECK(t.terms()[1].exponent == Ordinal::natural(1));
  CHECK(print(P("w1*2 + w^2 + 3")) == "w1*2 + w^2 + 3");
  CHECK(P("w^w1") == P("w1"));
  CHECK(P("(w+1)*2") == P("w*2+1"));
  CHECK(P("2^w") == P("w"));
  CHECK(P("w^2^2") == P("w^4"));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(P("w+"), ParseError);
  CHECK_THROWS_AS(P("w0"), ParseError);
  CHECK_THROWS_AS(P("(w"), ParseError);
  CHECK_THROWS_AS(P("x"), ParseError);
  CHECK_THROWS_AS(parse("w6"), LevelOverflow);
  CHECK_NOTHROW(parse("w6", {6}));
  try {
    P("w+*3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("print/parse roundtrip on enumerated terms") {
  const auto terms = enumerate_terms(15, 3);
  REQUIRE(terms.size() >= 10000);
  for (const auto& t : terms) {
    REQUIRE(parse(print(t)) == t);
    REQUIRE(print(parse(print(t))) == print(t));
  }
}

TEST_CASE("compare") {
  CHECK(compare(P("w"), P("w+1")) == Cmp::LT);
  CHECK(compare(P("w1"), P("w^w*7+3")) == Cmp::GT);
  CHECK(compare(P("w1*w"), P("w1^2")) == Cmp::LT);
  CHECK(compare(P("w1*w"), P("w^(w1+1)")) == Cmp::EQ);
  CHECK(compare(P("w2"), P("w2")) == Cmp::EQ);
}

TEST_CASE("compare agrees with the lexicographic oracle") {
  const auto terms = enumerate_terms(6, 2);
  for (std::size_t i = 0; i < terms.size(); i += 3) {
    for (std::size_t j = 0; j < terms.size(); j += 7) {
      const int want = oracle::cmp_ordinal(terms[i], terms[j]);
      const Cmp got = compare(terms[i], terms[j]);
      REQUIRE(got == (want < 0 ? Cmp::LT : want > 0 ? Cmp::GT : Cmp::EQ));
    }
  }
}

TEST_CASE("add, mul, succ") {
  CHECK(add(P("1"), P("w")) == P("w"));
  CHECK(mul(P("w"), P("w")) == P("w^2"));
  CHECK(mul(P("w1"), P("w*2+3")) == P("w1*w*2 + w1*3"));
  CHECK(print(mul(P("w1"), P("w*2+3"))) == "w^(w1 + 1)*2 + w1*3");
  CHECK(add(P("w+5"), P("0")) == P("w+5"));
  CHECK(mul(P("w1"), P("0")).is_zero());
  CHECK(mul(P("0"), P("w1")).is_zero());
  CHECK(mul(P("w+1"), P("2")) == P("w*2+1"));
  CHECK(mul(P("2"), P("w")) == P("w"));
  CHECK(mul(P("w^w"), P("w1")) == P("w1"));
  CHECK(succ(P("w1")) == P("w1+1"));
}

TEST_CASE("sub_left") {
  CHECK(sub_left(P("w"), P("w*3+5")) == P("w*2+5"));
  CHECK(sub_left(P("w1+w^2"), P("w1+w^2")).is_zero());
  CHECK(sub_left(P("w1"), P("w1+w")) == P("w"));
  CHECK(sub_left(P("5"), P("w")) == P("w"));
  CHECK_THROWS_AS(sub_left(P("w+1"), P("w")), DomainError);

  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    auto g = random_term(rng);
    auto d = random_term(rng);
    if (compare(g, d) == Cmp::GT) std::swap(g, d);
    REQUIRE(add(g, sub_left(g, d)) == d);
  }
}

TEST_CASE("cardinality and cofinality") {
  CHECK(cardinality(P("w^w")) == CardinalLevel::aleph(0));
  CHECK(cardinality(P("w2*w+w1")) == CardinalLevel::aleph(2));
  CHECK(cardinality(P("7")) == CardinalLevel::finite(7));
  CHECK(cardinality(P("w^(w1+1)")) == CardinalLevel::aleph(1));
  CHECK(cardinality_ordinal(P("w2*3+w")) == P("w2"));
  CHECK(cofinality(P("w*5")) == P("w"));
  CHECK(cofinality(P("w1")) == P("w1"));
  CHECK(cofinality(P("w1*w")) == P("w"));
  CHECK(cofinality(P("0")).is_zero());
  CHECK(cofinality(P("w2+3")) == P("1"));
  CHECK(cofinality(P("w^w1")) == P("w1"));
  CHECK(cofinality(P("w^(w^w)")) == P("w"));
  CHECK(cofinality(P("w2*w1")) == P("w1"));
}

TEST_CASE("div_by_cardinal") {
  const auto w = CardinalLevel::aleph(0);
  auto d = div_by_cardinal(P("w*3+5"), w);
  CHECK(d.quotient == P("3"));
  CHECK(d.remainder == P("5"));
  d = div_by_cardinal(P("w1+w^2"), w);
  CHECK(d.quotient == P("w1+w"));
  CHECK(d.remainder.is_zero());
  CHECK(mul(P("w"), P("w1+w")) == P("w1+w^2"));
  d = div_by_cardinal(P("4"), w);
  CHECK(d.quotient.is_zero());
  CHECK(d.remainder == P("4"));
  CHECK_THROWS_AS(div_by_cardinal(P("4"), CardinalLevel::finite(3)), DomainError);

  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const auto a = random_term(rng);
    const int level = static_cast<int>(rng() % 3);
    const auto ok = Ordinal::cardinal(level);
    const auto r = div_by_cardinal(a, CardinalLevel::aleph(level));
    REQUIRE(add(mul(ok, r.quotient), r.remainder) == a);
    REQUIRE(compare(r.remainder, ok) == Cmp::LT);
    REQUIRE(compare(mul(ok, succ(r.quotient)), a) == Cmp::GT);
  }
}

TEST_CASE("fundamental sequences") {
  CHECK(fundamental(P("w^2"), P("3")) == P("w*3"));
  CHECK(fundamental(P("w1+w"), P("4")) == P("w1+4"));
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto a = random_term(rng);
    if (!a.is_limit() || cofinality(a) != Ordinal::omega()) continue;
    Ordinal prev;
    for (int i = 0; i < 5; ++i) {
      const auto f = fundamental(a, Ordinal::natural(i));
      REQUIRE(compare(f, a) == Cmp::LT);
      if (i > 0) REQUIRE(compare(prev, f) == Cmp::LT);
      prev = f;
    }
  }
}

TEST_CASE("algebraic laws on random terms") {
  Rng rng(2024);
  for (int k = 0; k < 2000; ++k) {
    const auto a = random_term(rng);
    const auto b = random_term(rng);
    const auto c = random_term(rng);
    REQUIRE(add(add(a, b), c) == add(a, add(b, c)));
    REQUIRE(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
    const Cmp ab = compare(a, b);
    REQUIRE((ab == Cmp::EQ) == (a == b));
    REQUIRE(compare(b, a) == (ab == Cmp::LT ? Cmp::GT : ab == Cmp::GT ? Cmp::LT : Cmp::EQ));
    if (ab == Cmp::LT) REQUIRE(compare(add(c, a), add(c, b)) == Cmp::LT);
  }
}

TEST_CASE("maxLevel from the environment") {
  ::setenv("PIBASE_MAXLEVEL", "3", 1);
  CHECK(max_level_from_env() == 3);
  ::setenv("PIBASE_MAXLEVEL", "zero", 1);
  CHECK_THROWS_AS(max_level_from_env(), DomainError);
  ::unsetenv("PIBASE_MAXLEVEL");
  CHECK(max_level_from_env() == kDefaultMaxLevel);
}
