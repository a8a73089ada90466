#include <doctest.h>

#include <set>

#include "pibase/errors.hpp"
#include "pibase/generate.hpp"
#include "pibase/pairing.hpp"
#include "pibase/sigma.hpp"

using namespace pibase;

namespace {
Ordinal P(const char* s) { return parse(s); }
const CardinalLevel W = CardinalLevel::aleph(0);

bool below_cardinal(const Ordinal& a, int k) { return compare(a, Ordinal::cardinal(k)) == Cmp::LT; }
}  // namespace

TEST_CASE("natural pairing is a bijection") {
  std::set<Natural> seen;
  for (int a = 0; a < 200; ++a) {
    for (int b = 0; b < 200; ++b) {
      const Natural z = nat_pair(a, b);
      REQUIRE(z >= std::max(a, b));
      REQUIRE(seen.insert(z).second);
      const auto [x, y] = nat_unpair(z);
      REQUIRE(x == a);
      REQUIRE(y == b);
    }
  }
  for (int z = 0; z < 20000; ++z) {
    const auto [x, y] = nat_unpair(z);
    REQUIRE(nat_pair(x, y) == z);
  }
  CHECK(nat_pair(0, 0) == 0);
  // Codes grow with the total bit length, not with the product.
  const Natural big = Natural(1) << 4000;
  CHECK(msb(nat_pair(big, big)) < 8020);
}

TEST_CASE("ordinal pairing examples") {
  CHECK(pair(P("0"), P("0")).is_zero());
  const auto c = pair(P("w*2+1"), P("5"));
  CHECK(unpair(c) == std::pair{P("w*2+1"), P("5")});
  CHECK(compare(pair(P("3"), P("4")), P("w")) == Cmp::LT);
  CHECK(compare(pair(P("w1"), P("w")), P("w2")) == Cmp::LT);
}

TEST_CASE("ordinal pairing properties on random terms") {
  Rng rng(17);
  for (int k = 0; k < 3000; ++k) {
    const auto a = random_term(rng);
    const auto b = random_term(rng);
    const auto c = pair(a, b);
    REQUIRE(unpair(c) == std::pair{a, b});
    REQUIRE(compare(c, a) != Cmp::LT);
    REQUIRE(compare(c, b) != Cmp::LT);
    for (int lvl = 0; lvl <= 4; ++lvl) {
      if (below_cardinal(a, lvl) && below_cardinal(b, lvl)) REQUIRE(below_cardinal(c, lvl));
    }
    const auto z = random_term(rng);
    const auto [x, y] = unpair(z);
    REQUIRE(pair(x, y) == z);
  }
}

TEST_CASE("tuple codec") {
  CHECK(encode_tuple({}).is_zero());
  CHECK(decode_tuple(Ordinal()) == std::vector<Ordinal>{});
  const std::vector<Ordinal> items{P("w+1"), P("0"), P("w1*3")};
  CHECK(decode_tuple(encode_tuple(items)) == items);
  CHECK(!decode_tuple(encode_tuple(items), 2).has_value());
}

TEST_CASE("pattern codec") {
  CHECK(decode_pattern(encode_pattern({}, P("w1")), P("w1")).empty());
  const FinitePattern A({{P("w"), P("0")}});
  CHECK(decode_pattern(encode_pattern(A, P("w")), P("w")) == A);
  const FinitePattern B({{P("w+3"), P("2")}, {P("w+5"), P("0")}, {P("w"), P("7")}});
  CHECK(compare(encode_pattern(B, P("w")), P("w")) == Cmp::LT);
  CHECK(decode_pattern(encode_pattern(B, P("w")), P("w")) == B);
  CHECK_THROWS_AS(encode_pattern(B, P("w+4")), DomainError);
  // Total decoding: every code decodes to something.
  for (int z = 0; z < 3000; ++z) CHECK_NOTHROW(decode_pattern(Ordinal::natural(z), P("w")));
}

TEST_CASE("pattern parsing and printing") {
  const auto A = parse_pattern("(w*2,1);(3,0)");
  CHECK(A.str() == "{(3,0),(w*2,1)}");
  CHECK(parse_pattern("{(3,0),(w*2,1)}") == A);
  CHECK(parse_pattern("").empty());
  CHECK(parse_pattern("{}").empty());
  CHECK(parse_pattern("(1,1);(1,1)").size() == 1);
  CHECK_THROWS_AS(parse_pattern("(1,1"), ParseError);
}

TEST_CASE("f_delta") {
  CHECK(f_delta(W, P("w^2"), P("w^2")).empty());
  CHECK_THROWS_AS(f_delta(W, P("w^2"), P("w^2+w")), DomainError);
  CHECK_THROWS_AS(f_delta(W, P("w^2"), P("5")), DomainError);
  CHECK_THROWS_AS(f_delta(W, P("w+1"), P("w+1")), DomainError);
  Rng rng(23);
  for (const char* d : {"0", "w", "w^2", "w1", "w1+w", "w2+w1*2"}) {
    const auto block = make_block(W, P(d));
    for (int k = 0; k < 300; ++k) {
      const auto xi = random_between(rng, block.base, block.end);
      for (const auto& [a, i] : f_delta(W, P(d), xi)) {
        REQUIRE(compare(a, xi) == Cmp::LT);
        REQUIRE(compare(a, block.low) != Cmp::LT);
        REQUIRE(compare(i, P("w")) == Cmp::LT);
      }
    }
  }
}

TEST_CASE("f_delta witness") {
  CHECK(f_delta_witness(W, P("w^2"), {}) == P("w^2"));
  const FinitePattern A({{P("3"), P("0")}});
  const auto xi = f_delta_witness(W, P("w^2"), A);
  CHECK(compare(xi, P("3")) == Cmp::GT);
  CHECK(compare(xi, P("w^2+w")) == Cmp::LT);
  CHECK(f_delta(W, P("w^2"), xi) == A);
  const auto xi2 = f_delta_witness(W, P("w^2"), A, {.bound = std::nullopt, .above = xi});
  CHECK(compare(xi2, xi) == Cmp::GT);
  CHECK(f_delta(W, P("w^2"), xi2) == A);
  // A coordinate at or beyond delta' is out of range.
  CHECK_THROWS_AS(f_delta_witness(W, P("w^2"), FinitePattern({{P("w^2+w"), P("0")}})), DomainError);
  // Coordinates inside [delta, delta') are allowed; the witness clears them.
  const FinitePattern C({{P("w+1"), P("0")}});
  const auto xi3 = f_delta_witness(W, P("w"), C);
  CHECK(f_delta(W, P("w"), xi3) == C);
}

TEST_CASE("f_delta witnesses are unbounded in the block") {
  Rng rng(29);
  for (const char* d : {"w", "w1", "w1+w^2", "w3+w2"}) {
    const auto block = make_block(W, P(d));
    for (int k = 0; k < 50; ++k) {
      const auto zeta = random_between(rng, block.base, block.end);
      const auto hi = random_between(rng, block.low, block.end);
      FinitePattern A({{random_between(rng, block.low, succ(hi)), Ordinal::natural(k % 5)}});
      const auto xi = f_delta_witness(W, P(d), A, {.bound = std::nullopt, .above = zeta});
      REQUIRE(compare(xi, zeta) == Cmp::GT);
      REQUIRE(f_delta(W, P(d), xi) == A);
    }
  }
}
