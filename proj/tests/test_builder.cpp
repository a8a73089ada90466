#include <doctest.h>

#include "pibase/errors.hpp"
#include "pibase/shapirovskii.hpp"

using namespace pibase;

TEST_CASE("discrete spaces give singleton local pi-bases") {
  for (int n = 1; n <= 6; ++n) {
    const FiniteSpaceAdapter X(FiniteSpace::discrete(n));
    const auto prefix = shapirovskii_build(X, {.steps = static_cast<std::size_t>(n)});
    REQUIRE(prefix.points.size() == static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      REQUIRE(prefix.S[a].size() == 1);
      CHECK(prefix.S[a][0] == bit(prefix.points[a]));
    }
    const auto r = def21_check(X, prefix);
    CHECK(r.a.status == "pass");
    CHECK(r.b.status == "pass");
    CHECK(r.c.status == "vacuous");
    CHECK(r.c_star.status == "vacuous");
    CHECK(r.ok());
  }
}

TEST_CASE("discrete enumeration runs out") {
  const FiniteSpaceAdapter X(FiniteSpace::discrete(2));
  CHECK_THROWS_AS(shapirovskii_build(X, {.steps = 3}), DomainError);
}

TEST_CASE("rational line prefix") {
  const RationalLine Q;
  const auto prefix = shapirovskii_build(Q, {.steps = 100});
  CHECK(prefix.kappa_analog == 4);
  const auto r = def21_check(Q, prefix);
  CHECK(r.a.violations.empty());
  CHECK(r.b.violations.empty());
  CHECK(r.a.status == "pass");
  CHECK(r.b.status == "pass");
  CHECK(r.c.status == "vacuous");
  CHECK(!r.c.note.empty());
  CHECK(to_json(Q, prefix).dump() == to_json(Q, shapirovskii_build(Q, {.steps = 100})).dump());
}

TEST_CASE("rational dense enumeration") {
  const RationalLine Q;
  CHECK(Q.show(*Q.dense_point(0)) == "0");
  CHECK(Q.show(*Q.dense_point(1)) == "1");
  CHECK(Q.show(*Q.dense_point(2)) == "-1");
  CHECK(Q.show(*Q.dense_point(3)) == "1/2");
  CHECK(Q.show(*Q.dense_point(5)) == "2");
  std::vector<RationalLine::Point> seen;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto p = *Q.dense_point(i);
    REQUIRE(std::find(seen.begin(), seen.end(), p) == seen.end());
    seen.push_back(p);
  }
}

TEST_CASE("ordinal interval prefixes") {
  for (const char* beta : {"w^2", "w1+1", "w^w", "7"}) {
    const OrdinalInterval X(parse(beta));
    const auto prefix = shapirovskii_build(X, {.steps = 7});
    const auto r = def21_check(X, prefix);
    INFO(beta);
    CHECK(r.a.status == "pass");
    CHECK(r.b.status == "pass");
  }
  CHECK_THROWS_AS(OrdinalInterval{Ordinal{}}, DomainError);
}

TEST_CASE("ordinal interval local bases at limits") {
  const OrdinalInterval X(parse("w^2+1"));
  const auto p = parse("w*3");
  const auto base = X.local_pibase(p, {parse("w*2+5")}, 3, false, nullptr);
  for (const auto& o : base) {
    CHECK(X.is_nonempty_open(o));
    CHECK(!X.closure_meets_points(o, {parse("w*2+5")}));
  }
  for (const auto& nb : X.test_neighbourhoods(p, 3)) {
    CHECK(std::any_of(base.begin(), base.end(), [&](const auto& o) { return X.subset(o, nb); }));
  }
}

TEST_CASE("fault injection is reported") {
  const FiniteSpaceAdapter X(FiniteSpace::discrete(3));
  auto prefix = shapirovskii_build(X, {.steps = 3});
  inject_b_violation(X, prefix);
  const auto r = def21_check(X, prefix);
  CHECK(r.b.status == "fail");
  REQUIRE(!r.b.violations.empty());
  CHECK(r.b.violations.front().find("S(1,0)") != std::string::npos);
  CHECK(!r.ok());

  const RationalLine Q;
  auto qp = shapirovskii_build(Q, {.steps = 5});
  inject_b_violation(Q, qp);
  CHECK(def21_check(Q, qp).b.status == "fail");

  auto tiny = shapirovskii_build(X, {.steps = 1});
  CHECK_THROWS_AS(inject_b_violation(X, tiny), DomainError);
}

TEST_CASE("empty prefix") {
  const RationalLine Q;
  const auto r = def21_check(Q, shapirovskii_build(Q, {.steps = 0}));
  CHECK(r.a.status == "pass");
  CHECK(r.b.status == "pass");
  CHECK(r.c.status == "vacuous");
  CHECK(r.ok());
}

TEST_CASE("non-regular spaces") {
  const FiniteSpaceAdapter S(FiniteSpace::sierpinski());
  CHECK(!S.regular());
  CHECK_THROWS_AS(shapirovskii_build(S, {.steps = 1}), DomainError);
  const auto prefix = shapirovskii_build(S, {.steps = 1, .best_effort = true});
  CHECK(prefix.points.size() == 1);
}

TEST_CASE("stage log") {
  const RationalLine Q;
  const auto prefix = shapirovskii_build(Q, {.steps = 3});
  CHECK(prefix.log[0].phi == "{}");
  CHECK(prefix.log[0].branch == "pick");
  CHECK(prefix.log[1].branch == "least-index");
  const auto j = to_json(Q, prefix);
  CHECK(j["stages"].size() == 3);
  CHECK(j["space"] == "rationals");
}
