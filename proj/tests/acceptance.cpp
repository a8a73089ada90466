// Acceptance runner: one PASS/FAIL line per criterion, each under its time limit.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pibase/finite_space.hpp"
#include "pibase/generate.hpp"
#include "pibase/pairing.hpp"
#include "pibase/phi.hpp"
#include "pibase/shapirovskii.hpp"
#include "pibase/sigma.hpp"

using namespace pibase;

namespace {

const CardinalLevel W = CardinalLevel::aleph(0);

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

int run_criterion(int id, const std::string& name, double limit_s, const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && dt > limit_s) {
    ok = false;
    detail += "; over the time limit";
  }
  std::ostringstream line;
  line.precision(3);
  line << std::fixed << (ok ? "PASS" : "FAIL") << " " << id << " " << name << ": " << detail << " (" << dt << " s, limit "
       << limit_s << " s)";
  std::cout << line.str() << std::endl;
  return ok ? 0 : 1;
}

Cmp flip(Cmp c) { return c == Cmp::LT ? Cmp::GT : c == Cmp::GT ? Cmp::LT : Cmp::EQ; }

std::string arithmetic_laws() {
  Rng rng(1001);
  const int samples = 10000;
  for (int k = 0; k < samples; ++k) {
    const RandomTermOptions opt{.max_level = static_cast<int>(k % 4)};
    const auto a = random_term(rng, opt);
    const auto b = random_term(rng, opt);
    const auto c = random_term(rng, opt);
    expect(add(add(a, b), c) == add(a, add(b, c)), "add not associative at " + print(a) + ", " + print(b));
    expect(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "mul does not left-distribute at " + print(a));
    const Cmp ab = compare(a, b);
    expect(compare(b, a) == flip(ab), "compare not antisymmetric at " + print(a) + ", " + print(b));
    expect((ab == Cmp::EQ) == (a == b), "EQ differs from identity of canonical forms");
    const int o = oracle::cmp_ordinal(a, b);
    expect(ab == (o < 0 ? Cmp::LT : o > 0 ? Cmp::GT : Cmp::EQ), "compare disagrees with the lexicographic oracle");
    const Cmp bc = compare(b, c);
    if (ab == Cmp::LT && bc == Cmp::LT) expect(compare(a, c) == Cmp::LT, "compare not transitive");
  }
  return std::to_string(samples) + " triples over atom levels 0-3";
}

std::string sigma_recursion() {
  Rng rng(1002);
  int checked = 0;
  while (checked < 1000) {
    const auto kappa = CardinalLevel::aleph(static_cast<int>(rng() % 3));
    const auto a = random_term(rng, {.max_level = 4});
    if (a.is_zero()) continue;
    const auto s = sigma_eval(kappa, a);
    expect(sigma_eval(kappa, succ(a)) == add(s, cardinality_ordinal(s)), "recursion fails at " + print(a));
    ++checked;
  }
  // Limits: sigma(lambda) is the least upper bound of sampled sigma(lambda[i]).
  expect(sigma_eval(W, Ordinal::omega()) == parse("w^2"), "sigma(w) != w^2");
  expect(sigma_eval(W, parse("w1")) == parse("w1"), "sigma(w1) != w1");
  for (int i = 0; i < 200; ++i) {
    expect(compare(sigma_eval(W, Ordinal::natural(i)), parse("w^2")) == Cmp::LT, "sigma(n) not below w^2");
    const auto beta = random_below(rng, parse("w1"));
    expect(compare(sigma_eval(W, beta), parse("w1")) == Cmp::LT, "sigma(" + print(beta) + ") not below w1");
  }
  int lub = 0;
  for (int k = 0; k < 300; ++k) {
    const auto x = random_below(rng, parse("w^2"));
    bool passed = false;
    for (int i = 0; i < 4096 && !passed; ++i) passed = compare(x, sigma_eval(W, Ordinal::natural(i))) == Cmp::LT;
    expect(passed, "no sigma(n) above " + print(x));
    const auto y = random_below(rng, parse("w1"));
    // Countable ordinals below w1: some countable beta has sigma(beta) above y.
    const auto beta = succ(y);
    expect(compare(y, sigma_eval(W, beta)) == Cmp::LT && compare(sigma_eval(W, beta), parse("w1")) == Cmp::LT,
           "no countable sigma value above " + print(y));
    lub += 2;
  }
  return std::to_string(checked) + " successor steps, " + std::to_string(lub) + " least-upper-bound samples";
}

std::string normal_forms() {
  const auto corpus = enumerate_terms(15, 3);
  expect(corpus.size() >= 10000, "corpus too small");
  const auto small = enumerate_terms(5, 3);
  std::size_t dprime = 0, max_terms = 0;
  for (const auto& d : corpus) {
    const auto nf = sigma_nf(W, d);
    max_terms = std::max(max_terms, nf.size());
    expect(nf.value() == d, "recomposition fails at " + print(d));
    expect(oracle::count_decompositions(W, d, oracle::nf_candidates(nf, small)) == 1,
           "normal form of " + print(d) + " is not unique among candidates");
    if (!d.is_zero()) expect(compare(gamma(nf), d) == Cmp::LT, "gamma not pressing down at " + print(d));
    if (nf.size() > 0 && nf.rest.is_zero()) {
      const auto a = delta_prime(W, d);
      expect(a == delta_prime_by_cardinality(W, d), "delta' formulas disagree at " + print(d));
      expect(compare(a, d) == Cmp::GT, "delta' not above " + print(d));
      ++dprime;
    }
  }
  return std::to_string(corpus.size()) + " ordinals (normal forms up to " + std::to_string(max_terms) +
         " terms), delta' checked on " + std::to_string(dprime);
}

std::string codec() {
  Rng rng(1004);
  for (int k = 0; k < 10000; ++k) {
    const auto a = random_term(rng);
    const auto b = random_term(rng);
    const auto c = pair(a, b);
    expect(unpair(c) == std::pair{a, b}, "unpair(pair) fails at " + print(a) + ", " + print(b));
    expect(compare(c, a) != Cmp::LT && compare(c, b) != Cmp::LT, "pair below max");
    for (int lvl = 0; lvl <= 4; ++lvl) {
      const auto card = Ordinal::cardinal(lvl);
      if (compare(a, card) == Cmp::LT && compare(b, card) == Cmp::LT) {
        expect(compare(c, card) == Cmp::LT, "cardinal closure fails");
      }
    }
    if (a.is_finite() && b.is_finite()) expect(c.is_finite(), "finite closure fails");
  }
  const char* deltas[] = {"0", "w", "w^2", "w*5", "w1", "w1+w^2", "w2+w1", "w2*3+w1*2", "w3+w^w", "w3+w2+w1"};
  int witnessed = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto d = parse(deltas[k % 10]);
    const auto block = make_block(W, d);
    const auto A = random_pattern(rng, W, block.low, block.end, 1 + k % 4);
    const auto xi = f_delta_witness(W, d, A);
    expect(f_delta(W, d, xi) == A, "f_delta(witness) != A for " + A.str());
    if (auto m = A.max_first()) expect(compare(xi, *m) == Cmp::GT, "witness not above max(A)");
    ++witnessed;
  }
  return "10000 pairs, " + std::to_string(witnessed) + " f_delta witnesses";
}

std::string phi_conditions() {
  Rng rng(1005);
  for (int k = 0; k < 1000; ++k) {
    const auto kappa = CardinalLevel::aleph(static_cast<int>(k % 3));
    const auto xi = random_term(rng);
    for (const auto& [a, i] : phi_eval(kappa, xi)) {
      expect(compare(a, xi) == Cmp::LT && compare(i, Ordinal::cardinal(kappa)) == Cmp::LT,
             "condition (1) fails at " + print(xi));
    }
  }
  // One-, two- and three-term normal forms, atoms up to level 3.
  const char* fixed[] = {"w",        "w^2",          "w1",          "w3",         "w1+w^2",
                         "w2+w1*3",  "w3+w^w",       "w2+w1+w",     "w3+w2+w^3", "w3*2+w1+w*4"};
  int checked = 0;
  std::size_t terms_seen[4] = {0, 0, 0, 0};
  auto check_delta = [&](const CardinalLevel& kappa, const Ordinal& d, int patterns) {
    const auto nf = sigma_nf(kappa, d);
    terms_seen[std::min<std::size_t>(nf.size(), 3)]++;
    const auto g = gamma(nf);
    for (int j = 0; j < patterns; ++j) {
      const auto A = random_pattern(rng, kappa, g, d, 1 + j % 3);
      const auto xi = phi_witness(kappa, d, A);
      expect(compare(xi, d) == Cmp::LT && compare(xi, g) != Cmp::LT, "witness outside [gamma, delta)");
      expect(phi_eval(kappa, xi) == A, "phi(witness) != " + A.str() + " below " + print(d));
      ++checked;
    }
  };
  for (const char* d : fixed) check_delta(W, parse(d), 12);
  for (int k = 0; k < 40; ++k) {
    const auto eps = random_term(rng, {.max_level = 3});
    if (eps.is_zero()) continue;
    const auto d = mul(Ordinal::omega(), eps);
    check_delta(W, d, 3);
  }
  check_delta(CardinalLevel::aleph(1), parse("w3+w2*w1"), 10);
  expect(terms_seen[1] && terms_seen[2] && terms_seen[3], "missing 1-, 2- or 3-term normal forms");
  return "1000 condition (1) samples, " + std::to_string(checked) + " condition (2) witnesses (terms 1/2/3+: " +
         std::to_string(terms_seen[1]) + "/" + std::to_string(terms_seen[2]) + "/" + std::to_string(terms_seen[3]) +
         " deltas)";
}

std::string lemma24() {
  const auto spaces = enumerate_topologies(4);
  expect(spaces.size() == 355, "enumerator checksum: " + std::to_string(spaces.size()) + " topologies on 4 points");
  Rng rng(1006);
  std::size_t calls = 0, covers = 0, frees = 0;
  for (const auto& x : spaces) {
    const auto opens = x.opens();
    for (Mask y = 0; y <= x.full(); ++y) {
      for (int L = 0; L <= 3; ++L) {
        auto family = lemma24_hardest_family(x, y, L);
        std::vector<std::vector<Mask>> families{family};
        for (Mask o : opens) {
          if (rng() % 3 == 0) family.push_back(o);
        }
        families.push_back(family);
        for (const auto& fam : families) {
          expect(lemma24_hypothesis(x, y, fam, L), "hypothesis check rejects an admissible family");
          const auto r = lemma24_extract(x, y, fam, L);
          expect(lemma24_verify(x, y, fam, L, r), "dichotomy contract fails");
          ++calls;
          (r.cover ? covers : frees)++;
        }
      }
    }
  }
  return "355 topologies, " + std::to_string(calls) + " extractions (" + std::to_string(covers) + " covers, " +
         std::to_string(frees) + " free sequences)";
}

template <class Space>
std::string build_and_check(const Space& X, std::size_t steps) {
  const auto p1 = shapirovskii_build(X, {.steps = steps});
  const auto p2 = shapirovskii_build(X, {.steps = steps});
  const auto r = def21_check(X, p1);
  expect(r.a.status == "pass" && r.a.violations.empty(), X.kind() + ": (a) " + r.a.status);
  expect(r.b.status == "pass" && r.b.violations.empty(), X.kind() + ": (b) " + r.b.status);
  expect(r.c.status == "vacuous" && !r.c.note.empty(), X.kind() + ": (c) not flagged vacuous");
  expect(r.c_star.status == "vacuous", X.kind() + ": (c*) not flagged vacuous");
  const auto j1 = nlohmann::json{{"prefix", to_json(X, p1)}, {"report", to_json(r)}}.dump();
  const auto j2 = nlohmann::json{{"prefix", to_json(X, p2)}, {"report", to_json(def21_check(X, p2))}}.dump();
  expect(j1 == j2, X.kind() + ": JSON differs between runs");
  return std::to_string(r.a.checked + r.b.checked);
}

std::string builder() {
  std::string out;
  for (int n = 1; n <= 6; ++n) {
    build_and_check(FiniteSpaceAdapter(FiniteSpace::discrete(n)), static_cast<std::size_t>(n));
  }
  const auto checks = build_and_check(RationalLine{}, 100);
  return "discrete n=1..6 and rationals N=100 ((a),(b) checks on Q: " + checks + "), (c) vacuous, JSON identical";
}

std::string invariant_calculators() {
  for (int n = 1; n <= 6; ++n) {
    const auto r = invariants(FiniteSpace::discrete(n));
    expect(r.density == n && r.spread == n && r.free_sequence == n && r.pi_character == 1,
           "discrete " + std::to_string(n) + " invariants wrong");
  }
  expect(invariants(FiniteSpace::sierpinski()).free_sequence == 1, "Sierpinski F != 1");
  std::size_t rows = 0, ms = 0, m1s = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto spaces = enumerate_topologies(n);
    for (const auto& row : star_table(n)) {
      const auto& x = spaces[row.index];
      expect(is_pibase(x, row.witness), "witness is not a pi-base");
      expect(family_order(x, row.witness) == row.m, "witness order differs from m");
      ++rows;
      ms += row.d_le_ms;
      m1s += row.d_le_m1s;
    }
  }
  return "table of " + std::to_string(rows) + " spaces, witnesses validated; d <= m*s on " + std::to_string(ms) +
         ", d <= (m+1)*s on " + std::to_string(m1s);
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion(1, "arithmetic laws", 5, arithmetic_laws);
  failures += run_criterion(2, "sigma recursion", 5, sigma_recursion);
  failures += run_criterion(3, "normal form", 60, normal_forms);
  failures += run_criterion(4, "codec", 30, codec);
  failures += run_criterion(5, "phi conditions", 120, phi_conditions);
  failures += run_criterion(6, "cover or free sequence dichotomy", 60, lemma24);
  failures += run_criterion(7, "builder", 60, builder);
  failures += run_criterion(8, "invariant calculators", 120, invariant_calculators);
  return failures == 0 ? 0 : 1;
}
