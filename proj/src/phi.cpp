#include "pibase/phi.hpp"

#include "pibase/errors.hpp"

namespace pibase {

namespace {

Ordinal kappa_ordinal(const CardinalLevel& kappa) { return Ordinal::cardinal(kappa.level()); }

// Largest kappa-multiple <= x.
Ordinal block_floor(const CardinalLevel& kappa, const Ordinal& x) {
  return mul(kappa_ordinal(kappa), div_by_cardinal(x, kappa).quotient);
}

// Prefix sums of the block base b; the base 0 has the single level 0.
std::vector<Ordinal> block_levels(const CardinalLevel& kappa, const Ordinal& b, int max_level) {
  if (b.is_zero()) return {Ordinal()};
  return sigma_nf(kappa, b, max_level).prefix_sums();
}

void require_pattern_in(const FinitePattern& A, const CardinalLevel& kappa, const Ordinal& lo, const Ordinal& hi) {
  const Ordinal k = kappa_ordinal(kappa);
  for (const auto& [x, i] : A) {
    if (compare(x, lo) == Cmp::LT || compare(x, hi) != Cmp::LT) {
      throw DomainError("pattern coordinate " + print(x) + " outside [" + print(lo) + ", " + print(hi) + ")");
    }
    if (compare(i, k) != Cmp::LT) throw DomainError("pattern index " + print(i) + " is not below kappa");
  }
}

}  // namespace

FinitePattern phi_eval(const CardinalLevel& kappa, const Ordinal& xi, int max_level) {
  require_infinite_kappa(kappa, max_level);
  check_level(xi, max_level);
  const Division div = div_by_cardinal(xi, kappa);
  const Ordinal base = mul(kappa_ordinal(kappa), div.quotient);
  const auto levels = block_levels(kappa, base, max_level);
  const auto [q, r] = unpair(div.remainder);
  std::size_t i = levels.size() - 1;
  if (auto rn = r.as_natural(); rn && *rn < i) i = rn->convert_to<std::size_t>();
  FinitePattern out = f_delta(kappa, levels[i], add(base, q), max_level);
  if (auto m = out.max_first(); m && compare(*m, xi) != Cmp::LT) {
    throw std::logic_error("phi(" + print(xi) + ") escapes xi x kappa");
  }
  return out;
}

Ordinal h_combination_witness(const CardinalLevel& kappa, const Ordinal& b, const Ordinal& i, const Ordinal& xi0,
                              int max_level) {
  require_infinite_kappa(kappa, max_level);
  if (!is_kappa_multiple(kappa, b)) throw DomainError("block base " + print(b) + " is not a kappa-multiple");
  const auto levels = block_levels(kappa, b, max_level);
  const auto in = i.as_natural();
  if (!in || *in >= levels.size()) {
    throw DomainError("component index " + print(i) + " not below n = " + std::to_string(levels.size()));
  }
  if (compare(xi0, b) == Cmp::LT || compare(xi0, add(b, kappa_ordinal(kappa))) != Cmp::LT) {
    throw DomainError("xi0 = " + print(xi0) + " outside the block [" + print(b) + ", " + print(b) + " + kappa)");
  }
  return add(b, pair(sub_left(b, xi0), i));
}

Ordinal phi_witness(const CardinalLevel& kappa, const Ordinal& d, const FinitePattern& A, int max_level) {
  require_infinite_kappa(kappa, max_level);
  const NormalForm nf = sigma_nf(kappa, d, max_level);
  if (nf.alphas.empty() || !nf.rest.is_zero()) {
    throw DomainError("phi_witness requires Delta = 0 and n >= 1 in the normal form of " + print(d));
  }
  const Ordinal g = gamma(nf);
  require_pattern_in(A, kappa, g, d);
  const Ordinal& a = nf.alphas.back();
  const std::size_t n = nf.alphas.size();

  if (a.is_limit()) {
    // Any beta < a with A below g + sigma(beta) works; take the least.
    Ordinal beta = Ordinal::natural(1);
    if (auto m = A.max_first()) beta = succ(sigma_floor(kappa, sub_left(g, *m), max_level));
    return phi_witness(kappa, add(g, sigma_eval(kappa, beta, max_level)), A, max_level);
  }

  // a = b0 + 1; the last monomial of a successor is finite.
  std::vector<Monomial> pred = a.terms();
  if (pred.back().coeff == 1) pred.pop_back();
  else pred.back().coeff -= 1;
  const Ordinal b0 = Ordinal::from_monomials(std::move(pred));

  if (!b0.is_zero()) {
    const Ordinal star = add(g, sigma_eval(kappa, b0, max_level));
    const Ordinal xi0 = f_delta_witness(kappa, star, A, {}, max_level);
    const Ordinal b = block_floor(kappa, xi0);
    return h_combination_witness(kappa, b, Ordinal::natural(n - 1), xi0, max_level);
  }

  // a = 1: d = g + kappa, and f_g (component n - 2 of the block g) covers
  // [g, g + kappa) inside that very block.
  const Ordinal bound = add(g, kappa_ordinal(kappa));
  const Ordinal xi0 = f_delta_witness(kappa, g, A, WitnessOptions{.bound = bound, .above = std::nullopt}, max_level);
  const Ordinal index = Ordinal::natural(n == 1 ? 0 : n - 2);
  return h_combination_witness(kappa, g, index, xi0, max_level);
}

FinitePattern random_pattern(Rng& rng, const CardinalLevel& kappa, const Ordinal& lo, const Ordinal& hi,
                             std::size_t max_items) {
  const Ordinal k = kappa_ordinal(kappa);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, max_items)(rng);
  std::vector<IndexPair> items;
  for (std::size_t j = 0; j < count; ++j) {
    Ordinal index = (rng() % 2 == 0) ? Ordinal::natural(rng() % 4) : random_below(rng, k);
    items.push_back(IndexPair{random_between(rng, lo, hi), std::move(index)});
  }
  return FinitePattern(std::move(items));
}

Condition2Report phi_check_condition2(const CardinalLevel& kappa, const Ordinal& d, std::size_t samples,
                                      std::uint64_t seed, int max_level) {
  require_infinite_kappa(kappa, max_level);
  check_level(d, max_level);
  Condition2Report report;
  report.delta = d;
  report.samples = samples;
  if (d.is_zero()) {
    report.vacuous = true;
    return report;
  }
  if (!is_kappa_multiple(kappa, d)) throw DomainError("condition (2) is stated for kappa-multiples; got " + print(d));
  report.gamma = gamma(kappa, d, max_level);
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const FinitePattern A = random_pattern(rng, kappa, report.gamma, d);
    try {
      const Ordinal xi = phi_witness(kappa, d, A, max_level);
      if (compare(xi, report.gamma) == Cmp::LT || compare(xi, d) != Cmp::LT) {
        report.failures.push_back({A.str(), "witness " + print(xi) + " outside [gamma(d), d)"});
        continue;
      }
      const FinitePattern back = phi_eval(kappa, xi, max_level);
      if (back != A) {
        report.failures.push_back({A.str(), "phi(" + print(xi) + ") = " + back.str()});
        continue;
      }
      ++report.passed;
    } catch (const std::exception& e) {
      report.failures.push_back({A.str(), e.what()});
    }
  }
  return report;
}

}  // namespace pibase
