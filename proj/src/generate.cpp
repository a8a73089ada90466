#include "pibase/generate.hpp"

#include <algorithm>
#include <functional>

#include "pibase/errors.hpp"

namespace pibase {

namespace {

std::size_t exponent_weight(const Monomial& m) {
  if (m.atom != 0) return static_cast<std::size_t>(m.atom) + 1;
  return 1 + weight(m.exponent);
}

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Natural small_below(Rng& rng, const Natural& bound) {
  // A natural in [0, bound), biased towards small values for huge bounds.
  if (bound <= 16) return Natural(uniform(rng, 0, bound.convert_to<std::uint64_t>() - 1));
  return Natural(uniform(rng, 0, 15));
}

Ordinal random_below_impl(Rng& rng, const Ordinal& bound, int depth);

Ordinal random_exponent_below(Rng& rng, const Monomial& m, int depth) {
  if (depth <= 0) {
    if (m.atom == 0 && m.exponent.is_finite()) return Ordinal::natural(small_below(rng, *m.exponent.as_natural()));
    return Ordinal::natural(uniform(rng, 0, 3));
  }
  if (m.atom != 0) {
    RandomTermOptions o;
    o.max_level = m.atom - 1;
    o.depth = depth - 1;
    o.max_monomials = 2;
    return random_term(rng, o);
  }
  return random_below_impl(rng, m.exponent, depth - 1);
}

Ordinal random_below_impl(Rng& rng, const Ordinal& bound, int depth) {
  if (bound.is_zero()) throw DomainError("random_below requires a positive bound");
  const auto& t = bound.terms();
  const std::size_t i = uniform(rng, 0, t.size() - 1);
  Ordinal prefix = Ordinal::from_monomials(std::vector<Monomial>(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i)));
  const Monomial& m = t[i];
  if (m.is_finite()) return add(prefix, Ordinal::natural(small_below(rng, m.coeff)));
  Ordinal piece;
  Ordinal tail_exp;
  if (m.coeff > 1 && uniform(rng, 0, 1) == 0) {
    piece = Ordinal::omega_power(m.exponent_value(), 1 + small_below(rng, m.coeff - 1));
    tail_exp = m.exponent_value();
  } else {
    tail_exp = random_exponent_below(rng, m, depth);
    piece = Ordinal::omega_power(tail_exp, uniform(rng, 1, 4));
  }
  Ordinal result = add(prefix, piece);
  if (!tail_exp.is_zero() && depth > 0 && uniform(rng, 0, 1) == 0) {
    result = add(result, random_below_impl(rng, Ordinal::omega_power(tail_exp), depth - 1));
  }
  return result;
}

}  // namespace

std::size_t weight(const Ordinal& a) {
  std::size_t w = 0;
  for (const auto& m : a.terms()) {
    w += exponent_weight(m);
    w += m.coeff > 1000 ? 1000 : m.coeff.convert_to<std::size_t>();
  }
  return w;
}

std::vector<Ordinal> enumerate_terms(std::size_t max_weight, int max_level) {
  // by_weight[w] holds every canonical term of weight exactly w.
  std::vector<std::vector<Ordinal>> by_weight(max_weight + 1);
  by_weight[0].push_back(Ordinal());
  // Candidate exponents as monomials with coefficient 1, tagged by weight.
  struct Exp {
    Monomial mono;
    std::size_t w;
  };
  std::vector<Exp> exps;
  for (int k = 1; k <= max_level; ++k) {
    if (static_cast<std::size_t>(k) + 1 < max_weight) exps.push_back({Monomial{k, Ordinal(), 1}, static_cast<std::size_t>(k) + 1});
  }
  exps.push_back({Monomial{0, Ordinal(), 1}, 1});

  auto sort_exps = [&] {
    std::sort(exps.begin(), exps.end(), [](const Exp& a, const Exp& b) {
      return compare(a.mono.exponent_value(), b.mono.exponent_value()) == Cmp::GT;
    });
  };

  for (std::size_t w = 1; w <= max_weight; ++w) {
    // Exponent terms of weight w-1 become available at monomial weight >= w.
    if (w >= 2) {
      for (const auto& e : by_weight[w - 1]) {
        if (e.is_zero()) continue;
        const auto& et = e.terms();
        if (et.size() == 1 && et[0].atom != 0 && et[0].coeff == 1) continue;  // that is an atom
        exps.push_back({Monomial{0, e, 1}, w});
      }
      sort_exps();
    }
    std::vector<Monomial> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t remaining) {
      if (remaining == 0) {
        by_weight[w].push_back(Ordinal::from_monomials(current));
        return;
      }
      for (std::size_t i = start; i < exps.size(); ++i) {
        const std::size_t ew = exps[i].w;
        if (ew >= remaining) continue;
        for (std::size_t c = 1; ew + c <= remaining; ++c) {
          Monomial m = exps[i].mono;
          m.coeff = c;
          current.push_back(m);
          rec(i + 1, remaining - ew - c);
          current.pop_back();
        }
      }
    };
    rec(0, w);
    std::sort(by_weight[w].begin(), by_weight[w].end());
  }
  std::vector<Ordinal> out;
  for (auto& bucket : by_weight) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

Ordinal random_term(Rng& rng, const RandomTermOptions& options) {
  const int n = static_cast<int>(uniform(rng, 1, static_cast<std::uint64_t>(std::max(1, options.max_monomials))));
  std::vector<Ordinal> exps;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t kind = uniform(rng, 0, options.depth > 0 ? 3 : 1);
    if (kind == 0) {
      exps.push_back(Ordinal());
    } else if (kind == 1) {
      exps.push_back(Ordinal::natural(uniform(rng, 1, 3)));
    } else if (kind == 2 && options.max_level >= 1) {
      exps.push_back(Ordinal::cardinal(static_cast<int>(uniform(rng, 1, static_cast<std::uint64_t>(options.max_level)))));
    } else {
      RandomTermOptions inner = options;
      inner.depth = options.depth - 1;
      inner.max_monomials = 2;
      exps.push_back(random_term(rng, inner));
    }
  }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<Monomial> terms;
  for (const auto& e : exps) {
    Monomial m = Ordinal::omega_power(e).terms().front();
    m.coeff = uniform(rng, 1, options.max_coeff);
    terms.push_back(std::move(m));
  }
  return Ordinal::from_monomials(std::move(terms));
}

Ordinal random_below(Rng& rng, const Ordinal& bound) { return random_below_impl(rng, bound, 3); }

Ordinal random_between(Rng& rng, const Ordinal& lo, const Ordinal& hi) {
  if (compare(lo, hi) != Cmp::LT) throw DomainError("random_between requires lo < hi");
  return add(lo, random_below(rng, sub_left(lo, hi)));
}

}  // namespace pibase
