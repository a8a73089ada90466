#pragma once

// Deterministic term generators: exhaustive enumeration by weight and seeded
// random sampling. Used by the property suites, the acceptance runner, the
// condition-(2) checker and the ordinal-interval space oracle.

#include <cstdint>
#include <random>
#include <vector>

#include "pibase/ordinal.hpp"

namespace pibase {

using Rng = std::mt19937_64;

/// Weight of a term: coefficients plus exponent weights (atom k weighs k+1,
/// an exponent term e weighs 1 + weight(e)). Natural n weighs n+1.
std::size_t weight(const Ordinal& a);

/// All canonical terms of weight <= max_weight using atoms up to max_level,
/// ordered by weight, then ascending value.
std::vector<Ordinal> enumerate_terms(std::size_t max_weight, int max_level);

struct RandomTermOptions {
  int max_level = 3;
  int depth = 2;
  int max_monomials = 3;
  unsigned max_coeff = 5;
};

Ordinal random_term(Rng& rng, const RandomTermOptions& options = {});
/// Uniform-ish random ordinal strictly below `bound` (which must be > 0).
Ordinal random_below(Rng& rng, const Ordinal& bound);
/// Random ordinal in [lo, hi); requires lo < hi.
Ordinal random_between(Rng& rng, const Ordinal& lo, const Ordinal& hi);

}  // namespace pibase
