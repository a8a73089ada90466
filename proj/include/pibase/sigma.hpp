#pragma once

// The sigma_kappa function, its normal form, the pressing-down gamma_kappa
// and the block endpoint delta'.
//
// sigma is evaluated in closed form on the intervals [1, kappa^+) and
// [mu, mu^+) (mu > kappa a cardinal):
//   sigma(0) = 0,  sigma(a) = kappa * a          for 1 <= a < kappa^+,
//   sigma(a) = mu * (1 + (a \ mu))               for mu <= a < mu^+.

#include <string>
#include <vector>

#include "pibase/ordinal.hpp"

namespace pibase {

struct NormalForm {
  CardinalLevel kappa = CardinalLevel::aleph(0);
  std::vector<Ordinal> alphas;
  Ordinal rest;  // the trailing Delta < kappa

  std::size_t size() const noexcept { return alphas.size(); }
  /// s_i = sigma(a_0) + ... + sigma(a_i).
  std::vector<Ordinal> prefix_sums() const;
  /// sigma(a_0) + ... + sigma(a_{n-1}) + Delta.
  Ordinal value() const;
  /// `sigma(a0) + ... + sigma(ak) + Delta`; a zero Delta is omitted when n >= 1.
  std::string str() const;
};

Ordinal sigma_eval(const CardinalLevel& kappa, const Ordinal& a, int max_level = kDefaultMaxLevel);

/// Largest a with sigma(a) <= d; 0 when d < kappa.
Ordinal sigma_floor(const CardinalLevel& kappa, const Ordinal& d, int max_level = kDefaultMaxLevel);

NormalForm sigma_nf(const CardinalLevel& kappa, const Ordinal& d, int max_level = kDefaultMaxLevel);

/// gamma(d) = sigma(a_0) + ... + sigma(a_{n-2}); 0 when n <= 1.
Ordinal gamma(const CardinalLevel& kappa, const Ordinal& d, int max_level = kDefaultMaxLevel);
Ordinal gamma(const NormalForm& nf);

/// delta' = gamma(d) + sigma(a_{n-1} + 1). Requires Delta = 0 and n >= 1.
Ordinal delta_prime(const CardinalLevel& kappa, const Ordinal& d, int max_level = kDefaultMaxLevel);
/// The equivalent closed form d + |sigma(a_{n-1})|.
Ordinal delta_prime_by_cardinality(const CardinalLevel& kappa, const Ordinal& d, int max_level = kDefaultMaxLevel);

/// True iff d is a multiple kappa * e.
bool is_kappa_multiple(const CardinalLevel& kappa, const Ordinal& d);

void require_infinite_kappa(const CardinalLevel& kappa, int max_level);

}  // namespace pibase
