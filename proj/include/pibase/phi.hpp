#pragma once

// The canonical kappa-function phi: phi(xi) is a finite subset of xi x kappa,
// and below every kappa-multiple d every finite pattern over
// [gamma(d), d) x kappa is attained.
//
// Blocks are the intervals [d, d + kappa) with d a kappa-multiple. Inside a
// block with normal form sigma(a_0) + ... + sigma(a_{n-1}) the components are
// h_i = f_{s_i} restricted to the block (s_i the prefix sums); they are
// interleaved by unpair with the component index clamped to n - 1. The block
// [0, kappa) has the single component f_0.

#include <cstdint>
#include <string>
#include <vector>

#include "pibase/generate.hpp"
#include "pibase/pairing.hpp"
#include "pibase/sigma.hpp"

namespace pibase {

FinitePattern phi_eval(const CardinalLevel& kappa, const Ordinal& xi, int max_level = kDefaultMaxLevel);

/// eta = b + pair(xi0 \ b, i): some eta >= xi0 in the block of b with
/// phi(eta) = h_i(xi0).
Ordinal h_combination_witness(const CardinalLevel& kappa, const Ordinal& b, const Ordinal& i, const Ordinal& xi0,
                              int max_level = kDefaultMaxLevel);

/// Some xi in [gamma(d), d) with phi(xi) = A. Requires Delta = 0, n >= 1 for d.
Ordinal phi_witness(const CardinalLevel& kappa, const Ordinal& d, const FinitePattern& A,
                    int max_level = kDefaultMaxLevel);

struct Condition2Failure {
  std::string pattern;
  std::string message;
};

struct Condition2Report {
  Ordinal delta;
  Ordinal gamma;
  std::size_t samples = 0;
  std::size_t passed = 0;
  bool vacuous = false;
  std::vector<Condition2Failure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Random patterns over [gamma(d), d) x kappa; each must be realised by
/// phi_witness below d and roundtrip through phi_eval. d must be a
/// kappa-multiple; d = 0 passes vacuously.
Condition2Report phi_check_condition2(const CardinalLevel& kappa, const Ordinal& d, std::size_t samples,
                                      std::uint64_t seed = 1, int max_level = kDefaultMaxLevel);

/// A random pattern with up to max_items pairs over [lo, hi) x kappa.
FinitePattern random_pattern(Rng& rng, const CardinalLevel& kappa, const Ordinal& lo, const Ordinal& hi,
                             std::size_t max_items = 3);

}  // namespace pibase
