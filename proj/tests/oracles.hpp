#pragma once

// Test-only reference implementations, written independently of the library
// code they check.

#include <algorithm>
#include <optional>
#include <vector>

#include "pibase/generate.hpp"
#include "pibase/ordinal.hpp"
#include "pibase/sigma.hpp"

namespace oracle {

using pibase::Monomial;
using pibase::Ordinal;

int cmp_ordinal(const Ordinal& a, const Ordinal& b);

// x against omega_k (k >= 1), reading off the leading monomial.
inline int cmp_with_cardinal(const Ordinal& x, int k) {
  if (x.is_zero()) return -1;
  const Monomial& lead = x.terms().front();
  if (lead.atom != 0) {
    if (lead.atom != k) return lead.atom < k ? -1 : 1;
    return (lead.coeff > 1 || x.terms().size() > 1) ? 1 : 0;
  }
  if (lead.exponent.is_zero()) return -1;
  // omega^y * c is below omega_k iff y is (omega_k is an epsilon number).
  return cmp_with_cardinal(lead.exponent, k) < 0 ? -1 : 1;
}

inline int cmp_exponent(const Monomial& a, const Monomial& b) {
  if (a.atom && b.atom) return a.atom == b.atom ? 0 : (a.atom < b.atom ? -1 : 1);
  if (a.atom) return -cmp_with_cardinal(b.exponent, a.atom);
  if (b.atom) return cmp_with_cardinal(a.exponent, b.atom);
  return cmp_ordinal(a.exponent, b.exponent);
}

// Lexicographic comparison of Cantor normal forms.
inline int cmp_ordinal(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (int c = cmp_exponent(x[i], y[i]); c != 0) return c;
    if (x[i].coeff != y[i].coeff) return x[i].coeff < y[i].coeff ? -1 : 1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

// sigma(n) for finite n > 0 by the successor recursion from sigma(1) = kappa.
inline Ordinal sigma_finite_by_recursion(const pibase::CardinalLevel& kappa, unsigned n) {
  if (n == 0) return {};
  Ordinal s = Ordinal::cardinal(kappa);
  for (unsigned i = 1; i < n; ++i) s = pibase::add(s, pibase::cardinality_ordinal(s));
  return s;
}

// Candidate first terms for alternative normal forms of d: every small term
// plus perturbations of the terms in the computed normal form.
inline std::vector<Ordinal> nf_candidates(const pibase::NormalForm& nf, const std::vector<Ordinal>& small) {
  std::vector<Ordinal> out = small;
  for (const auto& a : nf.alphas) {
    out.push_back(a);
    out.push_back(pibase::succ(a));
    std::vector<Monomial> t = a.terms();
    while (!t.empty()) {
      out.push_back(Ordinal::from_monomials(t));
      if (t.back().coeff > 1) {
        t.back().coeff -= 1;
      } else {
        t.pop_back();
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Number of decompositions d = sigma(a_0) + ... + sigma(a_{n-1}) + Delta with
// a_i from `cand`, strictly descending |sigma(a_i)| and Delta < kappa; stops at 2.
inline int count_decompositions(const pibase::CardinalLevel& kappa, const Ordinal& d, const std::vector<Ordinal>& cand,
                                std::optional<pibase::CardinalLevel> below = std::nullopt) {
  using namespace pibase;
  int count = compare(d, Ordinal::cardinal(kappa)) == Cmp::LT ? 1 : 0;
  for (const auto& a : cand) {
    if (a.is_zero()) continue;
    const Ordinal s = sigma_eval(kappa, a);
    if (compare(s, d) == Cmp::GT) continue;
    const CardinalLevel c = cardinality(s);
    if (below && !(c < *below)) continue;
    count += count_decompositions(kappa, sub_left(s, d), cand, c);
    if (count >= 2) return count;
  }
  return count;
}

}  // namespace oracle
