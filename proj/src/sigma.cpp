#include "pibase/sigma.hpp"

#include "pibase/errors.hpp"

namespace pibase {

void require_infinite_kappa(const CardinalLevel& kappa, int max_level) {
  if (kappa.is_finite()) throw DomainError("kappa must be an infinite cardinal");
  if (kappa.level() > max_level) {
    throw LevelOverflow("kappa level " + std::to_string(kappa.level()) + " above maxLevel " + std::to_string(max_level));
  }
}

Ordinal sigma_eval(const CardinalLevel& kappa, const Ordinal& a, int max_level) {
  require_infinite_kappa(kappa, max_level);
  check_level(a, max_level);
  if (a.is_zero()) return Ordinal();
  const int level = cardinality(a).is_finite() ? 0 : a.max_atom_level();
  if (level <= kappa.level()) return mul(Ordinal::cardinal(kappa.level()), a);
  const Ordinal mu = Ordinal::cardinal(level);
  return mul(mu, add(Ordinal::natural(1), sub_left(mu, a)));
}

Ordinal sigma_floor(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  require_infinite_kappa(kappa, max_level);
  check_level(d, max_level);
  const Ordinal k = Ordinal::cardinal(kappa.level());
  if (compare(d, k) == Cmp::LT) return Ordinal();
  const int level = d.max_atom_level();
  if (level <= kappa.level()) return div_by_cardinal(d, kappa).quotient;
  // d lies in [mu, mu^+): sigma(mu + b) = mu * (1 + b) <= d.
  const Ordinal q = div_by_cardinal(d, CardinalLevel::aleph(level)).quotient;
  return add(Ordinal::cardinal(level), sub_left(Ordinal::natural(1), q));
}

std::vector<Ordinal> NormalForm::prefix_sums() const {
  std::vector<Ordinal> out;
  Ordinal s;
  for (const auto& a : alphas) {
    s = add(s, sigma_eval(kappa, a, std::max(kDefaultMaxLevel, a.max_atom_level())));
    out.push_back(s);
  }
  return out;
}

Ordinal NormalForm::value() const {
  const auto sums = prefix_sums();
  return add(sums.empty() ? Ordinal() : sums.back(), rest);
}

std::string NormalForm::str() const {
  std::string out;
  for (const auto& a : alphas) {
    if (!out.empty()) out += " + ";
    out += "sigma(" + print(a) + ")";
  }
  if (alphas.empty() || !rest.is_zero()) {
    if (!out.empty()) out += " + ";
    out += print(rest);
  }
  return out;
}

NormalForm sigma_nf(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  require_infinite_kappa(kappa, max_level);
  check_level(d, max_level);
  NormalForm nf;
  nf.kappa = kappa;
  const Ordinal k = Ordinal::cardinal(kappa.level());
  Ordinal residue = d;
  while (compare(residue, k) != Cmp::LT) {
    const Ordinal a = sigma_floor(kappa, residue, max_level);
    nf.alphas.push_back(a);
    residue = sub_left(sigma_eval(kappa, a, max_level), residue);
  }
  nf.rest = residue;
  return nf;
}

Ordinal gamma(const NormalForm& nf) {
  if (nf.alphas.size() <= 1) return Ordinal();
  return nf.prefix_sums()[nf.alphas.size() - 2];
}

Ordinal gamma(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  return gamma(sigma_nf(kappa, d, max_level));
}

namespace {
NormalForm block_form(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  NormalForm nf = sigma_nf(kappa, d, max_level);
  if (nf.alphas.empty()) throw DomainError("delta' requires a normal form with n >= 1 (got " + print(d) + ")");
  if (!nf.rest.is_zero()) throw DomainError("delta' requires Delta = 0 (got Delta = " + print(nf.rest) + ")");
  return nf;
}
}  // namespace

Ordinal delta_prime(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  const NormalForm nf = block_form(kappa, d, max_level);
  return add(gamma(nf), sigma_eval(kappa, succ(nf.alphas.back()), max_level));
}

Ordinal delta_prime_by_cardinality(const CardinalLevel& kappa, const Ordinal& d, int max_level) {
  const NormalForm nf = block_form(kappa, d, max_level);
  return add(d, cardinality_ordinal(sigma_eval(kappa, nf.alphas.back(), max_level)));
}

bool is_kappa_multiple(const CardinalLevel& kappa, const Ordinal& d) {
  return div_by_cardinal(d, kappa).remainder.is_zero();
}

}  // namespace pibase
