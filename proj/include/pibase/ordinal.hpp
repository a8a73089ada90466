#pragma once

// Exact ordinal notations below aleph_{maxLevel+1}: Cantor normal form base
// omega, with leaf atoms A_k (k >= 1) denoting omega_k. Every uncountable
// cardinal is an epsilon number, so omega^{omega_k} and omega_k share the
// single representation "exponent = atom k, coefficient 1".

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pibase {

using Natural = boost::multiprecision::cpp_int;

inline constexpr int kDefaultMaxLevel = 5;

/// Cardinality of an ordinal: either finite(n) or aleph_k.
class CardinalLevel {
 public:
  static CardinalLevel finite(Natural n) { return CardinalLevel(true, std::move(n), 0); }
  static CardinalLevel aleph(int k) { return CardinalLevel(false, 0, k); }

  bool is_finite() const noexcept { return finite_; }
  bool is_infinite() const noexcept { return !finite_; }
  /// The count for finite cardinalities.
  const Natural& count() const noexcept { return count_; }
  /// The aleph index for infinite cardinalities.
  int level() const noexcept { return level_; }

  CardinalLevel successor() const;
  std::string str() const;

  friend bool operator==(const CardinalLevel&, const CardinalLevel&) = default;
  friend std::strong_ordering operator<=>(const CardinalLevel& a, const CardinalLevel& b);

 private:
  CardinalLevel(bool finite, Natural count, int level)
      : finite_(finite), count_(std::move(count)), level_(level) {}

  bool finite_;
  Natural count_;
  int level_;
};

struct Monomial;

/// Immutable ordinal notation; cheap to copy (shared structure).
class Ordinal {
 public:
  Ordinal() = default;  // zero

  static Ordinal natural(Natural n);
  static Ordinal omega();
  /// omega_k as an initial ordinal; level 0 is omega itself.
  static Ordinal cardinal(int level);
  static Ordinal cardinal(const CardinalLevel& c);
  /// omega^e * c, canonicalised (omega^{omega_k} is the atom).
  static Ordinal omega_power(const Ordinal& e, Natural c = 1);
  /// Builds from monomials that must already be canonical; throws otherwise.
  static Ordinal from_monomials(std::vector<Monomial> terms);

  bool is_zero() const noexcept { return !node_; }
  bool is_finite() const noexcept;
  bool is_successor() const noexcept;
  bool is_limit() const noexcept { return !is_zero() && !is_successor(); }
  std::optional<Natural> as_natural() const;

  const std::vector<Monomial>& terms() const noexcept;
  /// Largest atom level occurring anywhere in the term (0 if none).
  int max_atom_level() const noexcept;

  std::string str() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  struct Node;
  explicit Ordinal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Ordinal make(std::vector<Monomial> terms);

  std::shared_ptr<const Node> node_;

  friend struct OrdinalAccess;
};

/// omega^exponent * coeff. When atom > 0 the exponent is omega_atom and the
/// `exponent` member is unused (zero).
struct Monomial {
  int atom = 0;
  Ordinal exponent;
  Natural coeff = 1;

  Ordinal exponent_value() const;
  bool is_finite() const noexcept { return atom == 0 && exponent.is_zero(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

enum class Cmp { LT, EQ, GT };

Cmp compare(const Ordinal& a, const Ordinal& b);
/// Orders monomials by exponent value only.
Cmp compare_exponents(const Monomial& a, const Monomial& b);
std::string_view to_string(Cmp c);

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);
/// The unique beta with g + beta = d. Requires g <= d.
Ordinal sub_left(const Ordinal& g, const Ordinal& d);

CardinalLevel cardinality(const Ordinal& a);
/// |a| as an initial ordinal (finite ordinals map to themselves).
Ordinal cardinality_ordinal(const Ordinal& a);
Ordinal cofinality(const Ordinal& a);

struct Division {
  Ordinal quotient;
  Ordinal remainder;
};
/// a = omega_k * quotient + remainder with remainder < omega_k. Requires k infinite.
Division div_by_cardinal(const Ordinal& a, const CardinalLevel& k);

/// Fundamental-sequence element a[z] for a limit a and z < cf(a).
Ordinal fundamental(const Ordinal& a, const Ordinal& z);

struct ParseOptions {
  int max_level = kDefaultMaxLevel;
};

/// Grammar: naturals, `w`, `w1`..`wN`, `+`, `*`, `^`, parentheses.
Ordinal parse(std::string_view text, const ParseOptions& options = {});
std::string print(const Ordinal& a);

/// Throws LevelOverflow when `a` uses an atom above `max_level`.
void check_level(const Ordinal& a, int max_level);

/// maxLevel from the PIBASE_MAXLEVEL environment variable, or the default.
int max_level_from_env();

namespace detail {
/// General ordinal exponentiation base^exp; used by the parser only.
Ordinal power(const Ordinal& base, const Ordinal& exp);
}  // namespace detail

}  // namespace pibase
