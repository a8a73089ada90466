#pragma once

// Pairing on ordinal notations, finite-pattern codecs, and the surjections
// f_delta : [delta, delta') -> [[gamma(delta), delta') x kappa]^{<omega}.
//
// pair() works coefficient-wise: both arguments are read as finitely
// supported maps exponent -> natural and the coefficients at each exponent
// are combined by nat_pair. This is a bijection on
// notations, dominates both arguments, and never introduces a new exponent,
// so every omega_k (and omega) is closed under it.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pibase/ordinal.hpp"

namespace pibase {

/// Bijection N x N -> N with nat_pair(a, b) >= max(a, b) and code length
/// about bitlen(a) + bitlen(b) + log2 of that sum.
Natural nat_pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> nat_unpair(const Natural& z);

Ordinal pair(const Ordinal& a, const Ordinal& b);
std::pair<Ordinal, Ordinal> unpair(const Ordinal& c);

/// Length-prefixed iterated pairs: pair(m, pair(x_1, pair(x_2, ... x_m))),
/// with the empty tuple coded by 0. Inherits domination and closure from pair().
Ordinal encode_tuple(std::span<const Ordinal> items);
std::optional<std::vector<Ordinal>> decode_tuple(const Ordinal& code, std::size_t max_items = 4096);

struct IndexPair {
  Ordinal first;
  Ordinal second;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair& a, const IndexPair& b) {
    if (auto c = a.first <=> b.first; c != 0) return c;
    return a.second <=> b.second;
  }
};

/// A finite subset of On x kappa, kept sorted and duplicate-free.
class FinitePattern {
 public:
  FinitePattern() = default;
  explicit FinitePattern(std::vector<IndexPair> items);

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<IndexPair>& items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  /// Largest first coordinate; nullopt for the empty pattern.
  std::optional<Ordinal> max_first() const;
  bool contains(const IndexPair& p) const;

  /// `{(a,i),(b,j)}` in canonical order.
  std::string str() const;

  friend bool operator==(const FinitePattern&, const FinitePattern&) = default;

 private:
  std::vector<IndexPair> items_;
};

/// Accepts `(a,i);(b,j)`, `{(a,i),(b,j)}`, `{}` and the empty string.
FinitePattern parse_pattern(std::string_view text, const ParseOptions& options = {});

/// Codes first coordinates relative to `base` (via sub_left). Requires every
/// first coordinate >= base.
Ordinal encode_pattern(const FinitePattern& pattern, const Ordinal& base);
/// Total: ill-formed codes decode to the empty pattern.
FinitePattern decode_pattern(const Ordinal& code, const Ordinal& base);

/// The interval data attached to a block base delta (Delta = 0 in its normal
/// form, or delta = 0 with domain [0, kappa)).
struct Block {
  CardinalLevel kappa = CardinalLevel::aleph(0);
  Ordinal base;       // delta
  Ordinal low;        // gamma(delta)
  Ordinal width;      // |sigma(a_{n-1})| as an initial ordinal; kappa when delta = 0
  Ordinal end;        // delta' = delta + width
  int width_level = 0;
};

Block make_block(const CardinalLevel& kappa, const Ordinal& delta, int max_level = kDefaultMaxLevel);

/// Injective code of a coordinate x in [low, end) as an ordinal below width.
/// Coordinates in [base, base + kappa) get codes below kappa.
Ordinal encode_coordinate(const Block& block, const Ordinal& x);
std::optional<Ordinal> decode_coordinate(const Block& block, const Ordinal& code);

FinitePattern f_delta(const CardinalLevel& kappa, const Ordinal& delta, const Ordinal& xi,
                      int max_level = kDefaultMaxLevel);

struct WitnessOptions {
  /// Require the witness to be < bound.
  std::optional<Ordinal> bound;
  /// Require the witness to be > above (used to produce many witnesses).
  std::optional<Ordinal> above;
};

/// Some xi in [delta, delta') with f_delta(xi) = pattern and xi > max first coordinate.
Ordinal f_delta_witness(const CardinalLevel& kappa, const Ordinal& delta, const FinitePattern& pattern,
                        const WitnessOptions& options = {}, int max_level = kDefaultMaxLevel);

}  // namespace pibase
