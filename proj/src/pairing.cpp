#include "pibase/pairing.hpp"

#include <algorithm>
#include <cctype>

#include "pibase/errors.hpp"
#include "pibase/sigma.hpp"

namespace pibase {

namespace bmp = boost::multiprecision;

// ---------------------------------------------------------------- naturals

// Length-graded pairing: pairs are grouped by s = bitlen(a) + bitlen(b),
// then by bitlen(a), then mixed-radix inside the block. The code has about
// bitlen(a) + bitlen(b) + log2(s) bits, so nested codes grow additively
// (the Cantor polynomial doubles the length at every level).
namespace {

std::size_t bitlen(const Natural& x) { return x == 0 ? 0 : bmp::msb(x) + 1; }

Natural pow2(std::size_t e) {
  Natural out = 0;
  bmp::bit_set(out, e);
  return out;
}

// Count of naturals with bit length l.
Natural class_size(std::size_t l) { return l == 0 ? Natural(1) : pow2(l - 1); }

Natural class_low(std::size_t l) { return l == 0 ? Natural(0) : pow2(l - 1); }

// Number of pairs with total length < s: (s + 1) * 2^(s-2) for s >= 1.
Natural before_total(std::size_t s) {
  if (s == 0) return 0;
  if (s == 1) return 1;
  return Natural(s + 1) * pow2(s - 2);
}

// Number of pairs with total length s and first length < la.
Natural before_first(std::size_t s, std::size_t la) {
  if (la == 0) return 0;
  if (s == 1) return 1;
  return pow2(s - 1) + Natural(la - 1) * pow2(s - 2);
}

}  // namespace

Natural nat_pair(const Natural& a, const Natural& b) {
  const std::size_t la = bitlen(a);
  const std::size_t lb = bitlen(b);
  const std::size_t s = la + lb;
  return before_total(s) + before_first(s, la) + (a - class_low(la)) * class_size(lb) + (b - class_low(lb));
}

std::pair<Natural, Natural> nat_unpair(const Natural& z) {
  // Total lengths s satisfy before_total(s) ~ s * 2^(s-2); start near msb and adjust.
  std::size_t s = bitlen(z) >= 2 ? bitlen(z) - 2 : 0;
  while (s > 0 && before_total(s) > z) --s;
  while (before_total(s + 1) <= z) ++s;
  Natural r = z - before_total(s);
  std::size_t la = 0;
  if (s == 1) {
    la = r == 0 ? 0 : 1;
  } else if (s >= 2 && r >= pow2(s - 1)) {
    const Natural q = (r - pow2(s - 1)) / pow2(s - 2);
    // the last block (s, 0) is twice as wide as the middle ones
    la = std::min(q.convert_to<std::size_t>() + 1, s);
  }
  r -= before_first(s, la);
  const std::size_t lb = s - la;
  const Natural width = class_size(lb);
  return {class_low(la) + r / width, class_low(lb) + r % width};
}

namespace {

/// Exponent-aligned view of several terms: for each exponent occurring in any
/// of them (descending), the coefficient in each term (0 when absent).
struct Column {
  Monomial key;  // coefficient unused
  std::vector<Natural> coeffs;
};

std::vector<Column> align(std::span<const Ordinal> terms) {
  std::vector<std::size_t> pos(terms.size(), 0);
  std::vector<Column> out;
  for (;;) {
    const Monomial* best = nullptr;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (pos[i] == terms[i].terms().size()) continue;
      const Monomial& m = terms[i].terms()[pos[i]];
      if (best == nullptr || compare_exponents(m, *best) == Cmp::GT) best = &m;
    }
    if (best == nullptr) return out;
    Column col{Monomial{best->atom, best->exponent, 0}, std::vector<Natural>(terms.size())};
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (pos[i] == terms[i].terms().size()) continue;
      const Monomial& m = terms[i].terms()[pos[i]];
      if (compare_exponents(m, col.key) == Cmp::EQ) {
        col.coeffs[i] = m.coeff;
        ++pos[i];
      }
    }
    out.push_back(std::move(col));
  }
}

}  // namespace

// ---------------------------------------------------------------- ordinals

Ordinal pair(const Ordinal& a, const Ordinal& b) {
  const Ordinal both[2] = {a, b};
  std::vector<Monomial> terms;
  for (const auto& col : align(both)) {
    terms.push_back(Monomial{col.key.atom, col.key.exponent, nat_pair(col.coeffs[0], col.coeffs[1])});
  }
  return Ordinal::from_monomials(std::move(terms));
}

std::pair<Ordinal, Ordinal> unpair(const Ordinal& c) {
  std::vector<Monomial> first;
  std::vector<Monomial> second;
  for (const auto& m : c.terms()) {
    auto [x, y] = nat_unpair(m.coeff);
    if (x != 0) first.push_back(Monomial{m.atom, m.exponent, std::move(x)});
    if (y != 0) second.push_back(Monomial{m.atom, m.exponent, std::move(y)});
  }
  return {Ordinal::from_monomials(std::move(first)), Ordinal::from_monomials(std::move(second))};
}

Ordinal encode_tuple(std::span<const Ordinal> items) {
  const std::size_t m = items.size();
  if (m == 0) return Ordinal();
  Ordinal chain = items[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) chain = pair(items[i], chain);
  return pair(Ordinal::natural(m), chain);
}

std::optional<std::vector<Ordinal>> decode_tuple(const Ordinal& code, std::size_t max_items) {
  auto [len, chain] = unpair(code);
  const auto m = len.as_natural();
  if (!m || *m > max_items) return std::nullopt;
  const std::size_t count = m->convert_to<std::size_t>();
  if (count == 0) {
    if (!chain.is_zero()) return std::nullopt;
    return std::vector<Ordinal>{};
  }
  std::vector<Ordinal> out;
  out.reserve(count);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    auto [head, tail] = unpair(chain);
    out.push_back(std::move(head));
    chain = std::move(tail);
  }
  out.push_back(std::move(chain));
  return out;
}

// ---------------------------------------------------------------- patterns

FinitePattern::FinitePattern(std::vector<IndexPair> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

std::optional<Ordinal> FinitePattern::max_first() const {
  if (items_.empty()) return std::nullopt;
  return items_.back().first;
}

bool FinitePattern::contains(const IndexPair& p) const { return std::binary_search(items_.begin(), items_.end(), p); }

std::string FinitePattern::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + print(items_[i].first) + "," + print(items_[i].second) + ")";
  }
  return out + "}";
}

FinitePattern parse_pattern(std::string_view text, const ParseOptions& options) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  bool braced = false;
  if (pos < text.size() && text[pos] == '{') {
    braced = true;
    ++pos;
  }
  std::vector<IndexPair> items;
  for (;;) {
    skip_ws();
    if (pos == text.size() || (braced && text[pos] == '}')) break;
    if (!items.empty()) {
      if (text[pos] != ';' && text[pos] != ',') throw ParseError("expected ';' between pattern items", pos);
      ++pos;
      skip_ws();
    }
    if (pos == text.size() || text[pos] != '(') throw ParseError("expected '(' to open a pattern item", pos);
    const std::size_t open = pos++;
    int depth = 0;
    std::size_t comma = std::string_view::npos;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) {
        if (comma != std::string_view::npos) throw ParseError("pattern item has more than two components", pos);
        comma = pos;
      }
    }
    if (pos == text.size()) throw ParseError("unterminated pattern item", open);
    if (comma == std::string_view::npos) throw ParseError("pattern item needs two components", open);
    IndexPair ip{parse(text.substr(open + 1, comma - open - 1), options), parse(text.substr(comma + 1, pos - comma - 1), options)};
    items.push_back(std::move(ip));
    ++pos;
  }
  if (braced) {
    if (pos == text.size()) throw ParseError("expected '}'", pos);
    ++pos;
    skip_ws();
  }
  if (pos != text.size()) throw ParseError("trailing characters after pattern", pos);
  return FinitePattern(std::move(items));
}

Ordinal encode_pattern(const FinitePattern& pattern, const Ordinal& base) {
  std::vector<Ordinal> items;
  items.reserve(pattern.size());
  for (const auto& [x, i] : pattern) {
    if (compare(x, base) == Cmp::LT) {
      throw DomainError("pattern coordinate " + print(x) + " is below the coding base " + print(base));
    }
    items.push_back(pair(sub_left(base, x), i));
  }
  return encode_tuple(items);
}

FinitePattern decode_pattern(const Ordinal& code, const Ordinal& base) {
  const auto items = decode_tuple(code);
  if (!items) return {};
  std::vector<IndexPair> out;
  out.reserve(items->size());
  for (const auto& item : *items) {
    auto [rel, index] = unpair(item);
    IndexPair p{add(base, rel), std::move(index)};
    if (!out.empty() && !(out.back() < p)) return {};
    out.push_back(std::move(p));
  }
  return FinitePattern(std::move(out));
}

// ---------------------------------------------------------------- blocks

Block make_block(const CardinalLevel& kappa, const Ordinal& delta, int max_level) {
  require_infinite_kappa(kappa, max_level);
  Block b;
  b.kappa = kappa;
  b.base = delta;
  if (delta.is_zero()) {
    b.width = Ordinal::cardinal(kappa.level());
    b.width_level = kappa.level();
    b.end = b.width;
    return b;
  }
  const NormalForm nf = sigma_nf(kappa, delta, max_level);
  if (!nf.rest.is_zero()) {
    throw DomainError("f_delta requires Delta = 0 in the normal form of " + print(delta) + " (Delta = " + print(nf.rest) + ")");
  }
  b.low = gamma(nf);
  b.width = cardinality_ordinal(sigma_eval(kappa, nf.alphas.back(), max_level));
  b.width_level = b.width.max_atom_level();
  b.end = add(delta, b.width);
  return b;
}

namespace {

constexpr int kMaxDecodeDepth = 64;

// Injective map from ordinals below omega_{j+1} into ordinals below omega_j:
// small values are tagged as themselves, larger ones are coded structurally
// (monomial list of (exponent code, coefficient)).
Ordinal compress(const Ordinal& y, int level) {
  if (compare(y, Ordinal::cardinal(level)) == Cmp::LT) return pair(Ordinal(), y);
  std::vector<Ordinal> monos;
  for (const auto& m : y.terms()) {
    const Ordinal exp_code = m.atom != 0 ? pair(Ordinal(), Ordinal::natural(m.atom))
                                         : pair(Ordinal::natural(1), compress(m.exponent, level));
    const Ordinal fields[2] = {exp_code, Ordinal::natural(m.coeff)};
    monos.push_back(encode_tuple(fields));
  }
  return pair(Ordinal::natural(1), encode_tuple(monos));
}

std::optional<Ordinal> decompress(const Ordinal& code, int level, int depth) {
  if (depth > kMaxDecodeDepth) return std::nullopt;
  auto [tag, payload] = unpair(code);
  const Ordinal threshold = Ordinal::cardinal(level);
  if (tag.is_zero()) {
    if (compare(payload, threshold) != Cmp::LT) return std::nullopt;
    return payload;
  }
  if (tag != Ordinal::natural(1)) return std::nullopt;
  const auto monos = decode_tuple(payload);
  if (!monos) return std::nullopt;
  std::vector<Monomial> terms;
  for (const auto& mc : *monos) {
    const auto fields = decode_tuple(mc, 2);
    if (!fields || fields->size() != 2) return std::nullopt;
    const auto coeff = (*fields)[1].as_natural();
    if (!coeff || *coeff == 0) return std::nullopt;
    auto [etag, evalue] = unpair((*fields)[0]);
    if (etag.is_zero()) {
      const auto atom = evalue.as_natural();
      if (!atom || *atom < 1 || *atom > 64) return std::nullopt;
      terms.push_back(Monomial{atom->convert_to<int>(), Ordinal(), *coeff});
    } else if (etag == Ordinal::natural(1)) {
      const auto e = decompress(evalue, level, depth + 1);
      if (!e) return std::nullopt;
      Monomial m = Ordinal::omega_power(*e).terms().front();
      m.coeff = *coeff;
      terms.push_back(std::move(m));
    } else {
      return std::nullopt;
    }
  }
  try {
    Ordinal y = Ordinal::from_monomials(std::move(terms));
    if (compare(y, threshold) == Cmp::LT) return std::nullopt;
    return y;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

Ordinal encode_coordinate(const Block& block, const Ordinal& x) {
  if (compare(x, block.low) == Cmp::LT || compare(x, block.end) != Cmp::LT) {
    throw DomainError("coordinate " + print(x) + " outside [" + print(block.low) + ", " + print(block.end) + ")");
  }
  if (compare(x, block.base) != Cmp::LT) return pair(Ordinal(), sub_left(block.base, x));
  return pair(Ordinal::natural(1), compress(sub_left(block.low, x), block.width_level));
}

std::optional<Ordinal> decode_coordinate(const Block& block, const Ordinal& code) {
  auto [tag, value] = unpair(code);
  if (tag.is_zero()) {
    if (compare(value, block.width) != Cmp::LT) return std::nullopt;
    return add(block.base, value);
  }
  if (tag != Ordinal::natural(1)) return std::nullopt;
  const auto rel = decompress(value, block.width_level, 0);
  if (!rel) return std::nullopt;
  Ordinal x = add(block.low, *rel);
  if (compare(x, block.base) != Cmp::LT) return std::nullopt;
  return x;
}

FinitePattern f_delta(const CardinalLevel& kappa, const Ordinal& delta, const Ordinal& xi, int max_level) {
  const Block block = make_block(kappa, delta, max_level);
  if (compare(xi, block.base) == Cmp::LT || compare(xi, block.end) != Cmp::LT) {
    throw DomainError("xi = " + print(xi) + " outside the domain [" + print(block.base) + ", " + print(block.end) + ")");
  }
  const Ordinal k = Ordinal::cardinal(kappa.level());
  const auto [code, tag] = unpair(sub_left(block.base, xi));
  std::vector<IndexPair> items;
  for (const auto& [coord_code, index] : decode_pattern(code, Ordinal())) {
    if (compare(index, k) != Cmp::LT) return {};
    auto x = decode_coordinate(block, coord_code);
    if (!x) return {};
    items.push_back(IndexPair{std::move(*x), index});
  }
  FinitePattern out(std::move(items));
  if (auto m = out.max_first(); m && compare(*m, xi) != Cmp::LT) return {};
  return out;
}

Ordinal f_delta_witness(const CardinalLevel& kappa, const Ordinal& delta, const FinitePattern& pattern,
                        const WitnessOptions& options, int max_level) {
  const Block block = make_block(kappa, delta, max_level);
  const Ordinal k = Ordinal::cardinal(kappa.level());
  std::vector<IndexPair> coded;
  for (const auto& [x, index] : pattern) {
    if (compare(index, k) != Cmp::LT) throw DomainError("pattern index " + print(index) + " is not below kappa");
    coded.push_back(IndexPair{encode_coordinate(block, x), index});
  }
  const Ordinal code = encode_pattern(FinitePattern(std::move(coded)), Ordinal());
  Ordinal tag;
  auto clear = [&](const Ordinal& floor) {
    if (compare(floor, block.base) == Cmp::LT) return;
    Ordinal t = succ(sub_left(block.base, floor));
    if (compare(t, tag) == Cmp::GT) tag = std::move(t);
  };
  if (auto m = pattern.max_first()) clear(*m);
  if (options.above) clear(*options.above);
  Ordinal xi = add(block.base, pair(code, tag));
  if (compare(xi, block.end) != Cmp::LT) {
    throw DomainError("no witness below delta' = " + print(block.end) + " for the requested lower bound");
  }
  if (options.bound && compare(xi, *options.bound) != Cmp::LT) {
    throw DomainError("witness " + print(xi) + " does not fit below " + print(*options.bound));
  }
  return xi;
}

}  // namespace pibase
