#include "pibase/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "pibase/errors.hpp"

namespace pibase {

struct Ordinal::Node {
  std::vector<Monomial> terms;
  int max_level = 0;
};

struct OrdinalAccess {
  static Ordinal make(std::vector<Monomial> terms) { return Ordinal::make(std::move(terms)); }
};

namespace {

const std::vector<Monomial> kNoTerms;

Ordinal make(std::vector<Monomial> terms) { return OrdinalAccess::make(std::move(terms)); }

Cmp compare_lists(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (Cmp c = compare_exponents(a[i], b[i]); c != Cmp::EQ) return c;
    if (a[i].coeff != b[i].coeff) return a[i].coeff < b[i].coeff ? Cmp::LT : Cmp::GT;
  }
  if (a.size() == b.size()) return Cmp::EQ;
  return a.size() < b.size() ? Cmp::LT : Cmp::GT;
}

}  // namespace

Cmp compare_exponents(const Monomial& a, const Monomial& b) {
  if (a.atom != 0 && b.atom != 0) {
    if (a.atom == b.atom) return Cmp::EQ;
    return a.atom < b.atom ? Cmp::LT : Cmp::GT;
  }
  if (a.atom == 0 && b.atom == 0) return compare(a.exponent, b.exponent);
  // One side is omega_k, which is the one-monomial list (atom k, 1); the other
  // exponent's list is structurally smaller, so the recursion terminates.
  const Monomial atom_mono{a.atom != 0 ? a.atom : b.atom, Ordinal(), 1};
  const std::vector<Monomial> atom_list{atom_mono};
  if (a.atom != 0) return compare_lists(atom_list, b.exponent.terms());
  return compare_lists(a.exponent.terms(), atom_list);
}

namespace {

Monomial monomial(const Ordinal& e, Natural c) {
  const auto& t = e.terms();
  if (t.size() == 1 && t[0].atom != 0 && t[0].coeff == 1) return Monomial{t[0].atom, Ordinal(), std::move(c)};
  return Monomial{0, e, std::move(c)};
}

}  // namespace

// ---------------------------------------------------------------- CardinalLevel

CardinalLevel CardinalLevel::successor() const {
  if (finite_) return finite(count_ + 1);
  return aleph(level_ + 1);
}

std::string CardinalLevel::str() const {
  if (finite_) return count_.str();
  return "aleph_" + std::to_string(level_);
}

std::strong_ordering operator<=>(const CardinalLevel& a, const CardinalLevel& b) {
  if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.finite_) {
    if (a.count_ == b.count_) return std::strong_ordering::equal;
    return a.count_ < b.count_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.level_ <=> b.level_;
}

// ---------------------------------------------------------------- Ordinal

Ordinal Ordinal::make(std::vector<Monomial> terms) {
  if (terms.empty()) return Ordinal();
  auto node = std::make_shared<Node>();
  for (const auto& m : terms) {
    node->max_level = std::max({node->max_level, m.atom, m.exponent.max_atom_level()});
  }
  node->terms = std::move(terms);
  return Ordinal(std::move(node));
}

Ordinal Ordinal::natural(Natural n) {
  if (n < 0) throw DomainError("natural numbers are non-negative");
  if (n == 0) return Ordinal();
  return make({Monomial{0, Ordinal(), std::move(n)}});
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::cardinal(int level) {
  if (level < 0) throw DomainError("cardinal level must be non-negative");
  if (level == 0) return omega();
  return make({Monomial{level, Ordinal(), 1}});
}

Ordinal Ordinal::cardinal(const CardinalLevel& c) {
  if (c.is_finite()) return natural(c.count());
  return cardinal(c.level());
}

Ordinal Ordinal::omega_power(const Ordinal& e, Natural c) {
  if (c < 0) throw DomainError("coefficients are non-negative");
  if (c == 0) return Ordinal();
  return make({monomial(e, std::move(c))});
}

Ordinal Ordinal::from_monomials(std::vector<Monomial> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& m = terms[i];
    if (m.coeff < 1) throw DomainError("monomial coefficients must be >= 1");
    if (m.atom < 0) throw DomainError("atom levels must be >= 1");
    if (m.atom != 0 && !m.exponent.is_zero()) throw DomainError("atom monomial carries an exponent term");
    if (m.atom == 0) {
      const auto& t = m.exponent.terms();
      if (t.size() == 1 && t[0].atom != 0 && t[0].coeff == 1) {
        throw DomainError("exponent omega_k must be written as the atom");
      }
    }
    if (i > 0 && compare_exponents(terms[i - 1], m) != Cmp::GT) {
      throw DomainError("monomial exponents must be strictly decreasing");
    }
  }
  return make(std::move(terms));
}

const std::vector<Monomial>& Ordinal::terms() const noexcept { return node_ ? node_->terms : kNoTerms; }

int Ordinal::max_atom_level() const noexcept { return node_ ? node_->max_level : 0; }

bool Ordinal::is_finite() const noexcept {
  return !node_ || (node_->terms.size() == 1 && node_->terms[0].is_finite());
}

bool Ordinal::is_successor() const noexcept { return node_ && node_->terms.back().is_finite(); }

std::optional<Natural> Ordinal::as_natural() const {
  if (!node_) return Natural(0);
  if (is_finite()) return node_->terms[0].coeff;
  return std::nullopt;
}

std::string Ordinal::str() const { return print(*this); }

bool operator==(const Ordinal& a, const Ordinal& b) {
  if (a.node_ == b.node_) return true;
  return compare(a, b) == Cmp::EQ;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  switch (compare(a, b)) {
    case Cmp::LT: return std::strong_ordering::less;
    case Cmp::GT: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

Ordinal Monomial::exponent_value() const { return atom != 0 ? Ordinal::cardinal(atom) : exponent; }

// ---------------------------------------------------------------- arithmetic

Cmp compare(const Ordinal& a, const Ordinal& b) { return compare_lists(a.terms(), b.terms()); }

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::LT: return "LT";
    case Cmp::EQ: return "EQ";
    default: return "GT";
  }
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const auto& lead = b.terms().front();
  std::vector<Monomial> out;
  for (const auto& m : a.terms()) {
    const Cmp c = compare_exponents(m, lead);
    if (c == Cmp::GT) {
      out.push_back(m);
    } else if (c == Cmp::EQ) {
      out.push_back(Monomial{m.atom, m.exponent, m.coeff + lead.coeff});
      out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
      return make(std::move(out));
    } else {
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return make(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& lead = a.terms().front();
  const Ordinal lead_exp = lead.exponent_value();
  std::vector<Monomial> out;
  for (const auto& mb : b.terms()) {
    if (mb.is_finite()) {
      out.push_back(Monomial{lead.atom, lead.exponent, lead.coeff * mb.coeff});
      out.insert(out.end(), a.terms().begin() + 1, a.terms().end());
    } else {
      out.push_back(monomial(add(lead_exp, mb.exponent_value()), mb.coeff));
    }
  }
  return make(std::move(out));
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal::natural(1)); }

Ordinal sub_left(const Ordinal& g, const Ordinal& d) {
  if (compare(g, d) == Cmp::GT) throw DomainError("sub_left requires g <= d (got " + print(g) + " > " + print(d) + ")");
  const auto& gt = g.terms();
  const auto& dt = d.terms();
  for (std::size_t i = 0; i < dt.size(); ++i) {
    if (i == gt.size()) return make(std::vector<Monomial>(dt.begin() + static_cast<std::ptrdiff_t>(i), dt.end()));
    const Cmp c = compare_exponents(gt[i], dt[i]);
    if (c == Cmp::EQ && gt[i].coeff == dt[i].coeff) continue;
    if (c == Cmp::EQ) {
      std::vector<Monomial> out{Monomial{dt[i].atom, dt[i].exponent, dt[i].coeff - gt[i].coeff}};
      out.insert(out.end(), dt.begin() + static_cast<std::ptrdiff_t>(i) + 1, dt.end());
      return make(std::move(out));
    }
    // g's remaining monomials are smaller and get absorbed.
    return make(std::vector<Monomial>(dt.begin() + static_cast<std::ptrdiff_t>(i), dt.end()));
  }
  return Ordinal();
}

CardinalLevel cardinality(const Ordinal& a) {
  if (a.is_finite()) return CardinalLevel::finite(*a.as_natural());
  return CardinalLevel::aleph(a.max_atom_level());
}

Ordinal cardinality_ordinal(const Ordinal& a) {
  if (a.is_finite()) return a;
  return Ordinal::cardinal(a.max_atom_level());
}

Ordinal cofinality(const Ordinal& a) {
  if (a.is_zero()) return Ordinal();
  if (a.is_successor()) return Ordinal::natural(1);
  const auto& last = a.terms().back();
  if (last.atom != 0) return Ordinal::cardinal(last.atom);
  if (last.exponent.is_successor()) return Ordinal::omega();
  return cofinality(last.exponent);
}

Division div_by_cardinal(const Ordinal& a, const CardinalLevel& k) {
  if (k.is_finite()) throw DomainError("div_by_cardinal requires an infinite cardinal");
  const Ordinal kappa = Ordinal::cardinal(k.level());
  const Monomial& kmono = kappa.terms().front();
  const Ordinal kexp = kmono.exponent_value();
  std::vector<Monomial> quotient;
  std::vector<Monomial> remainder;
  for (const auto& m : a.terms()) {
    if (compare_exponents(m, kmono) != Cmp::LT) {
      quotient.push_back(monomial(sub_left(kexp, m.exponent_value()), m.coeff));
    } else {
      remainder.push_back(m);
    }
  }
  return Division{make(std::move(quotient)), make(std::move(remainder))};
}

Ordinal fundamental(const Ordinal& a, const Ordinal& z) {
  if (!a.is_limit()) throw DomainError("fundamental sequences exist only for limit ordinals");
  if (compare(z, cofinality(a)) != Cmp::LT) throw DomainError("fundamental sequence index must be below cf(a)");
  std::vector<Monomial> prefix(a.terms().begin(), a.terms().end() - 1);
  const Monomial& last = a.terms().back();
  if (last.coeff > 1) prefix.push_back(Monomial{last.atom, last.exponent, last.coeff - 1});
  const Ordinal rho = make(std::move(prefix));
  if (last.atom != 0) return add(rho, z);
  const Ordinal& e = last.exponent;
  if (e.is_successor()) {
    std::vector<Monomial> et = e.terms();
    if (et.back().coeff == 1) {
      et.pop_back();
    } else {
      et.back().coeff -= 1;
    }
    return add(rho, mul(Ordinal::omega_power(make(std::move(et))), z));
  }
  return add(rho, Ordinal::omega_power(fundamental(e, z)));
}

namespace detail {

namespace {
constexpr unsigned kMaxFiniteExponent = 4096;

unsigned small_exponent(const Natural& m) {
  if (m > kMaxFiniteExponent) throw DomainError("finite exponent too large");
  return m.convert_to<unsigned>();
}
}  // namespace

Ordinal power(const Ordinal& base, const Ordinal& exp) {
  if (exp.is_zero()) return Ordinal::natural(1);
  if (base.is_zero()) return Ordinal();
  if (base == Ordinal::natural(1)) return base;
  const Division split = div_by_cardinal(exp, CardinalLevel::aleph(0));
  const unsigned m = small_exponent(*split.remainder.as_natural());
  if (base.is_finite()) {
    const Natural n = *base.as_natural();
    Natural finite_part = boost::multiprecision::pow(n, m);
    if (split.quotient.is_zero()) return Ordinal::natural(finite_part);
    return mul(Ordinal::omega_power(split.quotient), Ordinal::natural(finite_part));
  }
  Ordinal result = Ordinal::natural(1);
  if (!split.quotient.is_zero()) {
    const Ordinal lead_exp = base.terms().front().exponent_value();
    result = Ordinal::omega_power(mul(mul(lead_exp, Ordinal::omega()), split.quotient));
  }
  for (unsigned i = 0; i < m; ++i) result = mul(result, base);
  return result;
}

}  // namespace detail

// ---------------------------------------------------------------- parse/print

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Ordinal parse_all() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Ordinal v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ordinal expr() {
    Ordinal v = term();
    while (accept('+')) v = add(v, term());
    return v;
  }

  Ordinal term() {
    Ordinal v = factor();
    while (accept('*')) v = mul(v, factor());
    return v;
  }

  Ordinal factor() {
    Ordinal base = primary();
    if (accept('^')) return detail::power(base, factor());
    return base;
  }

  Ordinal primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ordinal v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Ordinal::natural(Natural(std::string(text_.substr(start, pos_ - start))));
    }
    if (c == 'w') {
      const std::size_t start = pos_++;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view lv = text_.substr(digits, pos_ - digits);
        if (lv.size() > 6) throw LevelOverflow("atom level too large at position " + std::to_string(start));
        const int level = std::stoi(std::string(lv));
        if (level < 1) throw ParseError("atom levels start at w1", start);
        if (level > options_.max_level) {
          throw LevelOverflow("atom w" + std::to_string(level) + " above maxLevel " +
                              std::to_string(options_.max_level) + " at position " + std::to_string(start));
        }
        return Ordinal::cardinal(level);
      }
      return Ordinal::omega();
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

bool is_single_token(const Ordinal& e) {
  if (e.is_finite()) return true;
  const auto& t = e.terms();
  return t.size() == 1 && t[0].coeff == 1 && (t[0].atom != 0 || e == Ordinal::omega());
}

std::string print_monomial(const Monomial& m) {
  std::string s;
  if (m.is_finite()) return m.coeff.str();
  if (m.atom != 0) {
    s = "w" + std::to_string(m.atom);
  } else if (m.exponent == Ordinal::natural(1)) {
    s = "w";
  } else if (is_single_token(m.exponent)) {
    s = "w^" + print(m.exponent);
  } else {
    s = "w^(" + print(m.exponent) + ")";
  }
  if (m.coeff != 1) s += "*" + m.coeff.str();
  return s;
}

}  // namespace

Ordinal parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).parse_all(); }

std::string print(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& m : a.terms()) {
    if (!out.empty()) out += " + ";
    out += print_monomial(m);
  }
  return out;
}

void check_level(const Ordinal& a, int max_level) {
  if (a.max_atom_level() > max_level) {
    throw LevelOverflow("term uses atom w" + std::to_string(a.max_atom_level()) + " above maxLevel " +
                        std::to_string(max_level));
  }
}

int max_level_from_env() {
  const char* v = std::getenv("PIBASE_MAXLEVEL");
  if (v == nullptr || *v == '\0') return kDefaultMaxLevel;
  char* end = nullptr;
  const long level = std::strtol(v, &end, 10);
  if (*end != '\0' || level < 1 || level > 64) throw DomainError("PIBASE_MAXLEVEL must be an integer in [1, 64]");
  return static_cast<int>(level);
}

}  // namespace pibase
