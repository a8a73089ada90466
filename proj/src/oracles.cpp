#include "pibase/oracles.hpp"

#include <algorithm>

#include "pibase/errors.hpp"
#include "pibase/generate.hpp"

namespace pibase {

// ---------------------------------------------------------------- finite

FiniteSpaceAdapter::FiniteSpaceAdapter(FiniteSpace space)
    : space_(std::move(space)), dense_(left_separated_order(space_)), regular_(space_.is_regular()) {}

std::optional<int> FiniteSpaceAdapter::dense_point(std::size_t xi) const {
  if (xi >= dense_.size()) return std::nullopt;
  return dense_[xi];
}

Mask FiniteSpaceAdapter::points_mask(const std::vector<int>& P) const {
  Mask m = 0;
  for (int p : P) m |= bit(p);
  return m;
}

bool FiniteSpaceAdapter::in_closure_of_points(const int& x, const std::vector<int>& P) const {
  return (space_.closure(points_mask(P)) & bit(x)) != 0;
}

ClosureProbe<int> FiniteSpaceAdapter::probe(const std::vector<Mask>& S, const std::vector<int>& P) const {
  Mask inter = space_.full();
  for (Mask s : S) inter &= space_.closure(s);
  ClosureProbe<int> out;
  out.nonempty = inter != 0;
  out.meets_points = (inter & space_.closure(points_mask(P))) != 0;
  if (out.nonempty) out.pick = __builtin_ctzll(inter);
  return out;
}

std::vector<Mask> FiniteSpaceAdapter::local_pibase(const int& p, const std::vector<int>& P, std::size_t width,
                                                   bool best_effort, std::string* note) const {
  const Mask u = space_.minimal_neighbourhood(p);
  const Mask cl = space_.closure(points_mask(P));
  std::vector<Mask> inside;
  for (Mask o : space_.opens()) {
    if (o != 0 && (o & ~u) == 0) inside.push_back(o);
  }
  std::vector<Mask> out;
  for (Mask o : inside) {
    if (out.size() == width) break;
    if ((space_.closure(o) & cl) == 0) out.push_back(o);
  }
  if (!out.empty()) return out;
  if (!best_effort) {
    throw DomainError("no open set inside U_" + space_.name(p) + " has closure missing cl(P) = " + space_.show(cl) +
                      " (space not regular)");
  }
  if (note) *note = "best effort: disjoint-closure requirement dropped at " + space_.name(p);
  out.push_back(inside.front());
  return out;
}

std::vector<Mask> FiniteSpaceAdapter::test_neighbourhoods(const int& p, std::size_t) const {
  // Every neighbourhood of p contains U_p.
  return {space_.minimal_neighbourhood(p)};
}

bool FiniteSpaceAdapter::is_nonempty_open(const Mask& o) const { return o != 0 && space_.is_open(o); }

bool FiniteSpaceAdapter::closure_meets_points(const Mask& o, const std::vector<int>& P) const {
  return (space_.closure(o) & space_.closure(points_mask(P))) != 0;
}

Mask FiniteSpaceAdapter::open_around(const std::vector<int>& P) const { return space_.hull(points_mask(P)); }

// ---------------------------------------------------------------- rationals

std::optional<RationalLine::Point> RationalLine::dense_point(std::size_t xi) const {
  if (dense_.empty()) dense_.push_back(0);
  while (dense_.size() <= xi) {
    // Calkin-Wilf successor of the last positive entry.
    const Point last = dense_.size() == 1 ? Point(0) : abs(dense_.back());
    Point next;
    if (last == 0) {
      next = 1;
    } else {
      const boost::multiprecision::cpp_int fl = numerator(last) / denominator(last);
      next = Point(1) / (Point(2 * fl) - last + 1);
    }
    dense_.push_back(next);
    dense_.push_back(-next);
  }
  return dense_[xi];
}

bool RationalLine::in_closure_of_points(const Point& x, const std::vector<Point>& P) const {
  return std::find(P.begin(), P.end(), x) != P.end();
}

ClosureProbe<RationalLine::Point> RationalLine::probe(const std::vector<Open>& S, const std::vector<Point>& P) const {
  ClosureProbe<Point> out;
  if (S.empty()) {
    out.nonempty = true;
    out.meets_points = !P.empty();
    out.pick = Point(0);
    return out;
  }
  Point lo = S.front().lo;
  Point hi = S.front().hi;
  for (const auto& s : S) {
    lo = std::max(lo, s.lo);
    hi = std::min(hi, s.hi);
  }
  out.nonempty = lo <= hi;
  if (!out.nonempty) return out;
  out.meets_points = std::any_of(P.begin(), P.end(), [&](const Point& p) { return lo <= p && p <= hi; });
  out.pick = (lo + hi) / 2;
  return out;
}

std::vector<RationalLine::Open> RationalLine::local_pibase(const Point& p, const std::vector<Point>& P,
                                                           std::size_t width, bool, std::string*) const {
  Point r = 1;
  for (const auto& q : P) {
    if (q == p) throw DomainError("point already chosen");
    const Point half = abs(q - p) / 2;
    r = std::min(r, half);
  }
  std::vector<Open> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(width, 1); ++i) {
    out.push_back({p - r, p + r});
    r /= 2;
  }
  return out;
}

std::vector<RationalLine::Open> RationalLine::test_neighbourhoods(const Point& p, std::size_t width) const {
  std::vector<Open> out;
  Point r = 1;
  for (std::size_t j = 0; j < std::max<std::size_t>(width, 1); ++j) {
    out.push_back({p - r, p + r});
    r /= 2;
  }
  return out;
}

bool RationalLine::closure_meets_points(const Open& o, const std::vector<Point>& P) const {
  return std::any_of(P.begin(), P.end(), [&](const Point& p) { return o.lo <= p && p <= o.hi; });
}

RationalLine::Open RationalLine::open_around(const std::vector<Point>& P) const {
  if (P.empty()) return {-1, 1};
  const auto [lo, hi] = std::minmax_element(P.begin(), P.end());
  return {*lo - 1, *hi + 1};
}

std::string RationalLine::show(const Point& p) const {
  if (denominator(p) == 1) return numerator(p).str();
  return numerator(p).str() + "/" + denominator(p).str();
}

std::string RationalLine::show_open(const Open& o) const { return "(" + show(o.lo) + ", " + show(o.hi) + ")"; }

// ---------------------------------------------------------------- ordinals

OrdinalInterval::OrdinalInterval(Ordinal beta) : beta_(std::move(beta)), level_(beta_.max_atom_level()) {
  if (beta_.is_zero()) throw DomainError("the ordinal space [0, beta) needs beta > 0");
}

std::optional<Ordinal> OrdinalInterval::dense_point(std::size_t xi) const {
  if (auto n = beta_.as_natural()) {
    if (xi >= *n) return std::nullopt;
    return Ordinal::natural(xi);
  }
  while (dense_.size() <= xi) {
    for (const auto& t : enumerate_terms(weight_, level_)) {
      if (weight(t) != weight_) continue;
      if (t.is_limit() || compare(t, beta_) != Cmp::LT) continue;
      dense_.push_back(t);
    }
    ++weight_;
  }
  return dense_[xi];
}

bool OrdinalInterval::in_closure_of_points(const Ordinal& x, const std::vector<Ordinal>& P) const {
  return std::find(P.begin(), P.end(), x) != P.end();
}

bool OrdinalInterval::contains(const Open& o, const Ordinal& x) const {
  return (!o.lo || compare(*o.lo, x) == Cmp::LT) && compare(x, o.hi) != Cmp::GT;
}

ClosureProbe<Ordinal> OrdinalInterval::probe(const std::vector<Open>& S, const std::vector<Ordinal>& P) const {
  // Intervals (lo, hi] are clopen, so closures are the sets themselves.
  ClosureProbe<Ordinal> out;
  if (S.empty()) {
    out.nonempty = true;
    out.meets_points = !P.empty();
    out.pick = Ordinal();
    return out;
  }
  Open inter = S.front();
  for (const auto& s : S) {
    if (s.lo && (!inter.lo || compare(*s.lo, *inter.lo) == Cmp::GT)) inter.lo = s.lo;
    if (compare(s.hi, inter.hi) == Cmp::LT) inter.hi = s.hi;
  }
  out.nonempty = !inter.lo || compare(*inter.lo, inter.hi) == Cmp::LT;
  if (!out.nonempty) return out;
  out.meets_points = std::any_of(P.begin(), P.end(), [&](const Ordinal& p) { return contains(inter, p); });
  out.pick = inter.lo ? succ(*inter.lo) : Ordinal();
  return out;
}

std::vector<OrdinalInterval::Open> OrdinalInterval::local_pibase(const Ordinal& p, const std::vector<Ordinal>& P,
                                                                 std::size_t width, bool, std::string*) const {
  if (!p.is_limit()) {
    if (p.is_zero()) return {Open{std::nullopt, p}};
    std::vector<Monomial> t = p.terms();
    if (t.back().coeff == 1) t.pop_back();
    else t.back().coeff -= 1;
    return {Open{Ordinal::from_monomials(std::move(t)), p}};
  }
  std::optional<Ordinal> below;
  for (const auto& q : P) {
    if (compare(q, p) == Cmp::LT && (!below || compare(q, *below) == Cmp::GT)) below = q;
  }
  std::vector<Open> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(width, 1); ++i) {
    Ordinal lo = fundamental(p, Ordinal::natural(i));
    if (below && compare(*below, lo) == Cmp::GT) lo = *below;
    Open o{lo, p};
    if (out.empty() || !(out.back() == o)) out.push_back(std::move(o));
  }
  return out;
}

std::vector<OrdinalInterval::Open> OrdinalInterval::test_neighbourhoods(const Ordinal& p, std::size_t width) const {
  if (!p.is_limit()) return local_pibase(p, {}, 1, false, nullptr);
  std::vector<Open> out;
  for (std::size_t j = 0; j < std::max<std::size_t>(width, 1); ++j) {
    out.push_back({fundamental(p, Ordinal::natural(j)), p});
  }
  return out;
}

bool OrdinalInterval::is_nonempty_open(const Open& o) const {
  if (compare(o.hi, beta_) != Cmp::LT) return false;
  return !o.lo || compare(*o.lo, o.hi) == Cmp::LT;
}

bool OrdinalInterval::subset(const Open& a, const Open& b) const {
  if (compare(a.hi, b.hi) == Cmp::GT) return false;
  if (!b.lo) return true;
  return a.lo && compare(*a.lo, *b.lo) != Cmp::LT;
}

bool OrdinalInterval::closure_meets_points(const Open& o, const std::vector<Ordinal>& P) const {
  return std::any_of(P.begin(), P.end(), [&](const Ordinal& p) { return contains(o, p); });
}

OrdinalInterval::Open OrdinalInterval::open_around(const std::vector<Ordinal>& P) const {
  Ordinal hi;
  for (const auto& p : P) {
    if (compare(p, hi) == Cmp::GT) hi = p;
  }
  return {std::nullopt, hi};
}

std::string OrdinalInterval::show_open(const Open& o) const {
  if (!o.lo) return "[0, " + print(o.hi) + "]";
  return "(" + print(*o.lo) + ", " + print(o.hi) + "]";
}

}  // namespace pibase
