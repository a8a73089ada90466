#pragma once

// Space oracles for the pi-base builder. Each exposes points, open sets and
// the handful of closure computations the construction needs, exactly:
//   * FiniteSpaceAdapter  - a FiniteSpace, opens as masks;
//   * RationalLine        - Q with open intervals, closures by endpoints;
//   * OrdinalInterval     - [0, beta) in the order topology, opens (lo, hi].

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pibase/finite_space.hpp"
#include "pibase/ordinal.hpp"

namespace pibase {

/// Result of probing the intersection of closures of a family of opens
/// against a finite point set.
template <class Point>
struct ClosureProbe {
  bool nonempty = false;
  bool meets_points = false;   // the intersection meets cl(P)
  std::optional<Point> pick;   // some point of the intersection
};

class FiniteSpaceAdapter {
 public:
  using Point = int;
  using Open = Mask;

  explicit FiniteSpaceAdapter(FiniteSpace space);

  std::string kind() const { return "finite"; }
  const FiniteSpace& space() const noexcept { return space_; }
  bool regular() const { return regular_; }
  /// The largest point pi-character, which is 1 for a nonempty finite space.
  std::size_t default_kappa_analog() const { return 1; }

  std::optional<Point> dense_point(std::size_t xi) const;
  bool in_closure_of_points(const Point& x, const std::vector<Point>& P) const;
  ClosureProbe<Point> probe(const std::vector<Open>& S, const std::vector<Point>& P) const;
  /// Up to `width` nonempty opens inside U_p whose closures miss cl(P);
  /// with best_effort the disjointness is dropped when nothing qualifies.
  std::vector<Open> local_pibase(const Point& p, const std::vector<Point>& P, std::size_t width,
                                 bool best_effort, std::string* note) const;
  std::vector<Open> test_neighbourhoods(const Point& p, std::size_t width) const;
  bool is_nonempty_open(const Open& o) const;
  bool subset(const Open& a, const Open& b) const { return (a & ~b) == 0; }
  bool closure_meets_points(const Open& o, const std::vector<Point>& P) const;
  Open open_around(const std::vector<Point>& P) const;

  std::string show(const Point& p) const { return space_.name(p); }
  std::string show_open(const Open& o) const { return space_.show(o); }

 private:
  FiniteSpace space_;
  std::vector<int> dense_;
  bool regular_;

  Mask points_mask(const std::vector<Point>& P) const;
};

class RationalLine {
 public:
  using Point = boost::multiprecision::cpp_rational;
  struct Open {
    Point lo;
    Point hi;
    friend bool operator==(const Open&, const Open&) = default;
  };

  std::string kind() const { return "rationals"; }
  bool regular() const { return true; }
  std::size_t default_kappa_analog() const { return 4; }

  /// 0, then q_1, -q_1, q_2, -q_2, ... along the Calkin-Wilf sequence.
  std::optional<Point> dense_point(std::size_t xi) const;
  bool in_closure_of_points(const Point& x, const std::vector<Point>& P) const;
  ClosureProbe<Point> probe(const std::vector<Open>& S, const std::vector<Point>& P) const;
  std::vector<Open> local_pibase(const Point& p, const std::vector<Point>& P, std::size_t width,
                                 bool best_effort, std::string* note) const;
  std::vector<Open> test_neighbourhoods(const Point& p, std::size_t width) const;
  bool is_nonempty_open(const Open& o) const { return o.lo < o.hi; }
  bool subset(const Open& a, const Open& b) const { return b.lo <= a.lo && a.hi <= b.hi; }
  bool closure_meets_points(const Open& o, const std::vector<Point>& P) const;
  Open open_around(const std::vector<Point>& P) const;

  std::string show(const Point& p) const;
  std::string show_open(const Open& o) const;

 private:
  mutable std::vector<Point> dense_;
};

class OrdinalInterval {
 public:
  using Point = Ordinal;
  /// (lo, hi], or [0, hi] when lo is absent.
  struct Open {
    std::optional<Ordinal> lo;
    Ordinal hi;
    friend bool operator==(const Open&, const Open&) = default;
  };

  /// The space [0, beta); beta > 0.
  explicit OrdinalInterval(Ordinal beta);

  std::string kind() const { return "ordinal:" + print(beta_); }
  const Ordinal& beta() const noexcept { return beta_; }
  bool regular() const { return true; }
  std::size_t default_kappa_analog() const { return 2; }

  /// Isolated points below beta, by term weight then value.
  std::optional<Point> dense_point(std::size_t xi) const;
  bool in_closure_of_points(const Point& x, const std::vector<Point>& P) const;
  ClosureProbe<Point> probe(const std::vector<Open>& S, const std::vector<Point>& P) const;
  std::vector<Open> local_pibase(const Point& p, const std::vector<Point>& P, std::size_t width,
                                 bool best_effort, std::string* note) const;
  std::vector<Open> test_neighbourhoods(const Point& p, std::size_t width) const;
  bool is_nonempty_open(const Open& o) const;
  bool subset(const Open& a, const Open& b) const;
  bool closure_meets_points(const Open& o, const std::vector<Point>& P) const;
  Open open_around(const std::vector<Point>& P) const;

  std::string show(const Point& p) const { return print(p); }
  std::string show_open(const Open& o) const;

 private:
  Ordinal beta_;
  int level_;
  mutable std::vector<Point> dense_;
  mutable std::size_t weight_ = 0;

  bool contains(const Open& o, const Ordinal& x) const;
};

}  // namespace pibase
