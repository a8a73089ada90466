#pragma once

// Finite topological spaces on at most 64 points, stored as bit masks.
// Everything is derived from the minimal neighbourhoods U_x (the
// intersection of all opens containing x): opens are the unions of U_x's and
// cl(A) = {x : U_x meets A}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pibase {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask bit(int i) { return Mask{1} << i; }

struct SizeCaps {
  int max_points = 16;
  std::size_t max_opens = 1u << 12;
};

class FiniteSpace {
 public:
  /// Strict: `opens` must already be a topology (contain empty set and X,
  /// closed under binary union and intersection).
  static FiniteSpace from_opens(std::vector<std::string> points, const std::vector<Mask>& opens,
                                const SizeCaps& caps = {});
  /// The topology generated by a base (or subbase) family.
  static FiniteSpace from_base(std::vector<std::string> points, const std::vector<Mask>& base,
                               const SizeCaps& caps = {});
  /// From minimal neighbourhoods; requires x in U_x and y in U_x => U_y subset U_x.
  static FiniteSpace from_minimal_neighbourhoods(std::vector<std::string> points, std::vector<Mask> minimal);
  static FiniteSpace discrete(int n);
  static FiniteSpace indiscrete(int n);
  /// {empty, {a}, {a,b}}.
  static FiniteSpace sierpinski();

  int size() const noexcept { return static_cast<int>(points_.size()); }
  Mask full() const noexcept { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& name(int i) const { return points_.at(i); }
  int index_of(const std::string& name) const;

  Mask minimal_neighbourhood(int x) const { return minimal_[x]; }
  /// Smallest open set containing A.
  Mask hull(Mask a) const;
  Mask closure(Mask a) const;
  Mask point_closure(int x) const { return point_closure_[x]; }
  bool is_open(Mask a) const { return hull(a) == a; }
  bool is_closed(Mask a) const { return closure(a) == a; }

  /// All open sets in ascending (popcount, value) order; computed on demand.
  std::vector<Mask> opens(std::size_t cap = 1u << 16) const;
  bool is_regular() const;
  bool is_t0() const;

  std::string show(Mask a) const;
  Mask parse_set(const std::string& names) const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> points_;
  std::vector<Mask> minimal_;
  std::vector<Mask> point_closure_;

  void derive();
};

/// JSON document: {"points": [...], "opens": [[...], ...]} or {"points", "base"}.
FiniteSpace load_space(const nlohmann::json& doc, const SizeCaps& caps = {});
FiniteSpace load_space_file(const std::string& path, const SizeCaps& caps = {});

/// Every labeled topology on n points (n <= 6), in a fixed order.
std::vector<FiniteSpace> enumerate_topologies(int n);

// ---------------------------------------------------------------- invariants

struct PointPiCharacter {
  int point = 0;
  int value = 0;
  std::vector<Mask> witness;  // a local pi-base of that size
};

struct InvariantReport {
  int size = 0;
  int density = 0;
  Mask dense_witness = 0;
  int spread = 0;
  Mask discrete_witness = 0;
  int pi_character = 0;
  std::vector<PointPiCharacter> pi_character_by_point;
  int tightness = 0;
  int free_sequence = 0;
  std::vector<int> free_witness;
  std::optional<int> min_pibase_order;
  std::vector<Mask> pibase_witness;
};

InvariantReport invariants(const FiniteSpace& x, bool with_min_order = false, const SizeCaps& caps = {});
nlohmann::json to_json(const FiniteSpace& x, const InvariantReport& r);

int density(const FiniteSpace& x, Mask* witness = nullptr);
int spread(const FiniteSpace& x, Mask* witness = nullptr);
bool is_discrete_subspace(const FiniteSpace& x, Mask a);
bool is_local_pibase(const FiniteSpace& x, int p, const std::vector<Mask>& family);
bool is_pibase(const FiniteSpace& x, const std::vector<Mask>& family);

/// Every initial segment of `seq` is relatively closed in the set of `seq`.
bool is_left_separated(const FiniteSpace& x, const std::vector<int>& seq);
/// A dense subset of size d(X) enumerated left-separated.
std::vector<int> left_separated_order(const FiniteSpace& x);

bool is_free_sequence(const FiniteSpace& x, const std::vector<int>& seq);
std::vector<int> max_free_sequence(const FiniteSpace& x);

// ---------------------------------------------------------------- cover or free sequence

struct Lemma24Result {
  bool cover = false;         // otherwise a free sequence
  std::vector<Mask> family;   // the covering subfamily
  std::vector<int> sequence;  // the free sequence
  std::vector<Mask> picks;    // U_delta chosen at each step
};

/// Hypothesis: every A subset Y with |A| <= L has U in family with cl(A) subset U.
bool lemma24_hypothesis(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L);
/// Either a subfamily of size <= L covering Y or a free sequence of length L in Y.
Lemma24Result lemma24_extract(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L);
/// Checks the post-condition of whichever branch was returned.
bool lemma24_verify(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L, const Lemma24Result& r);
/// The hardest family meeting the hypothesis: {hull(cl A) : A subset Y, |A| <= L}.
std::vector<Mask> lemma24_hardest_family(const FiniteSpace& x, Mask y, int L);

struct Lemma24Row {
  int L = 0;
  // "no free sequence of length L+1" vs "every Y is covered by <= L members of every admissible family"
  std::size_t both = 0, only_free_bound = 0, only_cover = 0, neither = 0;
  std::optional<std::size_t> free_bound_without_cover;  // index of a counterexample topology
  std::optional<std::size_t> cover_without_free_bound;
};

struct Lemma24Table {
  int n = 0;
  std::size_t topologies = 0;
  std::vector<Lemma24Row> rows;
  std::size_t extract_calls = 0;
  std::size_t extract_failures = 0;
};

Lemma24Table lemma24_bruteforce(int n);
nlohmann::json to_json(const Lemma24Table& t);

// ---------------------------------------------------------------- point order

int point_order(const std::vector<Mask>& family, int p);
int family_order(const FiniteSpace& x, const std::vector<Mask>& family);

struct MinOrderResult {
  int order = 0;
  std::vector<Mask> witness;
};
MinOrderResult min_pibase_order(const FiniteSpace& x, const SizeCaps& caps = {});

struct StarRow {
  std::size_t index = 0;
  int d = 0, s = 0, m = 0;
  bool d_le_ms = false;   // d <= m * s
  bool d_le_m1s = false;  // d <= (m + 1) * s
  bool witness_valid = false;
  std::vector<Mask> witness;
};
std::vector<StarRow> star_table(int n);

}  // namespace pibase
