#include "pibase/finite_space.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pibase/errors.hpp"

namespace pibase {

namespace {

bool by_size_then_value(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

std::vector<std::string> letter_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
  }
  return out;
}

void check_points(const std::vector<std::string>& points) {
  if (points.size() > 64) throw SizeCapExceeded("finite spaces are limited to 64 points");
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (p.empty()) throw DomainError("point names must be non-empty");
    if (!seen.insert(p).second) throw DomainError("duplicate point name '" + p + "'");
  }
}

// Calls f(mask) for every subset of `universe` with exactly k elements.
void for_each_subset_of_size(Mask universe, int k, const std::function<bool(Mask)>& f) {
  std::vector<int> idx;
  for (int i = 0; i < 64; ++i) {
    if (universe & bit(i)) idx.push_back(i);
  }
  const int n = static_cast<int>(idx.size());
  if (k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    Mask m = 0;
    for (int i : c) m |= bit(idx[i]);
    if (!f(m)) return;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

std::vector<int> members(Mask m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i) {
    if (m & bit(i)) out.push_back(i);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- spaces

void FiniteSpace::derive() {
  const int n = size();
  point_closure_.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (minimal_[y] & bit(x)) point_closure_[x] |= bit(y);
    }
  }
}

FiniteSpace FiniteSpace::from_minimal_neighbourhoods(std::vector<std::string> points, std::vector<Mask> minimal) {
  check_points(points);
  if (minimal.size() != points.size()) throw DomainError("one minimal neighbourhood per point is required");
  const int n = static_cast<int>(points.size());
  for (int x = 0; x < n; ++x) {
    if (!(minimal[x] & bit(x))) throw DomainError("U_x must contain x");
    for (int y : members(minimal[x])) {
      if (y >= n) throw DomainError("minimal neighbourhood mentions an unknown point");
      if ((minimal[y] & ~minimal[x]) != 0) throw DomainError("minimal neighbourhoods are not transitive");
    }
  }
  FiniteSpace s;
  s.points_ = std::move(points);
  s.minimal_ = std::move(minimal);
  s.derive();
  return s;
}

FiniteSpace FiniteSpace::from_opens(std::vector<std::string> points, const std::vector<Mask>& opens,
                                    const SizeCaps& caps) {
  check_points(points);
  const int n = static_cast<int>(points.size());
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  if (opens.size() > caps.max_opens) throw SizeCapExceeded("open family larger than the size cap");
  std::unordered_set<Mask> family(opens.begin(), opens.end());
  for (Mask o : family) {
    if (o & ~all) throw DomainError("open set mentions an unknown point");
  }
  if (!family.count(0)) throw DomainError("not a topology: the empty set is missing");
  if (!family.count(all)) throw DomainError("not a topology: the whole space is missing");
  for (Mask a : family) {
    for (Mask b : family) {
      if (!family.count(a | b)) throw DomainError("not a topology: not closed under union");
      if (!family.count(a & b)) throw DomainError("not a topology: not closed under intersection");
    }
  }
  std::vector<Mask> minimal(n, all);
  for (Mask o : family) {
    for (int x : members(o)) minimal[x] &= o;
  }
  return from_minimal_neighbourhoods(std::move(points), std::move(minimal));
}

FiniteSpace FiniteSpace::from_base(std::vector<std::string> points, const std::vector<Mask>& base, const SizeCaps&) {
  check_points(points);
  const int n = static_cast<int>(points.size());
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  std::vector<Mask> minimal(n, all);
  for (Mask b : base) {
    if (b & ~all) throw DomainError("base set mentions an unknown point");
    for (int x : members(b)) minimal[x] &= b;
  }
  return from_minimal_neighbourhoods(std::move(points), std::move(minimal));
}

FiniteSpace FiniteSpace::discrete(int n) {
  std::vector<Mask> minimal;
  for (int i = 0; i < n; ++i) minimal.push_back(bit(i));
  return from_minimal_neighbourhoods(letter_names(n), std::move(minimal));
}

FiniteSpace FiniteSpace::indiscrete(int n) {
  const Mask all = bit(n) - 1;
  return from_minimal_neighbourhoods(letter_names(n), std::vector<Mask>(n, all));
}

FiniteSpace FiniteSpace::sierpinski() { return from_minimal_neighbourhoods({"a", "b"}, {0b01, 0b11}); }

int FiniteSpace::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (points_[i] == name) return i;
  }
  throw DomainError("unknown point '" + name + "'");
}

Mask FiniteSpace::hull(Mask a) const {
  Mask out = 0;
  for (int x : members(a)) out |= minimal_[x];
  return out;
}

Mask FiniteSpace::closure(Mask a) const {
  Mask out = 0;
  for (int x : members(a)) out |= point_closure_[x];
  return out;
}

std::vector<Mask> FiniteSpace::opens(std::size_t cap) const {
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int x = 0; x < size(); ++x) {
      const Mask next = queue[head] | minimal_[x];
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw SizeCapExceeded("more than " + std::to_string(cap) + " open sets");
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end(), by_size_then_value);
  return queue;
}

bool FiniteSpace::is_regular() const {
  // x outside a closed F must have U_x disjoint from the smallest open set around F.
  for (Mask o : opens()) {
    const Mask f = full() & ~o;
    const Mask around = hull(f);
    for (int x : members(o)) {
      if (minimal_[x] & around) return false;
    }
  }
  return true;
}

bool FiniteSpace::is_t0() const {
  for (int x = 0; x < size(); ++x) {
    for (int y = x + 1; y < size(); ++y) {
      if (minimal_[x] == minimal_[y]) return false;
    }
  }
  return true;
}

std::string FiniteSpace::show(Mask a) const {
  std::string out = "{";
  bool first = true;
  for (int x : members(a)) {
    if (!first) out += ",";
    out += points_.at(x);
    first = false;
  }
  return out + "}";
}

Mask FiniteSpace::parse_set(const std::string& names) const {
  Mask out = 0;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out |= bit(index_of(cur));
    cur.clear();
  };
  for (char c : names) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

nlohmann::json FiniteSpace::to_json() const {
  nlohmann::json opens_json = nlohmann::json::array();
  for (Mask o : opens()) {
    nlohmann::json set = nlohmann::json::array();
    for (int x : members(o)) set.push_back(points_[x]);
    opens_json.push_back(std::move(set));
  }
  return {{"points", points_}, {"opens", std::move(opens_json)}};
}

FiniteSpace load_space(const nlohmann::json& doc, const SizeCaps& caps) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw DomainError("malformed space document: expected an object with a 'points' array");
  }
  std::vector<std::string> points;
  for (const auto& p : doc["points"]) {
    if (!p.is_string()) throw DomainError("malformed space document: point names must be strings");
    points.push_back(p.get<std::string>());
  }
  check_points(points);
  if (static_cast<int>(points.size()) > caps.max_points) {
    throw SizeCapExceeded("space has " + std::to_string(points.size()) + " points; cap is " +
                          std::to_string(caps.max_points));
  }
  const bool has_opens = doc.contains("opens");
  const bool has_base = doc.contains("base");
  if (has_opens == has_base) throw DomainError("malformed space document: give exactly one of 'opens' or 'base'");
  const auto& family_json = has_opens ? doc["opens"] : doc["base"];
  if (!family_json.is_array()) throw DomainError("malformed space document: family must be an array of arrays");
  std::vector<Mask> family;
  for (const auto& set : family_json) {
    if (!set.is_array()) throw DomainError("malformed space document: family members must be arrays");
    Mask m = 0;
    for (const auto& name : set) {
      if (!name.is_string()) throw DomainError("malformed space document: set members must be point names");
      const auto it = std::find(points.begin(), points.end(), name.get<std::string>());
      if (it == points.end()) throw DomainError("unknown point '" + name.get<std::string>() + "' in family");
      m |= bit(static_cast<int>(it - points.begin()));
    }
    family.push_back(m);
  }
  return has_opens ? FiniteSpace::from_opens(std::move(points), family, caps)
                   : FiniteSpace::from_base(std::move(points), family, caps);
}

FiniteSpace load_space_file(const std::string& path, const SizeCaps& caps) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open space document '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("malformed space document '" + path + "': " + e.what());
  }
  return load_space(doc, caps);
}

std::vector<FiniteSpace> enumerate_topologies(int n) {
  if (n < 0 || n > 6) throw SizeCapExceeded("topology enumeration supports n <= 6");
  std::vector<FiniteSpace> out;
  const auto names = letter_names(n);
  std::vector<Mask> u(n, 0);
  // A preorder is a choice of U_x per point with x in U_x and
  // y in U_x => U_y subset U_x; each pair is checked once its later point is assigned.
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      out.push_back(FiniteSpace::from_minimal_neighbourhoods(names, u));
      return;
    }
    const Mask others = (bit(n) - 1) & ~bit(x);
    for (Mask extra = 0;; extra = (extra - others) & others) {
      const Mask ux = extra | bit(x);
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) {
        if ((ux & bit(y)) && (u[y] & ~ux)) ok = false;
        if ((u[y] & bit(x)) && (ux & ~u[y])) ok = false;
      }
      if (ok) {
        u[x] = ux;
        rec(x + 1);
      }
      if (extra == others) break;
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- invariants

int density(const FiniteSpace& x, Mask* witness) {
  const int n = x.size();
  for (int k = 0; k <= n; ++k) {
    Mask found = 0;
    bool ok = false;
    for_each_subset_of_size(x.full(), k, [&](Mask d) {
      if (x.closure(d) == x.full()) {
        found = d;
        ok = true;
        return false;
      }
      return true;
    });
    if (ok) {
      if (witness) *witness = found;
      return k;
    }
  }
  throw std::logic_error("density search found no dense set");
}

bool is_discrete_subspace(const FiniteSpace& x, Mask a) {
  for (int p : members(a)) {
    if ((x.minimal_neighbourhood(p) & a) != bit(p)) return false;
  }
  return true;
}

int spread(const FiniteSpace& x, Mask* witness) {
  for (int k = x.size(); k >= 0; --k) {
    Mask found = 0;
    bool ok = false;
    for_each_subset_of_size(x.full(), k, [&](Mask d) {
      if (is_discrete_subspace(x, d)) {
        found = d;
        ok = true;
        return false;
      }
      return true;
    });
    if (ok) {
      if (witness) *witness = found;
      return k;
    }
  }
  return 0;
}

bool is_local_pibase(const FiniteSpace& x, int p, const std::vector<Mask>& family) {
  bool inside = false;
  for (Mask b : family) {
    if (b == 0 || !x.is_open(b)) return false;
    if ((b & ~x.minimal_neighbourhood(p)) == 0) inside = true;
  }
  // U_p is the smallest neighbourhood of p, so it is the only one to test.
  return inside;
}

bool is_pibase(const FiniteSpace& x, const std::vector<Mask>& family) {
  for (Mask b : family) {
    if (b == 0 || !x.is_open(b)) return false;
  }
  for (int p = 0; p < x.size(); ++p) {
    const Mask u = x.minimal_neighbourhood(p);
    if (std::none_of(family.begin(), family.end(), [&](Mask b) { return (b & ~u) == 0; })) return false;
  }
  return true;
}

namespace {

PointPiCharacter point_pi_character(const FiniteSpace& x, int p, const std::vector<Mask>& nonempty_opens) {
  // The empty family is never a local pi-base of a point, and any single
  // nonempty open inside U_p is one; the search is over singletons in order.
  for (Mask b : nonempty_opens) {
    if (is_local_pibase(x, p, {b})) return {p, 1, {b}};
  }
  throw std::logic_error("no local pi-base found");
}

int tightness(const FiniteSpace& x) {
  int t = 0;
  for (Mask a = 0;; ++a) {
    const Mask cl = x.closure(a);
    for (int p : members(cl)) {
      int need = 0;
      for (int k = 0; k <= popcount(a); ++k) {
        bool ok = false;
        for_each_subset_of_size(a, k, [&](Mask b) {
          if (x.closure(b) & bit(p)) {
            ok = true;
            return false;
          }
          return true;
        });
        if (ok) {
          need = k;
          break;
        }
      }
      t = std::max(t, need);
    }
    if (a == x.full()) break;
  }
  return t;
}

}  // namespace

bool is_left_separated(const FiniteSpace& x, const std::vector<int>& seq) {
  Mask prefix = 0;
  for (int p : seq) {
    if (x.closure(prefix) & bit(p)) return false;
    prefix |= bit(p);
  }
  return true;
}

std::vector<int> left_separated_order(const FiniteSpace& x) {
  Mask d = 0;
  density(x, &d);
  // If z lies in U_y (z != y) then U_z is strictly smaller, so listing by
  // decreasing |U| keeps every point outside the closure of its predecessors.
  std::vector<int> seq = members(d);
  std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
    return popcount(x.minimal_neighbourhood(a)) > popcount(x.minimal_neighbourhood(b));
  });
  if (!is_left_separated(x, seq)) throw std::logic_error("dense set admits no left-separated order");
  return seq;
}

bool is_free_sequence(const FiniteSpace& x, const std::vector<int>& seq) {
  for (std::size_t d = 0; d <= seq.size(); ++d) {
    Mask head = 0;
    Mask tail = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) (i < d ? head : tail) |= bit(seq[i]);
    if (x.closure(head) & x.closure(tail)) return false;
  }
  return true;
}

std::vector<int> max_free_sequence(const FiniteSpace& x) {
  const int n = x.size();
  std::vector<int> best;
  std::vector<int> seq;
  // cl_head[d] = cl(seq[0..d)), cl_tail[d] = cl(seq[d..)); extending the
  // sequence only grows the tails, so a violated split stays violated.
  std::vector<Mask> cl_head{0};
  std::vector<Mask> cl_tail{0};
  std::function<void(Mask)> rec = [&](Mask used) {
    if (seq.size() > best.size()) best = seq;
    if (static_cast<int>(seq.size()) + (n - popcount(used)) <= static_cast<int>(best.size())) return;
    for (int p = 0; p < n; ++p) {
      if (used & bit(p)) continue;
      const Mask pc = x.point_closure(p);
      bool ok = true;
      for (std::size_t d = 1; d <= seq.size() && ok; ++d) {
        if (cl_head[d] & (cl_tail[d] | pc)) ok = false;
      }
      if (!ok) continue;
      const auto saved_tail = cl_tail;
      for (auto& t : cl_tail) t |= pc;
      cl_head.push_back(cl_head.back() | pc);
      cl_tail.push_back(0);
      seq.push_back(p);
      rec(used | bit(p));
      seq.pop_back();
      cl_head.pop_back();
      cl_tail = saved_tail;
    }
  };
  rec(0);
  return best;
}

InvariantReport invariants(const FiniteSpace& x, bool with_min_order, const SizeCaps& caps) {
  if (x.size() > caps.max_points) {
    throw SizeCapExceeded("invariants: " + std::to_string(x.size()) + " points exceed the cap of " +
                          std::to_string(caps.max_points));
  }
  const auto all_opens = x.opens(caps.max_opens);
  std::vector<Mask> nonempty(all_opens.begin() + 1, all_opens.end());
  InvariantReport r;
  r.size = x.size();
  r.density = density(x, &r.dense_witness);
  r.spread = spread(x, &r.discrete_witness);
  for (int p = 0; p < x.size(); ++p) {
    r.pi_character_by_point.push_back(point_pi_character(x, p, nonempty));
    r.pi_character = std::max(r.pi_character, r.pi_character_by_point.back().value);
  }
  r.tightness = tightness(x);
  r.free_witness = max_free_sequence(x);
  r.free_sequence = static_cast<int>(r.free_witness.size());
  if (with_min_order) {
    auto m = min_pibase_order(x, caps);
    r.min_pibase_order = m.order;
    r.pibase_witness = std::move(m.witness);
  }
  return r;
}

nlohmann::json to_json(const FiniteSpace& x, const InvariantReport& r) {
  auto seq_json = [&](const std::vector<int>& s) {
    nlohmann::json out = nlohmann::json::array();
    for (int p : s) out.push_back(x.name(p));
    return out;
  };
  auto family_json = [&](const std::vector<Mask>& f) {
    nlohmann::json out = nlohmann::json::array();
    for (Mask m : f) out.push_back(x.show(m));
    return out;
  };
  nlohmann::json by_point = nlohmann::json::array();
  for (const auto& pc : r.pi_character_by_point) {
    by_point.push_back({{"point", x.name(pc.point)}, {"value", pc.value}, {"witness", family_json(pc.witness)}});
  }
  nlohmann::json out = {
      {"size", r.size},
      {"d", {{"value", r.density}, {"witness", x.show(r.dense_witness)}}},
      {"s", {{"value", r.spread}, {"witness", x.show(r.discrete_witness)}}},
      {"pi_character", {{"value", r.pi_character}, {"by_point", std::move(by_point)}}},
      {"t", {{"value", r.tightness}}},
      {"F", {{"value", r.free_sequence}, {"witness", seq_json(r.free_witness)}}},
  };
  if (r.min_pibase_order) {
    out["m"] = {{"value", *r.min_pibase_order}, {"witness", family_json(r.pibase_witness)}};
  }
  return out;
}

// ---------------------------------------------------------------- cover or free sequence

bool lemma24_hypothesis(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L) {
  for (int k = 0; k <= std::min(L, popcount(y)); ++k) {
    bool ok = true;
    for_each_subset_of_size(y, k, [&](Mask a) {
      const Mask cl = x.closure(a);
      if (std::none_of(family.begin(), family.end(), [&](Mask u) { return (cl & ~u) == 0; })) {
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<Mask> lemma24_hardest_family(const FiniteSpace& x, Mask y, int L) {
  std::set<Mask> out;
  for (int k = 0; k <= std::min(L, popcount(y)); ++k) {
    for_each_subset_of_size(y, k, [&](Mask a) {
      out.insert(x.hull(x.closure(a)));
      return true;
    });
  }
  std::vector<Mask> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), by_size_then_value);
  return v;
}

namespace {

// Fewest members of `family` covering y (breadth-first over covered parts of y).
std::optional<std::vector<Mask>> min_cover(Mask y, const std::vector<Mask>& family, int limit) {
  std::unordered_map<Mask, std::pair<Mask, int>> parent;  // state -> (previous state, member index)
  std::vector<Mask> frontier{0};
  parent.emplace(0, std::make_pair(Mask{0}, -1));
  auto unwind = [&](Mask s) {
    std::vector<Mask> out;
    while (s != 0) {
      const auto [prev, idx] = parent.at(s);
      out.push_back(family[idx]);
      s = prev;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };
  if (y == 0) return std::vector<Mask>{};
  for (int depth = 0; depth < limit; ++depth) {
    std::vector<Mask> next;
    for (Mask s : frontier) {
      for (std::size_t i = 0; i < family.size(); ++i) {
        const Mask t = s | (family[i] & y);
        if (parent.count(t)) continue;
        parent.emplace(t, std::make_pair(s, static_cast<int>(i)));
        if (t == y) return unwind(t);
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

Lemma24Result lemma24_extract(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L) {
  if (L < 0) throw DomainError("L must be a natural number");
  if (!lemma24_hypothesis(x, y, family, L)) {
    throw DomainError("hypothesis fails: some A subset Y with |A| <= " + std::to_string(L) +
                      " has cl(A) inside no member of the family");
  }
  Lemma24Result r;
  if (auto cover = min_cover(y, family, L)) {
    r.cover = true;
    r.family = std::move(*cover);
    return r;
  }
  Mask head = 0;
  Mask covered = 0;
  for (int d = 0; d < L; ++d) {
    const Mask cl = x.closure(head);
    const auto it = std::find_if(family.begin(), family.end(), [&](Mask u) { return (cl & ~u) == 0; });
    if (it == family.end()) throw std::logic_error("cover extraction: hypothesis check and pick disagree");
    r.picks.push_back(*it);
    covered |= *it;
    const Mask rest = y & ~covered;
    if (rest == 0) throw std::logic_error("cover extraction: picks cover Y although no cover of size <= L exists");
    const int p = __builtin_ctzll(rest);
    r.sequence.push_back(p);
    head |= bit(p);
  }
  return r;
}

bool lemma24_verify(const FiniteSpace& x, Mask y, const std::vector<Mask>& family, int L, const Lemma24Result& r) {
  if (r.cover) {
    if (static_cast<int>(r.family.size()) > L) return false;
    Mask u = 0;
    for (Mask m : r.family) {
      if (std::find(family.begin(), family.end(), m) == family.end()) return false;
      u |= m;
    }
    return (y & ~u) == 0;
  }
  if (static_cast<int>(r.sequence.size()) != L) return false;
  Mask seen = 0;
  for (int p : r.sequence) {
    if (!(y & bit(p)) || (seen & bit(p))) return false;
    seen |= bit(p);
  }
  return is_free_sequence(x, r.sequence);
}

Lemma24Table lemma24_bruteforce(int n) {
  if (n < 0 || n > 5) throw SizeCapExceeded("lemma24 brute force supports n <= 5");
  Lemma24Table t;
  t.n = n;
  const auto spaces = enumerate_topologies(n);
  t.topologies = spaces.size();
  t.rows.resize(n + 1);
  for (int L = 0; L <= n; ++L) t.rows[L].L = L;
  for (std::size_t idx = 0; idx < spaces.size(); ++idx) {
    const auto& x = spaces[idx];
    const int F = static_cast<int>(max_free_sequence(x).size());
    for (int L = 0; L <= n; ++L) {
      bool cover_all = true;
      for (Mask y = 0;; ++y) {
        const auto family = lemma24_hardest_family(x, y, L);
        const auto r = lemma24_extract(x, y, family, L);
        ++t.extract_calls;
        if (!lemma24_verify(x, y, family, L, r)) ++t.extract_failures;
        if (!r.cover) cover_all = false;
        if (y == x.full()) break;
      }
      auto& row = t.rows[L];
      const bool free_bound = F <= L;
      if (free_bound && cover_all) ++row.both;
      if (free_bound && !cover_all) {
        ++row.only_free_bound;
        if (!row.free_bound_without_cover) row.free_bound_without_cover = idx;
      }
      if (!free_bound && cover_all) {
        ++row.only_cover;
        if (!row.cover_without_free_bound) row.cover_without_free_bound = idx;
      }
      if (!free_bound && !cover_all) ++row.neither;
    }
  }
  return t;
}

nlohmann::json to_json(const Lemma24Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  for (const auto& r : t.rows) {
    rows.push_back({{"L", r.L},
                    {"both", r.both},
                    {"free_bound_only", r.only_free_bound},
                    {"cover_only", r.only_cover},
                    {"neither", r.neither},
                    {"free_bound_without_cover", opt(r.free_bound_without_cover)},
                    {"cover_without_free_bound", opt(r.cover_without_free_bound)}});
  }
  return {{"n", t.n},
          {"topologies", t.topologies},
          {"extract_calls", t.extract_calls},
          {"extract_failures", t.extract_failures},
          {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------- point order

int point_order(const std::vector<Mask>& family, int p) {
  return static_cast<int>(std::count_if(family.begin(), family.end(), [&](Mask m) { return (m & bit(p)) != 0; }));
}

int family_order(const FiniteSpace& x, const std::vector<Mask>& family) {
  int out = 0;
  for (int p = 0; p < x.size(); ++p) out = std::max(out, point_order(family, p));
  return out;
}

MinOrderResult min_pibase_order(const FiniteSpace& x, const SizeCaps& caps) {
  if (x.size() > caps.max_points) throw SizeCapExceeded("min-order: too many points");
  if (x.size() == 0) return {0, {}};
  auto all = x.opens(caps.max_opens);
  std::vector<Mask> cand(all.begin() + 1, all.end());
  if (cand.size() > 128) {
    throw SizeCapExceeded("min-order: " + std::to_string(cand.size()) + " nonempty opens exceed the search cap of 128");
  }
  const int n = x.size();
  const int m = static_cast<int>(cand.size());
  // needs[p] = candidates inside U_p; some must be chosen for every p.
  std::vector<std::vector<int>> needs(n);
  for (int p = 0; p < n; ++p) {
    for (int i = 0; i < m; ++i) {
      if ((cand[i] & ~x.minimal_neighbourhood(p)) == 0) needs[p].push_back(i);
    }
  }
  MinOrderResult best{n + m + 1, {}};
  std::vector<int> chosen;
  std::vector<int> count(n, 0);
  std::vector<bool> in(m, false);
  std::function<void(int, int)> rec = [&](int i, int order) {
    if (order >= best.order) return;
    bool complete = true;
    for (int p = 0; p < n && complete; ++p) {
      bool hit = false;
      bool possible = false;
      for (int j : needs[p]) {
        if (in[j]) hit = true;
        if (j >= i) possible = true;
      }
      if (!hit) {
        complete = false;
        if (!possible) return;  // p can no longer be served
      }
    }
    if (complete) {
      best.order = order;
      best.witness.clear();
      for (int j : chosen) best.witness.push_back(cand[j]);
      return;
    }
    if (i == m) return;
    int next = order;
    for (int p : members(cand[i])) next = std::max(next, count[p] + 1);
    if (next < best.order) {
      for (int p : members(cand[i])) ++count[p];
      in[i] = true;
      chosen.push_back(i);
      rec(i + 1, next);
      chosen.pop_back();
      in[i] = false;
      for (int p : members(cand[i])) --count[p];
    }
    rec(i + 1, order);
  };
  rec(0, 0);
  return best;
}

std::vector<StarRow> star_table(int n) {
  std::vector<StarRow> out;
  const auto spaces = enumerate_topologies(n);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto& x = spaces[i];
    StarRow row;
    row.index = i;
    row.d = density(x);
    row.s = spread(x);
    auto mo = min_pibase_order(x);
    row.m = mo.order;
    row.witness = std::move(mo.witness);
    row.d_le_ms = row.d <= row.m * row.s;
    row.d_le_m1s = row.d <= (row.m + 1) * row.s;
    row.witness_valid = is_pibase(x, row.witness) && family_order(x, row.witness) == row.m;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace pibase
