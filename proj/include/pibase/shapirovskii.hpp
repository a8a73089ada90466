#pragma once

// Finite prefixes of a Shapirovskii pi-base, built stage by stage over a
// space oracle, and the checker for conditions (a), (b), (c), (c*).
//
// Stage delta consults phi(delta) at kappa = w. Its items (alpha, i) name
// earlier sets S_{alpha,i}; an index i at or beyond the width built for alpha
// is outside the truncation, in which case rule 1 takes its second branch.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pibase/errors.hpp"
#include "pibase/oracles.hpp"
#include "pibase/phi.hpp"

namespace pibase {

struct StageLog {
  std::size_t index = 0;
  std::string phi;
  std::string branch;  // "pick" or "least-index"
  std::string note;
};

template <class Space>
struct PiBasePrefix {
  std::size_t kappa_analog = 0;
  std::vector<typename Space::Point> points;
  std::vector<std::vector<typename Space::Open>> S;
  std::vector<StageLog> log;
};

struct BuildOptions {
  std::size_t steps = 0;
  std::size_t kappa_analog = 0;  // 0: the space's default
  bool best_effort = false;      // allow non-regular finite spaces
};

template <class Space>
PiBasePrefix<Space> shapirovskii_build(const Space& X, const BuildOptions& options) {
  if (!X.regular() && !options.best_effort) {
    throw DomainError("space is not regular; pass the best-effort flag to build anyway");
  }
  using Point = typename Space::Point;
  using Open = typename Space::Open;
  PiBasePrefix<Space> out;
  out.kappa_analog = options.kappa_analog ? options.kappa_analog : X.default_kappa_analog();
  const auto omega = CardinalLevel::aleph(0);

  for (std::size_t delta = 0; delta < options.steps; ++delta) {
    StageLog entry;
    entry.index = delta;
    const FinitePattern pattern = phi_eval(omega, Ordinal::natural(delta));
    entry.phi = pattern.str();

    std::vector<Open> family;
    std::string missing;
    for (const auto& [alpha, i] : pattern) {
      const auto a = alpha.as_natural();
      const auto k = i.as_natural();
      if (!a || !k || *a >= out.S.size() || *k >= out.S[a->template convert_to<std::size_t>()].size()) {
        missing = "(" + print(alpha) + "," + print(i) + ")";
        break;
      }
      family.push_back(out.S[a->template convert_to<std::size_t>()][k->template convert_to<std::size_t>()]);
    }

    std::optional<Point> p;
    if (missing.empty()) {
      const auto probe = X.probe(family, out.points);
      if (probe.nonempty && !probe.meets_points) {
        p = probe.pick;
        entry.branch = "pick";
      } else {
        entry.note = probe.nonempty ? "intersection meets cl(P_delta)" : "intersection empty";
      }
    } else {
      entry.note = "S" + missing + " outside the truncation";
    }
    if (!p) {
      entry.branch = "least-index";
      for (std::size_t xi = 0;; ++xi) {
        auto q = X.dense_point(xi);
        if (!q) throw DomainError("dense enumeration exhausted at stage " + std::to_string(delta));
        if (!X.in_closure_of_points(*q, out.points)) {
          p = std::move(q);
          break;
        }
      }
    }

    std::string note;
    auto base = X.local_pibase(*p, out.points, out.kappa_analog, options.best_effort, &note);
    if (!note.empty()) entry.note += (entry.note.empty() ? "" : "; ") + note;
    out.points.push_back(std::move(*p));
    out.S.push_back(std::move(base));
    out.log.push_back(std::move(entry));
  }
  return out;
}

/// Replaces S_{1,0} by an open set around p_0 and p_1 so that (b) fails at
/// alpha = 1. Needs at least two stages.
template <class Space>
void inject_b_violation(const Space& X, PiBasePrefix<Space>& prefix) {
  if (prefix.points.size() < 2) throw DomainError("fault injection needs at least two stages");
  prefix.S[1][0] = X.open_around({prefix.points[0], prefix.points[1]});
  prefix.log[1].note += (prefix.log[1].note.empty() ? "" : "; ") + std::string("injected: S(1,0) widened");
}

struct ConditionStatus {
  std::string status;  // "pass", "fail" or "vacuous"
  std::size_t checked = 0;
  std::vector<std::string> violations;
  std::string note;
};

struct Def21Report {
  ConditionStatus a, b, c, c_star;
  bool ok() const { return a.status != "fail" && b.status != "fail" && c.status != "fail" && c_star.status != "fail"; }
};

template <class Space>
Def21Report def21_check(const Space& X, const PiBasePrefix<Space>& prefix) {
  Def21Report r;
  const std::size_t n = prefix.points.size();

  // (a) each {S_{alpha,i}} is a local pi-base at p_alpha, tested against the
  // oracle's neighbourhoods of p_alpha up to the truncation width.
  for (std::size_t alpha = 0; alpha < n; ++alpha) {
    const auto& p = prefix.points[alpha];
    for (std::size_t i = 0; i < prefix.S[alpha].size(); ++i) {
      ++r.a.checked;
      if (!X.is_nonempty_open(prefix.S[alpha][i])) {
        r.a.violations.push_back("S(" + std::to_string(alpha) + "," + std::to_string(i) + ") = " +
                                 X.show_open(prefix.S[alpha][i]) + " is not a nonempty open set");
      }
    }
    for (const auto& nb : X.test_neighbourhoods(p, prefix.kappa_analog)) {
      ++r.a.checked;
      const bool hit = std::any_of(prefix.S[alpha].begin(), prefix.S[alpha].end(),
                                   [&](const auto& s) { return X.subset(s, nb); });
      if (!hit) {
        r.a.violations.push_back("no S(" + std::to_string(alpha) + ",i) inside the neighbourhood " + X.show_open(nb) +
                                 " of " + X.show(p));
      }
    }
  }
  r.a.status = r.a.violations.empty() ? "pass" : "fail";

  // (b) cl(P_alpha) misses cl(S_{beta,i}) for every beta >= alpha.
  for (std::size_t alpha = 0; alpha <= n; ++alpha) {
    const std::vector<typename Space::Point> head(prefix.points.begin(), prefix.points.begin() + alpha);
    for (std::size_t beta = alpha; beta < n; ++beta) {
      for (std::size_t i = 0; i < prefix.S[beta].size(); ++i) {
        ++r.b.checked;
        if (X.closure_meets_points(prefix.S[beta][i], head)) {
          r.b.violations.push_back("cl(P_" + std::to_string(alpha) + ") meets cl(S(" + std::to_string(beta) + "," +
                                   std::to_string(i) + ")) = cl " + X.show_open(prefix.S[beta][i]));
        }
      }
    }
  }
  r.b.status = r.b.violations.empty() ? "pass" : "fail";

  r.c.status = "vacuous";
  r.c.note = n == 0 ? "empty prefix"
                    : "the only kappa-multiple stage index below " + std::to_string(n) +
                          " is 0, where [gamma(0), 0) is empty; nothing is checked at this truncation";
  r.c_star.status = "vacuous";
  r.c_star.note = "needs kappa^+-multiples and kappa-sized patterns; none exist in a finite prefix";
  return r;
}

template <class Space>
nlohmann::json to_json(const Space& X, const PiBasePrefix<Space>& prefix) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t d = 0; d < prefix.points.size(); ++d) {
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : prefix.S[d]) sets.push_back(X.show_open(s));
    const auto& log = prefix.log[d];
    stages.push_back({{"index", d},
                      {"point", X.show(prefix.points[d])},
                      {"phi", log.phi},
                      {"branch", log.branch},
                      {"note", log.note},
                      {"S", std::move(sets)}});
  }
  return {{"space", X.kind()},
          {"kappa_analog", prefix.kappa_analog},
          {"steps", prefix.points.size()},
          {"stages", std::move(stages)}};
}

inline nlohmann::json to_json(const ConditionStatus& c) {
  nlohmann::json out = {{"status", c.status}, {"checked", c.checked}, {"violations", c.violations}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

inline nlohmann::json to_json(const Def21Report& r) {
  return {{"a", to_json(r.a)}, {"b", to_json(r.b)}, {"c", to_json(r.c)}, {"c_star", to_json(r.c_star)}, {"ok", r.ok()}};
}

}  // namespace pibase
