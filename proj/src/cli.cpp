#include "pibase/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pibase/errors.hpp"
#include "pibase/finite_space.hpp"
#include "pibase/oracles.hpp"
#include "pibase/pairing.hpp"
#include "pibase/phi.hpp"
#include "pibase/shapirovskii.hpp"
#include "pibase/sigma.hpp"

namespace pibase::cli {
namespace {

using nlohmann::json;

constexpr int kExitInternal = 3;
constexpr const char* kSchemaVersion = "1";

struct Options {
  int kappa = 0;
  std::string format = "text";
  int max_level = kDefaultMaxLevel;

  std::string expr, expr2;
  std::string delta, xi, pattern, bound, above;
  std::size_t samples = 100;
  std::uint64_t seed = 1;

  std::string space, seq, y, family;
  int L = 1;
  int n = 4;
  int all = -1;
  std::size_t steps = 10;
  std::size_t kappa_analog = 0;
  bool best_effort = false;
  bool inject_b = false;
  bool with_m = false;
};

struct Output {
  json data;
  std::string text;
  int code = kExitOk;
};

// A failed check is reported normally but exits 1.
Output checked(json data, std::string text, bool ok) { return {std::move(data), std::move(text), ok ? kExitOk : kExitDomain}; }

Ordinal ord(const Options& o, const std::string& text) { return parse(text, {o.max_level}); }
CardinalLevel kappa_of(const Options& o) { return CardinalLevel::aleph(o.kappa); }

// ---------------------------------------------------------------- spaces

using AnySpace = std::variant<FiniteSpace, RationalLine, OrdinalInterval>;

int parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 0) throw DomainError(what + " needs a natural number, got '" + text + "'");
  return v;
}

AnySpace load_any_space(const Options& o) {
  const std::string& s = o.space;
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "rationals" && arg.empty()) return RationalLine{};
  if (kind == "ordinal" && !arg.empty()) return OrdinalInterval(ord(o, arg));
  if (kind == "file" && !arg.empty()) return load_space_file(arg);
  if (kind == "discrete" && !arg.empty()) return FiniteSpace::discrete(parse_count(arg, "discrete:N"));
  if (kind == "indiscrete" && !arg.empty()) return FiniteSpace::indiscrete(parse_count(arg, "indiscrete:N"));
  if (kind == "sierpinski" && arg.empty()) return FiniteSpace::sierpinski();
  throw CLI::ValidationError("--space",
                             "unknown space '" + s +
                                 "' (expected rationals, ordinal:EXPR, file:PATH, discrete:N, indiscrete:N or sierpinski)");
}

FiniteSpace load_finite(const Options& o) {
  auto any = load_any_space(o);
  if (auto* f = std::get_if<FiniteSpace>(&any)) return std::move(*f);
  throw DomainError("this command needs a finite space (file:, discrete:, indiscrete: or sierpinski), not '" + o.space +
                    "'");
}

std::vector<Mask> parse_family(const FiniteSpace& x, const std::string& text) {
  std::vector<Mask> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(x.parse_set(item));
  return out;
}

std::string show_seq(const FiniteSpace& x, const std::vector<int>& seq) {
  std::string out = "<";
  for (std::size_t i = 0; i < seq.size(); ++i) out += (i ? ", " : "") + x.name(seq[i]);
  return out + ">";
}

json seq_json(const FiniteSpace& x, const std::vector<int>& seq) {
  json out = json::array();
  for (int p : seq) out.push_back(x.name(p));
  return out;
}

json family_json(const FiniteSpace& x, const std::vector<Mask>& f) {
  json out = json::array();
  for (Mask m : f) out.push_back(x.show(m));
  return out;
}

std::string join(const json& arr) {
  std::string out;
  for (const auto& v : arr) out += (out.empty() ? "" : " ") + v.get<std::string>();
  return out;
}

// ---------------------------------------------------------------- ordinals

Output ord_normalize(const Options& o) {
  const auto a = ord(o, o.expr);
  return {{{"value", print(a)}}, print(a)};
}

Output ord_add(const Options& o) {
  const auto r = add(ord(o, o.expr), ord(o, o.expr2));
  return {{{"value", print(r)}}, print(r)};
}

Output ord_mul(const Options& o) {
  const auto r = mul(ord(o, o.expr), ord(o, o.expr2));
  return {{{"value", print(r)}}, print(r)};
}

Output ord_cmp(const Options& o) {
  const std::string r(to_string(compare(ord(o, o.expr), ord(o, o.expr2))));
  return {{{"value", r}}, r};
}

Output ord_card(const Options& o) {
  const auto a = ord(o, o.expr);
  const auto c = cardinality(a);
  return {{{"value", c.str()}, {"ordinal", print(cardinality_ordinal(a))}}, c.str()};
}

Output ord_cf(const Options& o) {
  const auto r = cofinality(ord(o, o.expr));
  return {{{"value", print(r)}}, print(r)};
}

Output ord_div(const Options& o) {
  const auto d = div_by_cardinal(ord(o, o.expr), kappa_of(o));
  return {{{"quotient", print(d.quotient)}, {"remainder", print(d.remainder)}},
          "quotient " + print(d.quotient) + "\nremainder " + print(d.remainder)};
}

// ---------------------------------------------------------------- sigma

Output sigma_eval_cmd(const Options& o) {
  const auto r = sigma_eval(kappa_of(o), ord(o, o.expr), o.max_level);
  return {{{"value", print(r)}}, print(r)};
}

Output sigma_nf_cmd(const Options& o) {
  const auto nf = sigma_nf(kappa_of(o), ord(o, o.expr), o.max_level);
  json alphas = json::array();
  for (const auto& a : nf.alphas) alphas.push_back(print(a));
  json sums = json::array();
  for (const auto& s : nf.prefix_sums()) sums.push_back(print(s));
  return {{{"alphas", alphas}, {"rest", print(nf.rest)}, {"prefix_sums", sums}, {"form", nf.str()}}, nf.str()};
}

Output sigma_gamma_cmd(const Options& o) {
  const auto r = gamma(kappa_of(o), ord(o, o.expr), o.max_level);
  return {{{"value", print(r)}}, print(r)};
}

Output sigma_dprime_cmd(const Options& o) {
  const auto d = ord(o, o.expr);
  const auto a = delta_prime(kappa_of(o), d, o.max_level);
  const auto b = delta_prime_by_cardinality(kappa_of(o), d, o.max_level);
  if (a != b) throw std::logic_error("delta' formulas disagree: " + print(a) + " vs " + print(b));
  return {{{"value", print(a)}, {"by_cardinality", print(b)}}, print(a)};
}

// ---------------------------------------------------------------- pairing

Output pair_cmd(const Options& o) {
  const auto r = pair(ord(o, o.expr), ord(o, o.expr2));
  return {{{"value", print(r)}}, print(r)};
}

Output unpair_cmd(const Options& o) {
  const auto [a, b] = unpair(ord(o, o.expr));
  return {{{"first", print(a)}, {"second", print(b)}}, "(" + print(a) + "," + print(b) + ")"};
}

Output fdelta_cmd(const Options& o) {
  const auto p = f_delta(kappa_of(o), ord(o, o.delta), ord(o, o.xi), o.max_level);
  return {{{"pattern", p.str()}}, p.str()};
}

Output fdelta_witness_cmd(const Options& o) {
  const auto d = ord(o, o.delta);
  const auto A = parse_pattern(o.pattern, {o.max_level});
  WitnessOptions w;
  if (!o.bound.empty()) w.bound = ord(o, o.bound);
  if (!o.above.empty()) w.above = ord(o, o.above);
  const auto xi = f_delta_witness(kappa_of(o), d, A, w, o.max_level);
  if (f_delta(kappa_of(o), d, xi, o.max_level) != A) throw std::logic_error("witness does not roundtrip");
  const auto block = make_block(kappa_of(o), d, o.max_level);
  return {{{"witness", print(xi)}, {"pattern", A.str()}, {"block_end", print(block.end)}}, print(xi)};
}

// ---------------------------------------------------------------- phi

Output phi_eval_cmd(const Options& o) {
  const auto p = phi_eval(kappa_of(o), ord(o, o.expr), o.max_level);
  return {{{"pattern", p.str()}}, p.str()};
}

Output phi_witness_cmd(const Options& o) {
  const auto d = ord(o, o.delta);
  const auto A = parse_pattern(o.pattern, {o.max_level});
  const auto xi = phi_witness(kappa_of(o), d, A, o.max_level);
  if (phi_eval(kappa_of(o), xi, o.max_level) != A || compare(xi, d) != Cmp::LT) {
    throw std::logic_error("phi witness does not roundtrip");
  }
  return {{{"witness", print(xi)}, {"pattern", A.str()}}, print(xi)};
}

Output phi_check2_cmd(const Options& o) {
  const auto d = ord(o, o.delta);
  const auto r = phi_check_condition2(kappa_of(o), d, o.samples, o.seed, o.max_level);
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"pattern", f.pattern}, {"message", f.message}});
  json data = {{"delta", print(r.delta)},  {"gamma", print(r.gamma)},   {"samples", r.samples},
               {"passed", r.passed},       {"vacuous", r.vacuous},      {"failures", failures},
               {"status", r.ok() ? "PASS" : "FAIL"}};
  std::string text = std::string(r.ok() ? "PASS" : "FAIL") + " condition (2) at delta = " + print(r.delta);
  if (r.vacuous) {
    text += ": vacuous (no patterns over an empty interval)";
  } else {
    text += ": " + std::to_string(r.passed) + "/" + std::to_string(r.samples) + " patterns over [" + print(r.gamma) +
            ", " + print(r.delta) + ") x kappa realised below delta";
  }
  for (const auto& f : r.failures) text += "\n  " + f.pattern + ": " + f.message;
  return checked(std::move(data), std::move(text), r.ok());
}

// ---------------------------------------------------------------- topology

Output top_invariants(const Options& o) {
  const auto x = load_finite(o);
  const auto r = invariants(x, o.with_m);
  json data = to_json(x, r);
  std::ostringstream t;
  t << "points " << r.size << "\n";
  t << "d=" << r.density << " witness " << x.show(r.dense_witness) << "\n";
  t << "s=" << r.spread << " witness " << x.show(r.discrete_witness) << "\n";
  t << "pi_char=" << r.pi_character << " by point";
  for (const auto& pc : r.pi_character_by_point) t << " " << x.name(pc.point) << ":" << pc.value;
  t << "\n";
  t << "t=" << r.tightness << "\n";
  t << "F=" << r.free_sequence << " witness " << show_seq(x, r.free_witness);
  if (r.min_pibase_order) t << "\nm=" << *r.min_pibase_order << " witness " << join(family_json(x, r.pibase_witness));
  return {std::move(data), t.str()};
}

Output top_free_seq(const Options& o) {
  const auto x = load_finite(o);
  if (!o.seq.empty()) {
    std::vector<int> seq;
    std::stringstream ss(o.seq);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) seq.push_back(x.index_of(name));
    }
    const bool free = is_free_sequence(x, seq);
    return {{{"sequence", seq_json(x, seq)}, {"free", free}},
            show_seq(x, seq) + (free ? " is free" : " is not free")};
  }
  const auto seq = max_free_sequence(x);
  return {{{"F", seq.size()}, {"witness", seq_json(x, seq)}},
          "F=" + std::to_string(seq.size()) + " witness " + show_seq(x, seq)};
}

Output top_lemma24_extract(const Options& o) {
  const auto x = load_finite(o);
  const Mask y = o.y.empty() ? x.full() : x.parse_set(o.y);
  const auto fam = parse_family(x, o.family);
  const auto r = lemma24_extract(x, y, fam, o.L);
  if (!lemma24_verify(x, y, fam, o.L, r)) throw std::logic_error("lemma24_extract result failed verification");
  json data = {{"Y", x.show(y)}, {"L", o.L}, {"result", r.cover ? "cover" : "free-sequence"}, {"verified", true}};
  std::string text;
  if (r.cover) {
    data["family"] = family_json(x, r.family);
    text = "cover " + join(family_json(x, r.family));
  } else {
    data["sequence"] = seq_json(x, r.sequence);
    data["picks"] = family_json(x, r.picks);
    text = "free-sequence " + show_seq(x, r.sequence) + " picks " + join(family_json(x, r.picks));
  }
  return {std::move(data), text};
}

Output top_lemma24_brute(const Options& o) {
  const auto t = lemma24_bruteforce(o.n);
  std::ostringstream s;
  s << "n=" << t.n << " topologies=" << t.topologies << " extract_calls=" << t.extract_calls
    << " extract_failures=" << t.extract_failures << "\n";
  s << "L  both  free-bound-only  cover-only  neither";
  for (const auto& r : t.rows) {
    s << "\n" << r.L << "  " << r.both << "  " << r.only_free_bound << "  " << r.only_cover << "  " << r.neither;
    if (r.free_bound_without_cover) s << "  (free bound without cover: topology #" << *r.free_bound_without_cover << ")";
    if (r.cover_without_free_bound) s << "  (cover without free bound: topology #" << *r.cover_without_free_bound << ")";
  }
  return checked(to_json(t), s.str(), t.extract_failures == 0);
}

template <class Space>
std::string prefix_text(const Space& X, const PiBasePrefix<Space>& prefix) {
  std::ostringstream t;
  t << "space " << X.kind() << " kappa_analog " << prefix.kappa_analog << " steps " << prefix.points.size();
  for (std::size_t d = 0; d < prefix.points.size(); ++d) {
    const auto& log = prefix.log[d];
    t << "\n" << d << " p=" << X.show(prefix.points[d]) << " phi=" << log.phi << " " << log.branch << " S=";
    for (std::size_t i = 0; i < prefix.S[d].size(); ++i) t << (i ? " " : "") << X.show_open(prefix.S[d][i]);
    if (!log.note.empty()) t << " [" << log.note << "]";
  }
  return t.str();
}

std::string status_text(const std::string& name, const ConditionStatus& c) {
  std::string out = "(" + name + ") " + c.status + " checked=" + std::to_string(c.checked);
  if (!c.violations.empty()) out += " violations=" + std::to_string(c.violations.size());
  if (!c.note.empty()) out += ": " + c.note;
  for (const auto& v : c.violations) out += "\n    " + v;
  return out;
}

template <class Space>
Output build_on(const Space& X, const Options& o, bool check) {
  auto prefix = shapirovskii_build(X, BuildOptions{o.steps, o.kappa_analog, o.best_effort});
  if (o.inject_b) inject_b_violation(X, prefix);
  if (!check) return {to_json(X, prefix), prefix_text(X, prefix)};
  const auto report = def21_check(X, prefix);
  json data = {{"space", X.kind()},
               {"kappa_analog", prefix.kappa_analog},
               {"steps", prefix.points.size()},
               {"report", to_json(report)}};
  std::string text = "space " + X.kind() + " kappa_analog " + std::to_string(prefix.kappa_analog) + " steps " +
                     std::to_string(prefix.points.size()) + "\n" + status_text("a", report.a) + "\n" +
                     status_text("b", report.b) + "\n" + status_text("c", report.c) + "\n" +
                     status_text("c*", report.c_star) + "\n" + (report.ok() ? "PASS" : "FAIL");
  return checked(std::move(data), std::move(text), report.ok());
}

Output top_build_or_check(const Options& o, bool check) {
  return std::visit(
      [&](const auto& space) -> Output {
        using T = std::decay_t<decltype(space)>;
        if constexpr (std::is_same_v<T, FiniteSpace>) {
          if (!space.is_regular() && !o.best_effort) {
            throw DomainError("space is not regular; pass --best-effort to build anyway");
          }
          return build_on(FiniteSpaceAdapter(space), o, check);
        } else {
          return build_on(space, o, check);
        }
      },
      load_any_space(o));
}

Output top_min_order(const Options& o) {
  if (o.all >= 0) {
    const auto rows = star_table(o.all);
    json arr = json::array();
    std::ostringstream t;
    std::size_t valid = 0, ms = 0, m1s = 0;
    t << "index d s m d<=m*s d<=(m+1)*s witness_valid";
    for (const auto& r : rows) {
      arr.push_back({{"index", r.index},
                     {"d", r.d},
                     {"s", r.s},
                     {"m", r.m},
                     {"d_le_ms", r.d_le_ms},
                     {"d_le_m1s", r.d_le_m1s},
                     {"witness_valid", r.witness_valid},
                     {"witness_size", r.witness.size()}});
      t << "\n" << r.index << " " << r.d << " " << r.s << " " << r.m << " " << r.d_le_ms << " " << r.d_le_m1s << " "
        << r.witness_valid;
      valid += r.witness_valid;
      ms += r.d_le_ms;
      m1s += r.d_le_m1s;
    }
    t << "\nspaces " << rows.size() << " witnesses valid " << valid << " d<=m*s " << ms << " d<=(m+1)*s " << m1s;
    json data = {{"n", o.all},
                 {"spaces", rows.size()},
                 {"witnesses_valid", valid},
                 {"d_le_ms", ms},
                 {"d_le_m1s", m1s},
                 {"rows", arr}};
    return checked(std::move(data), t.str(), valid == rows.size());
  }
  if (o.space.empty()) throw CLI::ValidationError("min-order", "needs --space or --all N");
  const auto x = load_finite(o);
  const auto r = min_pibase_order(x);
  return {{{"m", r.order}, {"witness", family_json(x, r.witness)}},
          "m=" + std::to_string(r.order) + " witness " + join(family_json(x, r.witness))};
}

// ---------------------------------------------------------------- wiring

json option_value(const CLI::Option* opt) {
  if (opt->get_type_size() == 0) return opt->count() > 0;
  if (opt->count() > 0) {
    const auto& res = opt->results();
    return res.size() == 1 ? json(res.front()) : json(res);
  }
  return opt->get_default_str();
}

json resolved_config(const CLI::App& root, const std::vector<const CLI::App*>& chain, const Options& o) {
  json cfg;
  for (const CLI::App* app : chain) {
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_name() == "--help") continue;
      std::string name = opt->get_name(false, true);
      if (name.rfind("--", 0) == 0) name = name.substr(2);
      const json v = option_value(opt);
      if (app == &root || opt->count() > 0 || !(v.is_string() && v.get<std::string>().empty())) cfg[name] = v;
    }
  }
  cfg["kappa"] = o.kappa;
  cfg["max_level"] = o.max_level;
  return cfg;
}

std::string config_line(const json& cfg) {
  std::string out = "# config";
  for (const auto& [k, v] : cfg.items()) out += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact ordinal notations, sigma forms, canonical kappa-functions and finite topology tools", "pibase"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--kappa", o.kappa, "kappa as an aleph level (0 = w)")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::map<std::string, std::function<Output(const Options&)>> handlers;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    std::string path = name;
    for (CLI::App* p = parent; p != &app; p = p->get_parent()) path = p->get_name() + " " + path;
    handlers[path] = fn;
    return sub;
  };
  auto expr1 = [&](CLI::App* s) { s->add_option("expr", o.expr, "ordinal expression")->required(); };
  auto expr2 = [&](CLI::App* s) {
    s->add_option("a", o.expr, "ordinal expression")->required();
    s->add_option("b", o.expr2, "ordinal expression")->required();
  };

  auto* ordc = app.add_subcommand("ord", "ordinal arithmetic")->require_subcommand(1);
  expr1(leaf(ordc, "normalize", "print the canonical form", ord_normalize));
  expr2(leaf(ordc, "add", "a + b", ord_add));
  expr2(leaf(ordc, "mul", "a * b", ord_mul));
  expr2(leaf(ordc, "cmp", "compare a and b (LT, EQ, GT)", ord_cmp));
  expr1(leaf(ordc, "card", "cardinality", ord_card));
  expr1(leaf(ordc, "cf", "cofinality", ord_cf));
  expr1(leaf(ordc, "div", "divide by omega_kappa with remainder", ord_div));

  auto* sig = app.add_subcommand("sigma", "the sigma_kappa function")->require_subcommand(1);
  expr1(leaf(sig, "eval", "sigma(a)", sigma_eval_cmd));
  expr1(leaf(sig, "nf", "sigma normal form of d", sigma_nf_cmd));
  expr1(leaf(sig, "gamma", "pressing-down gamma(d)", sigma_gamma_cmd));
  expr1(leaf(sig, "dprime", "block endpoint delta'", sigma_dprime_cmd));

  expr2(leaf(&app, "pair", "pairing code of (a, b)", pair_cmd));
  expr1(leaf(&app, "unpair", "inverse of pair", unpair_cmd));
  auto* fd = leaf(&app, "fdelta", "evaluate f_delta(xi)", fdelta_cmd);
  fd->add_option("--delta", o.delta, "block base")->required();
  fd->add_option("--xi", o.xi, "argument")->required();
  auto* fw = leaf(&app, "fdelta-witness", "some xi with f_delta(xi) = pattern", fdelta_witness_cmd);
  fw->add_option("--delta", o.delta, "block base")->required();
  fw->add_option("--pattern", o.pattern, "pattern such as \"(a,i);(b,j)\"")->required();
  fw->add_option("--bound", o.bound, "witness must be below this");
  fw->add_option("--above", o.above, "witness must exceed this");

  auto* ph = app.add_subcommand("phi", "the canonical kappa-function")->require_subcommand(1);
  expr1(leaf(ph, "eval", "phi(xi)", phi_eval_cmd));
  auto* pw = leaf(ph, "witness", "some xi < delta with phi(xi) = pattern", phi_witness_cmd);
  pw->add_option("--delta", o.delta, "a kappa-multiple")->required();
  pw->add_option("--pattern", o.pattern, "pattern over [gamma(delta), delta) x kappa")->required();
  auto* pc = leaf(ph, "check2", "sampled check of condition (2) below delta", phi_check2_cmd);
  pc->add_option("--delta", o.delta, "a kappa-multiple")->required();
  pc->add_option("--samples", o.samples, "number of random patterns")->capture_default_str();
  pc->add_option("--seed", o.seed, "random seed")->capture_default_str();

  auto* top = app.add_subcommand("top", "finite and oracle topology")->require_subcommand(1);
  auto space_opt = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--space", o.space,
                              "rationals | ordinal:EXPR | file:PATH | discrete:N | indiscrete:N | sierpinski");
    if (required) opt->required();
  };
  auto* ti = leaf(top, "invariants", "d, s, pi-character, t, F with witnesses", top_invariants);
  space_opt(ti, true);
  ti->add_flag("--with-m", o.with_m, "also compute the minimal pi-base order");
  auto* tf = leaf(top, "free-seq", "longest free sequence, or check --seq", top_free_seq);
  space_opt(tf, true);
  tf->add_option("--seq", o.seq, "comma-separated point names");
  auto* tl = top->add_subcommand("lemma24", "finite analog of the cover / free-sequence dichotomy")->require_subcommand(1);
  auto* tle = leaf(tl, "extract", "a small cover or a free sequence", top_lemma24_extract);
  space_opt(tle, true);
  tle->add_option("--Y", o.y, "point set (default: all points)");
  tle->add_option("--family", o.family, "open sets separated by ';', points by ','")->required();
  tle->add_option("--L", o.L, "bound")->check(CLI::NonNegativeNumber)->capture_default_str();
  auto* tlb = leaf(tl, "brute", "tabulate over all topologies on n points", top_lemma24_brute);
  tlb->add_option("--n", o.n, "number of points")->check(CLI::Range(0, 5))->capture_default_str();
  for (const bool check : {false, true}) {
    auto* tb = leaf(top, check ? "check" : "build",
                    check ? "build a prefix and check conditions (a), (b), (c), (c*)" : "build a pi-base prefix",
                    [check](const Options& opts) { return top_build_or_check(opts, check); });
    space_opt(tb, true);
    tb->add_option("--steps", o.steps, "number of stages")->capture_default_str();
    tb->add_option("--kappa-analog", o.kappa_analog, "width of each local pi-base (0: space default)")
        ->capture_default_str();
    tb->add_flag("--best-effort", o.best_effort, "allow non-regular finite spaces");
    tb->add_flag("--inject-b", o.inject_b, "widen S(1,0) so that (b) fails");
  }
  auto* tm = leaf(top, "min-order", "minimal order of a pi-base", top_min_order);
  space_opt(tm, false);
  tm->add_option("--all", o.all, "table over all topologies on N points")->check(CLI::Range(0, 5));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pibase: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<const CLI::App*> chain{&app};
  std::string path;
  for (const CLI::App* cur = &app; !cur->get_subcommands().empty();) {
    cur = cur->get_subcommands().front();
    chain.push_back(cur);
    path += (path.empty() ? "" : " ") + cur->get_name();
  }

  try {
    o.max_level = max_level_from_env();
    if (o.kappa > o.max_level) {
      throw LevelOverflow("--kappa " + std::to_string(o.kappa) + " exceeds maxLevel " + std::to_string(o.max_level));
    }
    const auto it = handlers.find(path);
    if (it == handlers.end()) throw CLI::ValidationError(path, "incomplete command");
    const json cfg = resolved_config(app, chain, o);
    const Output r = it->second(o);
    if (o.format == "json") {
      std::string schema = "pibase." + path + "/" + kSchemaVersion;
      std::replace(schema.begin(), schema.end(), ' ', '.');
      out << json{{"schema", schema}, {"config", cfg}, {"result", r.data}}.dump(2) << "\n";
    } else {
      err << config_line(cfg) << "\n";
      out << r.text << "\n";
    }
    return r.code;
  } catch (const CLI::Error& e) {
    err << "pibase: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "pibase: usage error: malformed expression: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "pibase: domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "pibase: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace pibase::cli
