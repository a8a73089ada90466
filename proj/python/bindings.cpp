#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pibase/cli.hpp"
#include "pibase/errors.hpp"
#include "pibase/finite_space.hpp"
#include "pibase/oracles.hpp"
#include "pibase/pairing.hpp"
#include "pibase/phi.hpp"
#include "pibase/shapirovskii.hpp"
#include "pibase/sigma.hpp"

namespace py = pybind11;
using namespace pibase;

namespace {

CardinalLevel kappa_of(int k) {
  if (k < 0) throw DomainError("kappa must be a nonnegative aleph level");
  return CardinalLevel::aleph(k);
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

int max_level() { return max_level_from_env(); }

template <class Space>
py::object check_space(const Space& X, std::size_t steps, std::size_t kappa_analog, bool best_effort, bool inject_b) {
  auto prefix = shapirovskii_build(X, {steps, kappa_analog, best_effort});
  if (inject_b) inject_b_violation(X, prefix);
  return to_python({{"prefix", to_json(X, prefix)}, {"report", to_json(def21_check(X, prefix))}});
}

}  // namespace

PYBIND11_MODULE(_pibase, m) {
  m.doc() = "Exact ordinal notations, sigma normal forms, canonical kappa-functions and finite topology";

  auto base_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());

  py::class_<Ordinal>(m, "Ordinal")
      .def(py::init<>())
      .def(py::init([](const std::string& s) { return parse(s, {max_level()}); }))
      .def(py::init([](unsigned long long n) { return Ordinal::natural(n); }))
      .def("__str__", &print)
      .def("__repr__", [](const Ordinal& a) { return "Ordinal('" + print(a) + "')"; })
      .def("__eq__", [](const Ordinal& a, const Ordinal& b) { return a == b; })
      .def("__lt__", [](const Ordinal& a, const Ordinal& b) { return compare(a, b) == Cmp::LT; })
      .def("__le__", [](const Ordinal& a, const Ordinal& b) { return compare(a, b) != Cmp::GT; })
      .def("__gt__", [](const Ordinal& a, const Ordinal& b) { return compare(a, b) == Cmp::GT; })
      .def("__ge__", [](const Ordinal& a, const Ordinal& b) { return compare(a, b) != Cmp::LT; })
      .def("__hash__", [](const Ordinal& a) { return py::hash(py::str(print(a))); })
      .def("__add__", [](const Ordinal& a, const Ordinal& b) { return add(a, b); })
      .def("__mul__", [](const Ordinal& a, const Ordinal& b) { return mul(a, b); })
      .def("succ", &succ)
      .def("is_limit", &Ordinal::is_limit)
      .def("is_successor", &Ordinal::is_successor)
      .def("cardinality", [](const Ordinal& a) { return cardinality(a).str(); })
      .def("cofinality", &cofinality);
  py::implicitly_convertible<py::str, Ordinal>();
  py::implicitly_convertible<py::int_, Ordinal>();

  py::class_<FinitePattern>(m, "Pattern")
      .def(py::init<>())
      .def(py::init([](const std::string& s) { return parse_pattern(s, {max_level()}); }))
      .def(py::init([](const std::vector<std::pair<Ordinal, Ordinal>>& items) {
        std::vector<IndexPair> v;
        for (const auto& [a, i] : items) v.push_back({a, i});
        return FinitePattern(std::move(v));
      }))
      .def("__str__", &FinitePattern::str)
      .def("__repr__", [](const FinitePattern& p) { return "Pattern('" + p.str() + "')"; })
      .def("__len__", &FinitePattern::size)
      .def("__eq__", [](const FinitePattern& a, const FinitePattern& b) { return a == b; })
      .def("items", [](const FinitePattern& p) {
        std::vector<std::pair<Ordinal, Ordinal>> out;
        for (const auto& [a, i] : p) out.emplace_back(a, i);
        return out;
      });
  py::implicitly_convertible<py::str, FinitePattern>();

  m.def("parse", [](const std::string& s) { return parse(s, {max_level()}); });
  m.def("compare", [](const Ordinal& a, const Ordinal& b) { return std::string(to_string(compare(a, b))); });
  m.def("sub_left", &sub_left, py::arg("g"), py::arg("d"));
  m.def(
      "div_by_cardinal",
      [](const Ordinal& a, int k) {
        const auto d = div_by_cardinal(a, kappa_of(k));
        return std::make_pair(d.quotient, d.remainder);
      },
      py::arg("a"), py::arg("kappa"));

  m.def(
      "sigma_eval", [](const Ordinal& a, int k) { return sigma_eval(kappa_of(k), a, max_level()); }, py::arg("a"),
      py::arg("kappa") = 0);
  m.def(
      "sigma_nf",
      [](const Ordinal& d, int k) {
        const auto nf = sigma_nf(kappa_of(k), d, max_level());
        return py::make_tuple(nf.alphas, nf.rest, nf.str());
      },
      py::arg("d"), py::arg("kappa") = 0, "(alphas, Delta, printed form)");
  m.def(
      "gamma", [](const Ordinal& d, int k) { return gamma(kappa_of(k), d, max_level()); }, py::arg("d"),
      py::arg("kappa") = 0);
  m.def(
      "delta_prime", [](const Ordinal& d, int k) { return delta_prime(kappa_of(k), d, max_level()); }, py::arg("d"),
      py::arg("kappa") = 0);

  m.def("pair", &pair, py::arg("a"), py::arg("b"));
  m.def("unpair", &unpair, py::arg("c"));
  m.def(
      "f_delta", [](const Ordinal& d, const Ordinal& xi, int k) { return f_delta(kappa_of(k), d, xi, max_level()); },
      py::arg("delta"), py::arg("xi"), py::arg("kappa") = 0);
  m.def(
      "f_delta_witness",
      [](const Ordinal& d, const FinitePattern& A, int k, std::optional<Ordinal> bound, std::optional<Ordinal> above) {
        return f_delta_witness(kappa_of(k), d, A, {bound, above}, max_level());
      },
      py::arg("delta"), py::arg("pattern"), py::arg("kappa") = 0, py::arg("bound") = py::none(),
      py::arg("above") = py::none());

  m.def(
      "phi_eval", [](const Ordinal& xi, int k) { return phi_eval(kappa_of(k), xi, max_level()); }, py::arg("xi"),
      py::arg("kappa") = 0);
  m.def(
      "phi_witness",
      [](const Ordinal& d, const FinitePattern& A, int k) { return phi_witness(kappa_of(k), d, A, max_level()); },
      py::arg("delta"), py::arg("pattern"), py::arg("kappa") = 0);
  m.def(
      "phi_check_condition2",
      [](const Ordinal& d, std::size_t samples, int k, std::uint64_t seed) {
        const auto r = phi_check_condition2(kappa_of(k), d, samples, seed, max_level());
        py::list failures;
        for (const auto& f : r.failures) failures.append(py::make_tuple(f.pattern, f.message));
        py::dict out;
        out["ok"] = r.ok();
        out["vacuous"] = r.vacuous;
        out["samples"] = r.samples;
        out["passed"] = r.passed;
        out["gamma"] = r.gamma;
        out["failures"] = failures;
        return out;
      },
      py::arg("delta"), py::arg("samples") = 100, py::arg("kappa") = 0, py::arg("seed") = 1);

  py::class_<FiniteSpace>(m, "FiniteSpace")
      .def_static("from_json", [](const std::string& text) { return load_space(nlohmann::json::parse(text)); })
      .def_static("load", [](const std::string& path) { return load_space_file(path); })
      .def_static("discrete", &FiniteSpace::discrete)
      .def_static("indiscrete", &FiniteSpace::indiscrete)
      .def_static("sierpinski", &FiniteSpace::sierpinski)
      .def_property_readonly("points", &FiniteSpace::points)
      .def("is_regular", &FiniteSpace::is_regular)
      .def("closure", [](const FiniteSpace& x, const std::string& set) { return x.show(x.closure(x.parse_set(set))); })
      .def("to_json", [](const FiniteSpace& x) { return to_python(x.to_json()); })
      .def("__len__", &FiniteSpace::size);

  m.def("enumerate_topologies", &enumerate_topologies, py::arg("n"));
  m.def(
      "invariants",
      [](const FiniteSpace& x, bool with_m) { return to_python(to_json(x, invariants(x, with_m))); },
      py::arg("space"), py::arg("with_m") = false);
  m.def(
      "is_free_sequence",
      [](const FiniteSpace& x, const std::vector<std::string>& names) {
        std::vector<int> seq;
        for (const auto& s : names) seq.push_back(x.index_of(s));
        return is_free_sequence(x, seq);
      },
      py::arg("space"), py::arg("sequence"));
  m.def("lemma24_bruteforce", [](int n) { return to_python(to_json(lemma24_bruteforce(n))); }, py::arg("n"));
  m.def(
      "min_pibase_order",
      [](const FiniteSpace& x) {
        const auto r = min_pibase_order(x);
        std::vector<std::string> w;
        for (Mask b : r.witness) w.push_back(x.show(b));
        return py::make_tuple(r.order, w);
      },
      py::arg("space"));

  m.def(
      "check_prefix",
      [](const std::string& space, std::size_t steps, std::size_t kappa_analog, bool best_effort, bool inject_b) {
        if (space == "rationals") return check_space(RationalLine{}, steps, kappa_analog, best_effort, inject_b);
        if (space.rfind("ordinal:", 0) == 0) {
          return check_space(OrdinalInterval(parse(space.substr(8), {max_level()})), steps, kappa_analog, best_effort,
                             inject_b);
        }
        throw DomainError("check_prefix takes 'rationals' or 'ordinal:EXPR'; use check_finite for finite spaces");
      },
      py::arg("space"), py::arg("steps"), py::arg("kappa_analog") = 0, py::arg("best_effort") = false,
      py::arg("inject_b") = false, "Build a pi-base prefix on an oracle space and check it.");
  m.def(
      "check_finite",
      [](const FiniteSpace& x, std::size_t steps, std::size_t kappa_analog, bool best_effort, bool inject_b) {
        return check_space(FiniteSpaceAdapter(x), steps, kappa_analog, best_effort, inject_b);
      },
      py::arg("space"), py::arg("steps"), py::arg("kappa_analog") = 0, py::arg("best_effort") = false,
      py::arg("inject_b") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in-process; returns (exit code, stdout, stderr).");
}
