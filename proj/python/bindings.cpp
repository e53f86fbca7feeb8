#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ap3/analysis.hpp"
#include "ap3/bounds.hpp"
#include "ap3/construct.hpp"
#include "ap3/count.hpp"
#include "ap3/io.hpp"
#include "ap3/search.hpp"

namespace py = pybind11;
using namespace ap3;

namespace {

using Elements = std::vector<std::int64_t>;

Elements elements(const ResidueSet& s) { return {s.elements().begin(), s.elements().end()}; }
Elements elements(const IntegerSet& s) { return {s.elements().begin(), s.elements().end()}; }

// Composite results cross as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

SearchOptions options(std::uint64_t budget, unsigned threads) {
  SearchOptions o;
  o.budget_nodes = budget;
  o.threads = threads;
  return o;
}

Family family_of(const std::string& name) {
  if (name == "E") return Family::E;
  if (name == "F") return Family::F;
  throw std::invalid_argument("family must be 'E' or 'F'");
}

Side side_of(const std::string& name) {
  if (name == "max") return Side::max;
  if (name == "min") return Side::min;
  throw std::invalid_argument("side must be 'max' or 'min'");
}

Json wrap_json(const WrapConstruction& w) {
  Json j = to_json(w);
  j["elements"] = elements(w.set);
  return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact three-term progression counts, constructions and searches";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("t3", [](std::int64_t n, const Elements& a) { return t3(ResidueSet(n, a)); }, py::arg("modulus"),
        py::arg("elements"));
  m.def("t3_naive", [](std::int64_t n, const Elements& a) { return t3_naive(ResidueSet(n, a)); }, py::arg("modulus"),
        py::arg("elements"));
  m.def("t3_fast", [](std::int64_t n, const Elements& a) { return t3_fast(ResidueSet(n, a)); }, py::arg("modulus"),
        py::arg("elements"));
  m.def(
      "count_report", [](std::int64_t n, const Elements& a) { return dump(to_json(count_report(ResidueSet(n, a)))); },
      py::arg("modulus"), py::arg("elements"));
  m.def(
      "t3_integers", [](const Elements& a) { return dump(to_json(t3_integers(IntegerSet::from_unsorted(a)))); },
      py::arg("elements"));
  m.def(
      "additive_energy",
      [](std::int64_t n, const Elements& a, const Elements& b) { return additive_energy(ResidueSet(n, a), ResidueSet(n, b)); },
      py::arg("modulus"), py::arg("a"), py::arg("b"));
  m.def(
      "complement_identity",
      [](std::int64_t n, const Elements& a) {
        const auto c = complement_identity_check(ResidueSet(n, a));
        return dump(Json{{"applicable", c.applicable}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"equal", c.equal}});
      },
      py::arg("modulus"), py::arg("elements"));

  m.def(
      "generate_family",
      [](const std::string& f, std::int64_t k, std::int64_t mm) { return elements(generate_family({family_of(f), k, mm})); },
      py::arg("family"), py::arg("k"), py::arg("m"));
  m.def(
      "embed_mod",
      [](const Elements& a, std::int64_t n, std::int64_t shift) {
        const auto e = embed_mod(IntegerSet::from_unsorted(a), n, shift);
        return py::make_tuple(elements(e.set), e.collision);
      },
      py::arg("elements"), py::arg("modulus"), py::arg("shift") = 0);
  m.def(
      "wraparound_complement",
      [](std::int64_t n, std::int64_t k, std::int64_t mm) { return dump(wrap_json(wraparound_complement(n, k, mm))); },
      py::arg("modulus"), py::arg("k"), py::arg("m"));
  m.def(
      "optimize_wraparound",
      [](std::int64_t n, std::int64_t size, bool complement, unsigned threads) {
        return dump(wrap_json(complement ? optimize_wraparound_complement(n, size, threads)
                                         : optimize_wraparound(n, size, threads)));
      },
      py::arg("modulus"), py::arg("n"), py::arg("complement") = false, py::arg("threads") = 1);
  m.def(
      "random_set", [](std::int64_t size, std::int64_t n, std::uint64_t seed) { return elements(random_set(size, n, seed)); },
      py::arg("n"), py::arg("modulus"), py::arg("seed"));
  m.def(
      "behrend_set", [](int d, std::int64_t q, std::int64_t r) { return elements(behrend_set(d, q, r)); }, py::arg("dim"),
      py::arg("base"), py::arg("radius_sq"));
  m.def(
      "intersect_search",
      [](std::int64_t n, const Elements& a, const Elements& b, std::uint64_t trials, std::uint64_t seed, double tolerance,
         unsigned threads) {
        IntersectOptions o;
        o.tolerance = tolerance;
        o.threads = threads;
        const auto r = intersect_search(ResidueSet(n, a), ResidueSet(n, b), trials, seed, o);
        Json j;
        j["best"] = r.best ? Json(*r.best) : Json(nullptr);
        j["elements"] = r.best_set ? Json(elements(*r.best_set)) : Json(nullptr);
        Json t = Json::array();
        for (const auto& x : r.trials)
          t.push_back(Json{{"lambda", x.lambda}, {"mu", x.mu}, {"size", x.size}, {"t3", x.t3}, {"eligible", x.eligible}});
        j["trials"] = std::move(t);
        return dump(j);
      },
      py::arg("modulus"), py::arg("a"), py::arg("b"), py::arg("trials"), py::arg("seed"), py::arg("tolerance") = 0.05,
      py::arg("threads") = 1);

  m.def(
      "max3ap_integers",
      [](std::int64_t n, std::int64_t width, std::uint64_t budget, unsigned threads) {
        return dump(to_json(max3ap_integers(n, width > 0 ? width : default_width_cap(n), options(budget, threads))));
      },
      py::arg("n"), py::arg("width_cap") = 0, py::arg("budget_nodes") = 50'000'000, py::arg("threads") = 1);
  m.def(
      "extremal_mod",
      [](std::int64_t n, std::int64_t modulus, const std::string& side, bool via_complement, std::uint64_t budget,
         unsigned threads) {
        const auto o = options(budget, threads);
        return dump(to_json(via_complement ? extremal_mod_via_complement(n, modulus, side_of(side), o)
                                           : extremal_mod(n, modulus, side_of(side), o)));
      },
      py::arg("n"), py::arg("modulus"), py::arg("side") = "max", py::arg("via_complement") = false,
      py::arg("budget_nodes") = 50'000'000, py::arg("threads") = 1);
  m.def(
      "classify_integers", [](const Elements& a) { return dump(to_json(classify_extremal(IntegerSet::from_unsorted(a)))); },
      py::arg("elements"));
  m.def(
      "classify_mod",
      [](std::int64_t n, const Elements& a) { return dump(to_json(classify_extremal(ResidueSet(n, a)))); },
      py::arg("modulus"), py::arg("elements"));
  m.def(
      "threshold_csv",
      [](std::int64_t n, std::uint64_t budget, unsigned threads) {
        return threshold_csv(threshold_scan(n, options(budget, threads)));
      },
      py::arg("modulus"), py::arg("budget_nodes") = 50'000'000, py::arg("threads") = 1);

  m.def(
      "rectify",
      [](std::int64_t n, const Elements& a, const std::string& coverage, unsigned threads) {
        return dump(to_json(rectify(ResidueSet(n, a), parse_rational(coverage), threads)));
      },
      py::arg("modulus"), py::arg("elements"), py::arg("coverage") = "1", py::arg("threads") = 1);

  m.def(
      "curve_m3_upper", [](const std::string& alpha) { return to_string(curve_m3_upper(parse_rational(alpha))); },
      py::arg("alpha"));
  m.def("cutoff", [](int digits) { return dump(to_json(ef_sharpness_cutoff(digits))); }, py::arg("digits") = 15);
  m.def(
      "closed_ledger",
      [](std::size_t max_iter) {
        Ledger l = seed_ledger();
        submultiplicative_closure(l, max_iter);
        return dump(ledger_to_json(l));
      },
      py::arg("max_iterations") = 64);
}
