#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krq/cli.hpp"
#include "krq/dimqp.hpp"
#include "krq/errors.hpp"
#include "krq/lpsf.hpp"
#include "krq/qsystem.hpp"
#include "krq/recurrence.hpp"

namespace py = pybind11;
using namespace krq;

namespace {

// Python ints from GMP values through their decimal form.
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational& v) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::str(to_string(v)));
}

py::list weight_table(const RootDatum& d, const std::map<Weight, BigInt>& t) {
  py::list out;
  for (const auto& [w, c] : t) out.append(py::make_tuple(py::tuple(py::cast(w.to_vector(d.rank()))), to_py(c)));
  return out;
}

std::vector<Rational> parse_point(const std::vector<std::string>& coords) {
  std::vector<Rational> y;
  for (const auto& s : coords) y.push_back(parse_rational(s));
  return y;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Kirillov-Reshetikhin characters, Q-systems and their recurrences";

  // pybind11 tries translators newest first, so the base class goes in before its subclasses.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UncoveredNode>(m, "UncoveredNode", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());

  m.def("rank", [](const std::string& type) { return root_datum(type)->rank(); });
  m.def("cartan_matrix", [](const std::string& type) {
    auto d = root_datum(type);
    std::vector<std::vector<int>> c(d->rank(), std::vector<int>(d->rank()));
    for (int i = 0; i < d->rank(); ++i)
      for (int j = 0; j < d->rank(); ++j) c[i][j] = d->cartan(i, j);
    return c;
  });

  m.def(
      "character",
      [](const std::string& type, int node, int mm) {
        auto d = root_datum(type);
        return weight_table(*d, char_sequence(*d, node, mm).back().comps);
      },
      py::arg("type"), py::arg("node"), py::arg("m"),
      "Q_m at a node in the basis of irreducible characters, as (highest weight, coefficient) pairs.");

  m.def(
      "dims",
      [](const std::string& type, int node, int mmax) {
        py::list out;
        for (const auto& v : dim_sequence(*root_datum(type), node, mmax)) out.append(to_py(v));
        return out;
      },
      py::arg("type"), py::arg("node"), py::arg("mmax"));

  m.def(
      "eval_sequence",
      [](const std::string& type, int node, const std::vector<std::string>& point, int mmax) {
        py::list out;
        for (const auto& v : eval_sequence(*root_datum(type), node, EvalPoint{parse_point(point)}, mmax))
          out.append(to_fraction(v));
        return out;
      },
      py::arg("type"), py::arg("node"), py::arg("point"), py::arg("mmax"));

  m.def(
      "operator_order", [](const std::string& type, int node) { return to_py(operator_order(*root_datum(type), node)); },
      py::arg("type"), py::arg("node"));
  m.def(
      "verification_bound",
      [](const std::string& type, int node) { return to_py(finite_verification_bound(*root_datum(type), node)); },
      py::arg("type"), py::arg("node"));

  m.def("degree", [](const std::string& type, int node) { return degree_e(*root_datum(type), node); },
        py::arg("type"), py::arg("node"));
  m.def(
      "h_vector",
      [](const std::string& type, int node) {
        py::list out;
        for (const auto& v : h_vector(*root_datum(type), node).h) out.append(to_py(v));
        return out;
      },
      py::arg("type"), py::arg("node"));
  m.def(
      "quasipolynomial",
      [](const std::string& type, int node) {
        auto q = quasipoly(*root_datum(type), node);
        py::list branches;
        for (const auto& p : q.polys) {
          py::list coeffs;
          for (const auto& c : p) coeffs.append(to_fraction(c));
          branches.append(coeffs);
        }
        return branches;
      },
      py::arg("type"), py::arg("node"),
      "Branch polynomials in m, one per residue of m modulo the period, coefficients from degree 0 up.");

  m.def(
      "lattice_point_character",
      [](const std::string& type, int node, int mm) {
        auto d = root_datum(type);
        return weight_table(*d, lpsf_character(*d, node, mm).comps);
      },
      py::arg("type"), py::arg("node"), py::arg("m"));

  m.def(
      "run",
      [](const std::string& cmd, const RunConfig& cfg) {
        auto r = run(cmd, cfg);
        return py::make_tuple(r.exit_code, r.output);
      },
      py::arg("command"), py::arg("config"), "Runs a CLI command; returns (exit code, JSON report).");

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("lie_type", &RunConfig::lie_type)
      .def_readwrite("nodes", &RunConfig::nodes)
      .def_readwrite("m", &RunConfig::m)
      .def_readwrite("m_max", &RunConfig::m_max)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("num_points", &RunConfig::num_points)
      .def_readwrite("seed", &RunConfig::seed)
      .def_property(
          "cache_dir",
          [](const RunConfig& c) { return c.cache_dir ? py::object(py::str(c.cache_dir->string())) : py::none(); },
          [](RunConfig& c, const std::optional<std::string>& p) {
            c.cache_dir = p ? std::optional<std::filesystem::path>(*p) : std::nullopt;
          })
      .def_readwrite("format", &RunConfig::format)
      .def_property(
          "corrected_tables", [](const RunConfig& c) { return c.table == TableVariant::Corrected; },
          [](RunConfig& c, bool v) { c.table = v ? TableVariant::Corrected : TableVariant::Printed; })
      .def_readwrite("truncation", &RunConfig::truncation)
      .def_readwrite("budget_seconds", &RunConfig::budget_seconds)
      .def_readwrite("conjectural", &RunConfig::conjectural);

  m.attr("EXIT_PASS") = static_cast<int>(kExitPass);
  m.attr("EXIT_FAIL") = static_cast<int>(kExitFail);
  m.attr("EXIT_USAGE") = static_cast<int>(kExitUsage);
  m.attr("EXIT_UNCOVERED") = static_cast<int>(kExitUncovered);
  m.attr("EXIT_INCOMPLETE") = static_cast<int>(kExitIncomplete);
}
