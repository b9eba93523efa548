#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "modbrauer/cli.hpp"
#include "modbrauer/golden.hpp"
#include "modbrauer/snf.hpp"

namespace py = pybind11;
using namespace modbrauer;

namespace {

IntMatrix to_matrix(const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Vector> from_matrix(const IntMatrix& m) {
  std::vector<Vector> out(m.rows(), Vector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

py::object big_to_py(const BigInt& v) {
  std::ostringstream os;
  os << v;
  return py::module_::import("builtins").attr("int")(os.str());
}

RunResult run_py(const std::string& spec, std::optional<int> genus, const std::string& mode, const std::string& output,
                 bool allow_low_genus) {
  CliRequest req;
  req.spec_source = spec;
  req.genus = genus;
  req.mode = parse_run_mode(mode);
  req.output = parse_output_format(output);
  req.override_genus_check = allow_low_genus;
  return run(req);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Brauer groups of moduli of principal bundles over curves";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<FinAbGroup>(m, "FinAbGroup")
      .def(py::init([](const Vector& orders) { return FinAbGroup::from_cyclic_orders(orders); }), py::arg("orders"),
           "Z/n_1 + ... + Z/n_r, canonicalized")
      .def_property_readonly("invariant_factors", &FinAbGroup::invariant_factors)
      .def_property_readonly("order", [](const FinAbGroup& g) { return big_to_py(g.order()); })
      .def_property_readonly("exponent", &FinAbGroup::exponent)
      .def("label", &FinAbGroup::label)
      .def("__eq__", [](const FinAbGroup& a, const FinAbGroup& b) { return a.isomorphic_to(b); })
      .def("__repr__", [](const FinAbGroup& g) { return "FinAbGroup(" + g.label() + ")"; });

  m.def("exterior_square", &exterior_square, py::arg("group"));
  m.def("schur_multiplier", &schur_multiplier_oracle, py::arg("group"),
        "H^2(A, C^*) by cochain linear algebra; |A| <= 16");
  m.def(
      "smith_normal_form",
      [](const std::vector<Vector>& rows) {
        const SmithForm f = smith_normal_form(to_matrix(rows));
        return py::make_tuple(from_matrix(f.U), from_matrix(f.S), from_matrix(f.V));
      },
      py::arg("matrix"), "(U, S, V) with U M V = S");

  m.def(
      "normalize", [](const std::string& s) { return render(parse_group(s, max_rank_from_env())); }, py::arg("spec"),
      "Parse a group description and return its raw-grammar form");

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("document", &RunResult::document)
      .def_readonly("exit_code", &RunResult::exit_code)
      .def_readonly("warnings", &RunResult::warnings);

  m.def("run", &run_py, py::arg("spec"), py::kw_only(), py::arg("genus") = py::none(), py::arg("mode") = "both",
        py::arg("output") = "json", py::arg("allow_low_genus") = false);

  m.def(
      "table",
      [](int genus) {
        py::list out;
        for (const GoldenRow& r : table_section7(genus)) {
          py::dict d;
          d["family"] = r.family;
          d["label"] = r.label;
          d["quantity"] = r.quantity;
          d["spec"] = r.spec;
          d["expected"] = r.expected;
          d["got"] = r.got;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("genus") = 3);
}
