// Python bindings: thin wrappers over the public C++ API.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rectpath/jsonio.hpp"
#include "rectpath/oracle.hpp"

namespace py = pybind11;
using namespace rectpath;

namespace {

Domain domain_from_json(const std::string& text) {
  auto r = load_domain_json(text);
  if (auto* err = std::get_if<DomainError>(&r))
    throw py::value_error(err->kind + ": " + err->detail);
  return std::get<Domain>(std::move(r));
}

Objective parse_objective(const std::string& s) {
  if (s == "mls") return Objective::MLS;
  if (s == "sml") return Objective::SML;
  if (s == "cost") return Objective::Cost;
  if (s == "ml") return Objective::ML;
  throw py::value_error("unknown objective: " + s);
}

}  // namespace

PYBIND11_MODULE(_rectpath, m) {
  m.doc() = "Rectilinear shortest paths among rectilinear obstacles";

  py::class_<Domain>(m, "Domain")
      .def_static("from_json", &domain_from_json, py::arg("text"))
      .def_property_readonly("n", &Domain::n)
      .def_property_readonly("h", &Domain::h)
      .def("to_json", [](const Domain& d) { return domain_to_json(d); })
      .def("contains",
           [](const Domain& d, i64 x, i64 y) {
             return d.classify_raycast({x, y}) != Containment::Outside;
           })
      .def("__repr__", [](const Domain& d) {
        return "<Domain n=" + std::to_string(d.n()) +
               " h=" + std::to_string(d.h()) + ">";
      });

  m.def(
      "oracle_measures",
      [](const Domain& d, std::pair<i64, i64> s, std::pair<i64, i64> t,
         const std::string& objective) {
        Measure mm = oracle::measures(d, {s.first, s.second},
                                      {t.first, t.second},
                                      parse_objective(objective));
        return std::make_pair(mm.len, mm.links);
      },
      py::arg("domain"), py::arg("s"), py::arg("t"),
      py::arg("objective") = "mls");

  m.def(
      "oracle_frontier",
      [](const Domain& d, std::pair<i64, i64> s, std::pair<i64, i64> t) {
        std::vector<std::pair<i64, i64>> out;
        for (Measure mm : oracle::frontier(d, {s.first, s.second},
                                           {t.first, t.second}))
          out.emplace_back(mm.len, mm.links);
        return out;
      },
      py::arg("domain"), py::arg("s"), py::arg("t"));
}
