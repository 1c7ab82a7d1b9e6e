#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dt/cli.hpp"
#include "dt/error.hpp"
#include "dt/io.hpp"
#include "dt/render.hpp"

namespace py = pybind11;

namespace {

// Everything crosses the boundary as canonical JSON text.
std::string dump(const dt::Json& j) { return dt::canonical_dump(j); }

dt::DecoratedStructure structure(const std::string& text) {
  dt::DecoratedStructure ds = dt::structure_from_json(dt::parse_json(text));
  dt::require_valid(ds);
  return ds;
}

dt::QuasiTriangulation triangulation(const std::string& text) {
  const dt::Json j = dt::parse_json(text);
  return dt::triangulation_from_json(j.contains("triangulation") ? j.at("triangulation") : j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decorated Teichmueller coordinates for bordered surfaces (JSON in, JSON out)";

  static py::exception<dt::Error> error(m, "DtError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dt::Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.code(), e.what()).ptr());
    }
  });

  m.def("seed_triangulation", [](int g, int r, int s) {
    return dump(dt::to_json(dt::build_seed_triangulation({g, r, s})));
  });
  m.def("validate", [](const std::string& tri) { return dt::validate_quasi_triangulation(triangulation(tri)).violations; });
  m.def("uniform_structure", [](const std::string& tri, double value) {
    return dump(dt::to_json(dt::uniform_structure(triangulation(tri), value)));
  });
  m.def("flip", [](const std::string& ds, int e) { return dump(dt::to_json(dt::ptolemy_flip(structure(ds), e))); });
  m.def("simplicial_coordinates",
        [](const std::string& ds) { return dump(dt::edge_map(dt::simplicial_coordinates(structure(ds)))); });
  m.def("boundary_traces", [](const std::string& ds) { return dt::boundary_traces(structure(ds)); });
  m.def(
      "delaunay",
      [](const std::string& ds, bool first_negative) {
        const auto rule = first_negative ? dt::PivotRule::FirstNegative : dt::PivotRule::MostNegative;
        return dump(dt::to_json(dt::delaunay_cell(structure(ds), -1, rule)));
      },
      py::arg("structure"), py::arg("first_negative") = false);
  m.def(
      "solve",
      [](const std::string& tri, const std::string& coordinates, bool require_membership) {
        const dt::QuasiTriangulation qt = triangulation(tri);
        dt::SolveOptions opt;
        opt.require_membership = require_membership;
        const auto rep =
            dt::solve_inverse_coordinates(qt, dt::edge_vector_from_json(dt::parse_json(coordinates), qt.edge_count()), opt);
        return dump(dt::to_json(rep.ds));
      },
      py::arg("triangulation"), py::arg("coordinates"), py::arg("require_membership") = true);
  m.def("psi", [](const std::string& ds) { return dump(dt::to_json(dt::psi_boundary_points(structure(ds)))); });
  m.def("twist", [](const std::string& family, int i, double t) {
    return dump(dt::to_json(dt::circle_action_twist(dt::weighted_family_from_json(dt::parse_json(family)), i, t)));
  });
  m.def("arc_to_moduli", [](const std::string& family) {
    return dump(dt::to_json(dt::arc_to_moduli(dt::weighted_family_from_json(dt::parse_json(family)))));
  });
  m.def(
      "enumerate_arc_complex",
      [](int g, int r, int s, int max_triangulations) {
        return dump(dt::to_json(dt::enumerate_arc_complex({g, r, s}, max_triangulations)));
      },
      py::arg("g"), py::arg("r"), py::arg("s"), py::arg("max_triangulations") = 5000);
  m.def("render_triangulation", [](const std::string& tri) { return dt::render_triangulation_svg(triangulation(tri)); });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dt::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
