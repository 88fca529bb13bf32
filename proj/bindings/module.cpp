#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "algebroid_mech/cli.hpp"
#include "algebroid_mech/errors.hpp"
#include "algebroid_mech/gallery.hpp"
#include "algebroid_mech/lambert_w.hpp"

namespace py = pybind11;
using namespace algebroid_mech;

namespace
{

Mat stack(const Curve& c)
{
  Mat out(static_cast<Eigen::Index>(c.size()), c.size() == 0 ? 0 : c.points.front().size());
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    out.row(static_cast<Eigen::Index>(i)) = c.points[i].transpose();
  }
  return out;
}

py::tuple curveTuple(const Curve& c)
{
  return py::make_tuple(Vec(Eigen::Map<const Vec>(c.times.data(), static_cast<Eigen::Index>(c.times.size()))),
                        stack(c));
}

GallerySystem build(const std::string& id, const std::map<std::string, double>& params,
                    const std::string& omega)
{
  std::optional<OmegaSpec> spec;
  if (id == "rolling_ball")
  {
    const auto defaults = default_params(id);
    const auto it = params.find("Omega0");
    spec = OmegaSpec::parse(omega, it != params.end() ? it->second : defaults.at("Omega0"));
  }
  return instantiate(id, params, spec);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Hamiltonian mechanics on skew-symmetric algebroids";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<NumericFailure>(m, "NumericFailure", base.ptr());

  m.def("lambert_w0", &lambert_w0, py::arg("z"), "Principal branch of the Lambert W function.");
  m.def("gallery_ids", &gallery_ids);
  m.def("default_params", &default_params, py::arg("id"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command-line invocation and returns (exit_code, stdout, stderr).");

  py::class_<GallerySystem>(m, "GallerySystem")
      .def_readonly("id", &GallerySystem::id)
      .def_readonly("params", &GallerySystem::params)
      .def_readonly("q0", &GallerySystem::q0)
      .def_readonly("grid", &GallerySystem::grid)
      .def_readonly("horizon", &GallerySystem::horizon)
      .def_readonly("dt", &GallerySystem::dt)
      .def_property_readonly("box", [](const GallerySystem& gs) { return py::make_tuple(gs.box.lo, gs.box.hi); })
      .def_property_readonly("m", [](const GallerySystem& gs) { return gs.system.m(); })
      .def_property_readonly("n", [](const GallerySystem& gs) { return gs.system.n(); })
      .def_property_readonly("coordinates",
                             [](const GallerySystem& gs) { return gs.system.algebroid().chart().coordNames(); })
      .def_property_readonly("sections",
                             [](const GallerySystem& gs) {
                               std::vector<std::string> names;
                               for (const auto& entry : gs.sections)
                               {
                                 names.push_back(entry.first);
                               }
                               for (const auto& entry : gs.dualSections)
                               {
                                 names.push_back(entry.first);
                               }
                               return names;
                             })
      .def("section", [](const GallerySystem& gs, const std::string& name, const Vec& q) {
        return gallery_section(gs, name)(q);
      })
      .def("hamiltonian",
           [](const GallerySystem& gs, const Vec& q, const Vec& p) { return gs.system.hamiltonian(q, p); })
      .def("hamilton_rhs",
           [](const GallerySystem& gs, const Vec& state) { return hamilton_rhs(gs.system, 0.0, state); })
      .def("dissipation_rate",
           [](const GallerySystem& gs, const Vec& state) { return dissipation_rate(gs.system, state); })
      .def(
          "simulate",
          [](const GallerySystem& gs, const Vec& state, double t0, double t1, double dt) {
            return curveTuple(integrate_hamilton(gs.system, state, t0, t1, dt));
          },
          py::arg("state"), py::arg("t0"), py::arg("t1"), py::arg("dt") = 1e-3,
          "Integrates the Hamilton equations; returns (times, states).")
      .def(
          "hj_residual",
          [](const GallerySystem& gs, const std::string& name, const Vec& q) {
            const DualSection& s = gallery_section(gs, name);
            return s.space == DualSpace::VStar ? hj_residual(gs.system, s, q)
                                               : hj_residual_dual(gs.system, s, q);
          },
          py::arg("section"), py::arg("q"))
      .def(
          "verify_lift",
          [](const GallerySystem& gs, const std::string& name, double t1, double dt) {
            return verify_lift(gs.system, gallery_section(gs, name), gs.q0, 0.0, t1, dt, 1e-6)
                .max_deviation;
          },
          py::arg("section"), py::arg("t1"), py::arg("dt") = 1e-3,
          "Largest gap between the lifted base curve and the Hamilton flow from q0.")
      .def("reference_solution", [](const GallerySystem& gs, const std::string& name, double arg) {
        return reference_solution(gs, name, arg);
      });

  m.def("instantiate", &build, py::arg("id"), py::arg("params") = std::map<std::string, double>{},
        py::arg("omega") = "constant");
}
