#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dsc/cli.hpp"
#include "dsc/delta_zoo.hpp"
#include "dsc/discretization.hpp"
#include "dsc/error.hpp"
#include "dsc/kernel.hpp"
#include "dsc/pde.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) {
  Array a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

dsc::BoundarySpec boundary_from(const std::string& kind, double k1) {
  switch (dsc::parse_boundary_kind(kind)) {
    case dsc::BoundaryKind::Periodic: return dsc::BoundarySpec::periodic();
    case dsc::BoundaryKind::Clamped: return dsc::BoundarySpec::both(dsc::EdgeCondition::clamped());
    case dsc::BoundaryKind::SimplySupported:
      return dsc::BoundarySpec::both(dsc::EdgeCondition::simply_supported());
    case dsc::BoundaryKind::TransverselySupported:
      return dsc::BoundarySpec::both(dsc::EdgeCondition::transversely_supported(k1));
    case dsc::BoundaryKind::General: break;
  }
  throw dsc::UnsupportedError("general boundaries need explicit coefficients");
}

/// Dense N×N operator as a 2-D array.
Array matrix(int nodes, const dsc::KernelParams& p, int q, const std::string& boundary,
             double k1) {
  const auto m = dsc::build_diff_matrix(nodes, dsc::build_weights(p, q), boundary_from(boundary, k1));
  const auto d = m.dense();
  Array a({nodes, nodes});
  std::copy(d.begin(), d.end(), a.mutable_data());
  return a;
}

Array derivative(const Array& values, const dsc::KernelParams& p, int q,
                 const std::string& boundary, double k1) {
  if (values.ndim() != 1) throw dsc::ArgumentError("expected a 1-D array");
  const auto n = static_cast<int>(values.shape(0));
  dsc::Grid g({dsc::Axis{0.0, p.delta, n}});
  dsc::FieldSamples f(g, std::vector<double>(values.data(), values.data() + n));
  const auto m = dsc::build_diff_matrix(n, dsc::build_weights(p, q), boundary_from(boundary, k1));
  return to_array(dsc::apply_derivative(f, 0, m).values);
}

double interp(const Array& values, const dsc::KernelParams& p, double x, double origin,
              const std::string& boundary, double k1) {
  if (values.ndim() != 1) throw dsc::ArgumentError("expected a 1-D array");
  const auto n = static_cast<int>(values.shape(0));
  dsc::Grid g({dsc::Axis{origin, p.delta, n}});
  dsc::FieldSamples f(g, std::vector<double>(values.data(), values.data() + n));
  return dsc::interpolate(f, p, boundary_from(boundary, k1), x);
}

}  // namespace

PYBIND11_MODULE(_dsc, m) {
  m.doc() = "Discrete singular convolution kernels, operators and solvers";

  auto base = py::register_exception<dsc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<dsc::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<dsc::UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<dsc::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<dsc::DegenerateBoundaryError>(m, "DegenerateBoundaryError", base.ptr());
  py::register_exception<dsc::ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<dsc::NumericError>(m, "NumericError", base.ptr());
  py::register_exception<dsc::GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<dsc::DivergenceError>(m, "DivergenceError", base.ptr());

  py::enum_<dsc::KernelFamily>(m, "KernelFamily")
      .value("RegularizedShannon", dsc::KernelFamily::RegularizedShannon)
      .value("RegularizedDirichlet", dsc::KernelFamily::RegularizedDirichlet)
      .value("RegularizedModifiedDirichlet", dsc::KernelFamily::RegularizedModifiedDirichlet)
      .value("RegularizedLagrange", dsc::KernelFamily::RegularizedLagrange)
      .value("DeLaValleePoussin", dsc::KernelFamily::DeLaValleePoussin);

  py::class_<dsc::KernelParams>(m, "KernelParams")
      .def(py::init([](dsc::KernelFamily family, double delta, double sigma, int half_bandwidth,
                       int order) {
             dsc::KernelParams p{family, delta, sigma, half_bandwidth, order};
             if (order <= 0) p.order = std::max(half_bandwidth, 50);
             p.validate();
             return p;
           }),
           py::arg("family") = dsc::KernelFamily::RegularizedShannon, py::arg("delta") = 1.0,
           py::arg("sigma") = 3.2, py::arg("half_bandwidth") = 1, py::arg("order") = 0)
      .def_static("from_ratio", &dsc::KernelParams::from_ratio, py::arg("family"),
                  py::arg("delta"), py::arg("sigma_over_delta"), py::arg("half_bandwidth"),
                  py::arg("order") = 0)
      .def_readwrite("family", &dsc::KernelParams::family)
      .def_readwrite("delta", &dsc::KernelParams::delta)
      .def_readwrite("sigma", &dsc::KernelParams::sigma)
      .def_readwrite("half_bandwidth", &dsc::KernelParams::half_bandwidth)
      .def_readwrite("order", &dsc::KernelParams::order)
      .def("ratio", &dsc::KernelParams::ratio)
      .def("validate", &dsc::KernelParams::validate);

  m.def("eval_kernel", &dsc::eval_kernel, py::arg("params"), py::arg("offset"));
  m.def("eval_derivative", &dsc::eval_derivative, py::arg("params"), py::arg("q"),
        py::arg("offset"));
  m.def("normalization", &dsc::normalization, py::arg("params"));
  m.def(
      "advise_parameters",
      [](double eta, double bandlimit, double delta) {
        const auto a = dsc::advise_parameters(eta, bandlimit, delta);
        return py::make_tuple(a.r_min, a.m_min);
      },
      py::arg("eta"), py::arg("bandlimit"), py::arg("delta"),
      "Returns (r_min, m_min).");
  m.def(
      "build_weights",
      [](const dsc::KernelParams& p, int q) { return to_array(dsc::build_weights(p, q).weights); },
      py::arg("params"), py::arg("q"), "Weights c_j for j = -M..M.");
  m.def(
      "boundary_coeffs",
      [](const std::string& kind, const dsc::KernelParams& p, double k1) {
        return to_array(dsc::boundary_coeffs(boundary_from(kind, k1).left, dsc::Edge::Left, p));
      },
      py::arg("kind"), py::arg("params"), py::arg("k1") = 0.0);
  m.def("diff_matrix", &matrix, py::arg("nodes"), py::arg("params"), py::arg("q"),
        py::arg("boundary") = "periodic", py::arg("k1") = 0.0);
  m.def("apply_derivative", &derivative, py::arg("values"), py::arg("params"), py::arg("q"),
        py::arg("boundary") = "periodic", py::arg("k1") = 0.0);
  m.def("interpolate", &interp, py::arg("values"), py::arg("params"), py::arg("x"),
        py::arg("origin") = 0.0, py::arg("boundary") = "periodic", py::arg("k1") = 0.0);

  m.def(
      "eval_delta",
      [](const std::string& kind, double param, double x) {
        dsc::zoo::DeltaSequence s;
        s.kind = dsc::zoo::parse_delta_kind(kind);
        if (s.kind == dsc::zoo::DeltaKind::DilatedDensity) s = dsc::zoo::DeltaSequence::gauss_density();
        return dsc::zoo::eval_delta(s, param, x);
      },
      py::arg("kind"), py::arg("param"), py::arg("x"));
  m.def(
      "convergence_probe",
      [](const std::string& kind, const std::vector<double>& schedule,
         const std::function<double(double)>& phi, double lo, double hi) {
        dsc::zoo::DeltaSequence s;
        s.kind = dsc::zoo::parse_delta_kind(kind);
        if (s.kind == dsc::zoo::DeltaKind::DilatedDensity) s = dsc::zoo::DeltaSequence::gauss_density();
        return dsc::zoo::convergence_probe(s, schedule, phi, {lo, hi, 0.0});
      },
      py::arg("kind"), py::arg("schedule"), py::arg("test_fn"), py::arg("lo") = -10.0,
      py::arg("hi") = 10.0);

  m.def(
      "waveguide_eigenvalues",
      [](int intervals, int half_bandwidth, double sigma_over_delta, int modes,
         const std::string& shape) {
        const auto s = dsc::pde::parse_guide_shape(shape);
        auto p = s == dsc::pde::GuideShape::Square
                     ? dsc::pde::WaveguideProblem::square(
                           intervals, half_bandwidth > 0 ? half_bandwidth : intervals,
                           sigma_over_delta, modes)
                     : dsc::pde::WaveguideProblem::shaped(s, intervals, sigma_over_delta,
                                                          half_bandwidth, modes);
        py::gil_scoped_release release;
        return dsc::pde::solve_waveguide(p).eigenvalues;
      },
      py::arg("intervals") = 24, py::arg("half_bandwidth") = 0,
      py::arg("sigma_over_delta") = 3.2, py::arg("modes") = 20, py::arg("shape") = "square");
  m.def(
      "box_potential",
      [](bool laplace_only, int nodes, const std::vector<std::array<double, 2>>& probes) {
        auto p = laplace_only ? dsc::pde::ElectrostaticsProblem::laplace_box()
                              : dsc::pde::ElectrostaticsProblem::charged_box();
        p.nodes = nodes;
        p.probes = probes;
        const auto r = dsc::pde::solve_electrostatics(p);
        Array field({nodes, nodes});
        std::copy(r.field.values.begin(), r.field.values.end(), field.mutable_data());
        std::vector<double> values;
        for (const auto& q : r.probes) values.push_back(q.value);
        return py::make_tuple(field, values);
      },
      py::arg("laplace_only") = true, py::arg("nodes") = 32,
      py::arg("probes") = std::vector<std::array<double, 2>>{{0.5, 0.5}},
      "Returns (field indexed [y, x], probe values).");
  m.def(
      "wave_errors",
      [](int dims, int nodes, int half_bandwidth, double sigma_over_delta, double t_end,
         double report_every, double dt) {
        auto p = dsc::pde::WavePropagationProblem::cube(
            dims, nodes, half_bandwidth > 0 ? half_bandwidth : nodes, sigma_over_delta, t_end,
            report_every);
        p.dt = dt;
        py::gil_scoped_release release;
        const auto tr = dsc::pde::propagate_wave(p);
        return std::make_pair(tr.times, tr.linf_error);
      },
      py::arg("dims") = 1, py::arg("nodes") = 24, py::arg("half_bandwidth") = 0,
      py::arg("sigma_over_delta") = 3.2, py::arg("t_end") = 1.0, py::arg("report_every") = 1.0,
      py::arg("dt") = 0.0, "Returns (times, L-infinity errors).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = dsc::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Returns (exit code, stdout text, stderr text).");
}
