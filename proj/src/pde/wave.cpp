#include <algorithm>
#include <cmath>
#include <string>

#include "dsc/error.hpp"
#include "dsc/pde.hpp"

namespace dsc::pde {

WavePropagationProblem WavePropagationProblem::cube(int dims, int nodes, int half_bandwidth,
                                                    double sigma_over_delta, double t_end,
                                                    double report_every) {
  WavePropagationProblem p;
  p.dims = dims;
  p.nodes = nodes;
  p.kernel = KernelParams::from_ratio(KernelFamily::RegularizedShannon, kGuideLength / nodes,
                                      sigma_over_delta, half_bandwidth);
  p.t_end = t_end;
  p.report_every = report_every;
  return p;
}

Grid WavePropagationProblem::grid() const { return Grid::periodic(dims, kGuideLength, nodes); }

double WavePropagationProblem::omega() const {
  double k2 = 0.0;
  for (int a = 0; a < dims; ++a) k2 += alpha[static_cast<std::size_t>(a)] * alpha[static_cast<std::size_t>(a)];
  return std::sqrt(k2 / eps_nu);
}

void WavePropagationProblem::validate() const {
  if (dims < 1 || dims > 3) throw ParameterError("wave propagation supports 1 to 3 dimensions");
  if (nodes < 2) throw ParameterError("wave grid needs at least two nodes per axis");
  if (!(eps_nu > 0.0)) throw ParameterError("eps_nu must be positive");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ParameterError("time step must be nonnegative");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ParameterError("t_end must be nonnegative");
  if (!(report_every > 0.0)) throw ParameterError("report interval must be positive");
  kernel.validate();
  const double h = kGuideLength / nodes;
  if (std::abs(kernel.delta - h) > 1e-12 * h)
    throw ArgumentError("kernel spacing does not match the grid spacing");
  // Wavenumbers must be multiples of 2π/(10π) for a grid-periodic field.
  for (int a = 0; a < dims; ++a) {
    const double k = alpha[static_cast<std::size_t>(a)] * 5.0;
    if (std::abs(k - std::round(k)) > 1e-9)
      throw ParameterError("wavenumbers must be integer multiples of 1/5");
  }
}

namespace {

double gershgorin(const DiffMatrix& d) {
  double bound = 0.0;
  for (int r = 0; r < d.size(); ++r) {
    double s = 0.0;
    for (auto [c, v] : d.row(r)) s += std::abs(v);
    bound = std::max(bound, s);
  }
  return bound;
}

}  // namespace

double stable_time_step(const WavePropagationProblem& problem) {
  problem.validate();
  const DiffMatrix d =
      build_diff_matrix(problem.nodes, build_weights(problem.kernel, 2), BoundarySpec::periodic());
  const double rho = std::sqrt(problem.dims * gershgorin(d) / problem.eps_nu);
  return 0.5 * 2.8 / rho;
}

namespace {

struct WaveSolver {
  const WavePropagationProblem& p;
  Grid grid;
  DiffMatrix d2;
  DiffMatrix d1;
  double omega;

  explicit WaveSolver(const WavePropagationProblem& problem)
      : p(problem),
        grid(problem.grid()),
        d2(build_diff_matrix(problem.nodes, build_weights(problem.kernel, 2),
                             BoundarySpec::periodic())),
        d1(build_diff_matrix(problem.nodes, build_weights(problem.kernel, 1),
                             BoundarySpec::periodic())),
        omega(problem.omega()) {}

  double phase(std::size_t f) const {
    const auto ijk = grid.unravel(f);
    double s = 0.0;
    for (int a = 0; a < p.dims; ++a)
      s += p.alpha[static_cast<std::size_t>(a)] * grid.axis(a).coord(ijk[static_cast<std::size_t>(a)]);
    return s;
  }

  /// out = ∇²w / εν.
  void laplacian(const FieldSamples& w, FieldSamples& out) const {
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (int a = 0; a < p.dims; ++a) {
      const FieldSamples t = apply_derivative(w, a, d2);
      for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += t.values[i];
    }
    const double s = 1.0 / p.eps_nu;
    for (double& v : out.values) v *= s;
  }

  double error(const FieldSamples& w, double t) const {
    double e = 0.0;
    for (std::size_t f = 0; f < w.values.size(); ++f)
      e = std::max(e, std::abs(w.values[f] - std::sin(phase(f) + omega * t)));
    return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
  }

  double energy(const FieldSamples& w, const FieldSamples& v) const {
    double cell = 1.0;
    for (int a = 0; a < p.dims; ++a) cell *= grid.spacing(a);
    double e = 0.0;
    for (double x : v.values) e += x * x;
    for (int a = 0; a < p.dims; ++a) {
      const FieldSamples g = apply_derivative(w, a, d1);
      double s = 0.0;
      for (double x : g.values) s += x * x;
      e += s / p.eps_nu;
    }
    return e * cell;
  }
};

}  // namespace

ErrorTrace propagate_wave(const WavePropagationProblem& problem) {
  problem.validate();
  const WaveSolver solver(problem);
  const double dt_max = problem.dt > 0.0 ? problem.dt : stable_time_step(problem);

  FieldSamples w(solver.grid);
  FieldSamples v(solver.grid);
  for (std::size_t f = 0; f < w.values.size(); ++f) {
    const double ph = solver.phase(f);
    w.values[f] = std::sin(ph);
    v.values[f] = solver.omega * std::cos(ph);
  }

  ErrorTrace trace;
  trace.dt = dt_max;
  auto record = [&](double t) {
    const double e = solver.error(w, t);
    if (!(e <= 1e3))
      throw DivergenceError("wave solution diverged at t=" + std::to_string(t), t);
    trace.times.push_back(t);
    trace.linf_error.push_back(e);
    if (problem.track_energy) trace.energy.push_back(solver.energy(w, v));
  };
  record(0.0);

  FieldSamples kw1(solver.grid), kw2(solver.grid), kw3(solver.grid), kw4(solver.grid);
  FieldSamples kv1(solver.grid), kv2(solver.grid), kv3(solver.grid), kv4(solver.grid);
  FieldSamples tmp(solver.grid);
  const std::size_t size = w.values.size();

  double t = 0.0;
  long report = 1;
  while (t < problem.t_end - 1e-12 * std::max(1.0, problem.t_end)) {
    const double target = std::min(problem.t_end, report * problem.report_every);
    ++report;
    const double span = target - t;
    if (span <= 0.0) continue;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt_max - 1e-9)));
    const double dt = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      // Stage 1.
      kw1.values = v.values;
      solver.laplacian(w, kv1);
      // Stage 2.
      for (std::size_t i = 0; i < size; ++i) tmp.values[i] = w.values[i] + 0.5 * dt * kw1.values[i];
      for (std::size_t i = 0; i < size; ++i) kw2.values[i] = v.values[i] + 0.5 * dt * kv1.values[i];
      solver.laplacian(tmp, kv2);
      // Stage 3.
      for (std::size_t i = 0; i < size; ++i) tmp.values[i] = w.values[i] + 0.5 * dt * kw2.values[i];
      for (std::size_t i = 0; i < size; ++i) kw3.values[i] = v.values[i] + 0.5 * dt * kv2.values[i];
      solver.laplacian(tmp, kv3);
      // Stage 4.
      for (std::size_t i = 0; i < size; ++i) tmp.values[i] = w.values[i] + dt * kw3.values[i];
      for (std::size_t i = 0; i < size; ++i) kw4.values[i] = v.values[i] + dt * kv3.values[i];
      solver.laplacian(tmp, kv4);
      for (std::size_t i = 0; i < size; ++i) {
        w.values[i] += dt / 6.0 * (kw1.values[i] + 2.0 * kw2.values[i] + 2.0 * kw3.values[i] + kw4.values[i]);
        v.values[i] += dt / 6.0 * (kv1.values[i] + 2.0 * kv2.values[i] + 2.0 * kv3.values[i] + kv4.values[i]);
      }
      ++trace.steps;
      if (!std::isfinite(w.values[0]) || std::abs(w.values[0]) > 1e3) {
        const double tb = t + (s + 1) * dt;
        throw DivergenceError("wave solution diverged at t=" + std::to_string(tb), tb);
      }
    }
    t = target;
    record(t);
  }
  return trace;
}

}  // namespace dsc::pde
