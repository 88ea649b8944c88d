#include <Eigen/Dense>
#include <cmath>

#include "dsc/error.hpp"
#include "dsc/pde.hpp"

namespace dsc::pde {

ElectrostaticsProblem ElectrostaticsProblem::laplace_box() {
  ElectrostaticsProblem p;
  p.probes = {{0.5, 0.5}};
  return p;
}

ElectrostaticsProblem ElectrostaticsProblem::charged_box() {
  ElectrostaticsProblem p = laplace_box();
  p.patches.push_back({0.41, 0.59, 0.72, 0.88, 1e-7, 100.0});
  return p;
}

Grid ElectrostaticsProblem::grid() const { return Grid::closed(2, length, nodes); }

KernelParams ElectrostaticsProblem::kernel() const {
  const int m = half_bandwidth > 0 ? half_bandwidth : nodes - 1;
  return KernelParams::from_ratio(KernelFamily::RegularizedShannon, length / (nodes - 1),
                                  sigma_over_delta, m);
}

void ElectrostaticsProblem::validate() const {
  if (nodes < 3) throw ParameterError("electrostatics needs at least three nodes per axis");
  if (!(length > 0.0)) throw ParameterError("box length must be positive");
  for (const auto& p : patches) {
    if (!(p.eps_r > 0.0)) throw ParameterError("relative permittivity must be positive");
    if (!(p.x0 > 0.0 && p.x1 < length && p.y0 > 0.0 && p.y1 < length && p.x0 <= p.x1 &&
          p.y0 <= p.y1))
      throw ParameterError("charge patch must lie inside the open box");
  }
  for (const auto& q : probes)
    if (!(q[0] >= 0.0 && q[0] <= length && q[1] >= 0.0 && q[1] <= length))
      throw DomainError("probe lies outside the box");
  kernel().validate();
}

namespace {

BoundarySpec wall_spec() { return BoundarySpec::both(EdgeCondition::simply_supported()); }

}  // namespace

FieldReport solve_electrostatics(const ElectrostaticsProblem& problem) {
  problem.validate();
  const int n = problem.nodes;
  const int inner = n - 2;
  const Grid grid = problem.grid();
  const double h = grid.spacing(0);

  // Full field with wall values filled in.
  FieldSamples field(grid);
  auto at = [&](int i, int j) -> double& { return field.values[grid.index({i, j, 0})]; };
  for (int k = 1; k < n - 1; ++k) {
    at(0, k) = problem.v_left;
    at(n - 1, k) = problem.v_right;
    at(k, 0) = problem.v_bottom;
    at(k, n - 1) = problem.v_top;
  }
  at(0, 0) = 0.5 * (problem.v_left + problem.v_bottom);
  at(n - 1, 0) = 0.5 * (problem.v_right + problem.v_bottom);
  at(0, n - 1) = 0.5 * (problem.v_left + problem.v_top);
  at(n - 1, n - 1) = 0.5 * (problem.v_right + problem.v_top);

  // Antisymmetric images about each wall carry its potential:
  // V(x_{-i}) = 2 V(x_0) - V(x_i), which the fold puts on the wall column.
  const DiffMatrix d = build_diff_matrix(n, build_weights(problem.kernel(), 2), wall_spec());

  const int unknowns = inner * inner;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(unknowns, unknowns);
  Eigen::VectorXd rhs(unknowns);
  auto id = [inner](int i, int j) { return (j - 1) * inner + (i - 1); };
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 1; i < n - 1; ++i) {
      const int row = id(i, j);
      const double x = i * h;
      const double y = j * h;
      double source = 0.0;
      for (const auto& p : problem.patches)
        if (x >= p.x0 && x <= p.x1 && y >= p.y0 && y <= p.y1)
          source += p.rho / (kVacuumPermittivity * p.eps_r);
      double b = -source;
      for (int l = 0; l < n; ++l) {
        const double cx = d(i, l);
        if (l == 0 || l == n - 1) b -= cx * at(l, j);
        else a(row, id(l, j)) += cx;
        const double cy = d(j, l);
        if (l == 0 || l == n - 1) b -= cy * at(i, l);
        else a(row, id(i, l)) += cy;
      }
      rhs(row) = b;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) throw NumericError("electrostatics system is singular");
  const Eigen::VectorXd v = lu.solve(rhs);
  if (!v.allFinite()) throw NumericError("electrostatics solve produced non-finite values");
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) at(i, j) = v(id(i, j));

  FieldReport report{field, {}};
  for (const auto& q : problem.probes)
    report.probes.push_back({q[0], q[1], sample_potential(report, problem, q[0], q[1])});
  return report;
}

double sample_potential(const FieldReport& report, const ElectrostaticsProblem& problem,
                        double x, double y) {
  const Grid& grid = report.field.grid;
  const KernelParams params = problem.kernel();
  const auto wx = interpolation_weights(grid.axis(0), params, wall_spec(), x);
  const auto wy = interpolation_weights(grid.axis(1), params, wall_spec(), y);
  double acc = 0.0;
  for (auto [j, cy] : wy)
    for (auto [i, cx] : wx) acc += cx * cy * report.field.values[grid.index({i, j, 0})];
  return acc;
}

}  // namespace dsc::pde
