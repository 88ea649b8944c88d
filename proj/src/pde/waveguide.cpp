#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "dsc/error.hpp"
#include "dsc/pde.hpp"

namespace dsc::pde {

std::string_view to_string(GuideShape shape) {
  switch (shape) {
    case GuideShape::Square: return "square";
    case GuideShape::TShape: return "t";
    case GuideShape::EShape: return "e";
    case GuideShape::Custom: return "custom";
  }
  return "unknown";
}

GuideShape parse_guide_shape(std::string_view name) {
  if (name == "square") return GuideShape::Square;
  if (name == "t" || name == "T" || name == "t-shape") return GuideShape::TShape;
  if (name == "e" || name == "E" || name == "e-shape") return GuideShape::EShape;
  throw ParameterError("unknown waveguide shape '" + std::string(name) + "'");
}

std::vector<Rect> shape_rects(GuideShape shape) {
  switch (shape) {
    case GuideShape::Square:
      return {{0.0, 1.0, 0.0, 1.0}};
    case GuideShape::TShape:
      return {{0.0, 1.0, 0.6, 1.0}, {0.33, 0.67, 0.0, 0.6}};
    case GuideShape::EShape:
      return {{0.0, 0.2, 0.0, 1.0},
              {0.0, 1.0, 0.0, 0.2},
              {0.0, 1.0, 0.4, 0.6},
              {0.0, 1.0, 0.8, 1.0}};
    case GuideShape::Custom:
      break;
  }
  throw ArgumentError("custom shapes carry their own mask");
}

std::vector<bool> shape_mask(const std::vector<Rect>& rects, int nodes) {
  const double h = 1.0 / (nodes - 1);
  auto inside = [&](double x, double y) {
    return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) {
      return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
    });
  };
  std::vector<bool> mask(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    for (int i = 0; i < nodes; ++i) {
      const double x = i * h;
      const double y = j * h;
      mask[static_cast<std::size_t>(j) * static_cast<std::size_t>(nodes) + static_cast<std::size_t>(i)] =
          inside(x - h / 2, y - h / 2) && inside(x + h / 2, y - h / 2) &&
          inside(x - h / 2, y + h / 2) && inside(x + h / 2, y + h / 2);
    }
  }
  return mask;
}

WaveguideProblem WaveguideProblem::square(int intervals, int half_bandwidth,
                                          double sigma_over_delta, int n_modes) {
  if (intervals < 2) throw ParameterError("waveguide needs at least two intervals per side");
  Grid grid = Grid::closed(2, kGuideLength, intervals + 1);
  return WaveguideProblem{.grid = grid,
                          .kernel = KernelParams::from_ratio(KernelFamily::RegularizedShannon,
                                                             grid.spacing(0), sigma_over_delta,
                                                             half_bandwidth),
                          .n_modes = n_modes};
}

WaveguideProblem WaveguideProblem::shaped(GuideShape shape, int intervals,
                                          double sigma_over_delta, int half_bandwidth,
                                          int n_modes) {
  if (shape == GuideShape::Square)
    return square(intervals, half_bandwidth > 0 ? half_bandwidth : intervals, sigma_over_delta,
                  n_modes);
  if (intervals < 2) throw ParameterError("waveguide needs at least two intervals per side");
  Grid grid = Grid::closed(2, kGuideLength, intervals + 1);
  auto mask = shape_mask(shape_rects(shape), intervals + 1);
  if (std::find(mask.begin(), mask.end(), true) == mask.end())
    throw GeometryError("shape leaves no interior node at this resolution");
  grid.set_mask(std::move(mask));
  return WaveguideProblem{
      .grid = grid,
      .kernel = KernelParams::from_ratio(KernelFamily::RegularizedShannon, grid.spacing(0),
                                         sigma_over_delta,
                                         half_bandwidth > 0 ? half_bandwidth : intervals),
      .n_modes = n_modes,
      .shape = shape};
}

void WaveguideProblem::validate() const {
  if (grid.dims() != 2) throw ArgumentError("waveguide grid must be 2-D");
  if (grid.count(0) != grid.count(1) ||
      std::abs(grid.spacing(0) - grid.spacing(1)) > 1e-12 * grid.spacing(0))
    throw ArgumentError("waveguide grid must be square and uniform");
  if (grid.count(0) < 3) throw ArgumentError("waveguide grid has no interior nodes");
  kernel.validate();
  if (std::abs(kernel.delta - grid.spacing(0)) > 1e-12 * grid.spacing(0))
    throw ArgumentError("kernel spacing does not match the grid spacing");
  if (n_modes < 1) throw ArgumentError("at least one mode must be requested");
  if (keep_modes < 0 || keep_modes > n_modes) throw ArgumentError("keep_modes out of range");
  if (!(eps_nu > 0.0)) throw ParameterError("eps_nu must be positive");
}

std::vector<double> square_guide_spectrum(int count) {
  // (m² + n²)/100 ≤ bound for the first `count` values needs m, n ≤ count.
  std::vector<double> all;
  const int top = static_cast<int>(std::ceil(std::sqrt(2.0 * count))) + 2;
  for (int m = 1; m <= top; ++m)
    for (int n = 1; n <= top; ++n) all.push_back((m * m + n * n) / 100.0);
  std::sort(all.begin(), all.end());
  all.resize(static_cast<std::size_t>(std::min<int>(count, static_cast<int>(all.size()))));
  return all;
}

namespace {

/// Interior block of the SimplySupported q=2 operator for a run of `len`
/// unknowns between two wall nodes.
const Eigen::MatrixXd& segment_operator(std::map<int, Eigen::MatrixXd>& cache, int len,
                                        const WeightTable& table) {
  auto it = cache.find(len);
  if (it != cache.end()) return it->second;
  const DiffMatrix d = build_diff_matrix(len + 2, table,
                                         BoundarySpec::both(EdgeCondition::simply_supported()));
  Eigen::MatrixXd block(len, len);
  for (int r = 0; r < len; ++r)
    for (int c = 0; c < len; ++c) block(r, c) = d(r + 1, c + 1);
  return cache.emplace(len, std::move(block)).first->second;
}

void check_connected(const std::vector<int>& id, int n) {
  const auto total = static_cast<int>(std::count_if(id.begin(), id.end(), [](int v) { return v >= 0; }));
  if (total == 0) throw GeometryError("waveguide mask has no interior nodes");
  std::vector<bool> seen(id.size(), false);
  std::queue<int> todo;
  const auto start = static_cast<int>(std::find_if(id.begin(), id.end(), [](int v) { return v >= 0; }) - id.begin());
  todo.push(start);
  seen[static_cast<std::size_t>(start)] = true;
  int reached = 0;
  while (!todo.empty()) {
    const int f = todo.front();
    todo.pop();
    ++reached;
    const int i = f % n;
    const int j = f / n;
    const std::array<std::array<int, 2>, 4> nb{{{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}}};
    for (auto [a, b] : nb) {
      if (a < 0 || b < 0 || a >= n || b >= n) continue;
      const int g = b * n + a;
      if (id[static_cast<std::size_t>(g)] >= 0 && !seen[static_cast<std::size_t>(g)]) {
        seen[static_cast<std::size_t>(g)] = true;
        todo.push(g);
      }
    }
  }
  if (reached != total) throw GeometryError("waveguide interior is not connected");
}

}  // namespace

EigenReport solve_waveguide(const WaveguideProblem& problem) {
  problem.validate();
  const Grid& grid = problem.grid;
  const int n = grid.count(0);

  // Unknown numbering over interior nodes, axis 0 fastest.
  std::vector<int> id(grid.size(), -1);
  int unknowns = 0;
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 1; i < n - 1; ++i) {
      const std::size_t f = grid.index({i, j, 0});
      if (grid.interior(f)) id[f] = unknowns++;
    }
  }
  check_connected(id, n);
  if (problem.n_modes > unknowns)
    throw ArgumentError("requested " + std::to_string(problem.n_modes) + " modes but only " +
                        std::to_string(unknowns) + " interior nodes exist");

  const WeightTable table = build_weights(problem.kernel, 2);
  std::map<int, Eigen::MatrixXd> cache;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(unknowns, unknowns);

  // Each maximal run of interior nodes along a line gets its own folded
  // operator with walls at the two bounding nodes.
  for (int axis = 0; axis < 2; ++axis) {
    for (int line = 1; line < n - 1; ++line) {
      auto node = [&](int s) {
        return axis == 0 ? id[grid.index({s, line, 0})] : id[grid.index({line, s, 0})];
      };
      int s = 1;
      while (s < n - 1) {
        if (node(s) < 0) {
          ++s;
          continue;
        }
        int e = s;
        while (e + 1 < n - 1 && node(e + 1) >= 0) ++e;
        const int len = e - s + 1;
        const Eigen::MatrixXd& block = segment_operator(cache, len, table);
        for (int r = 0; r < len; ++r)
          for (int c = 0; c < len; ++c) a(node(s + r), node(s + c)) -= block(r, c);
        s = e + 1;
      }
    }
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, problem.keep_modes > 0);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  std::vector<int> order(static_cast<std::size_t>(unknowns));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return lambda(x).real() < lambda(y).real(); });

  EigenReport report;
  report.unknowns = static_cast<std::size_t>(unknowns);
  for (int k = 0; k < problem.n_modes; ++k) {
    const std::complex<double> l = lambda(order[static_cast<std::size_t>(k)]);
    const double imag = std::abs(l.imag());
    report.max_imag = std::max(report.max_imag, imag);
    if (imag > 1e-8 * std::max(std::abs(l), 1e-300))
      throw NumericError("eigenvalue " + std::to_string(k + 1) + " has an imaginary part " +
                         std::to_string(imag));
    report.eigenvalues.push_back(l.real());
    report.cutoff.push_back(std::sqrt(std::max(l.real(), 0.0) / problem.eps_nu));
    double alpha = std::numeric_limits<double>::quiet_NaN();
    if (problem.omega) {
      const double a2 = *problem.omega * *problem.omega * problem.eps_nu - l.real();
      if (a2 >= 0.0) alpha = std::sqrt(a2);
    }
    report.alpha.push_back(alpha);
  }
  if (!grid.mask()) {
    report.analytic = square_guide_spectrum(problem.n_modes);
    // Scale from [0,10π] to the actual side length.
    const double side = grid.spacing(0) * (n - 1);
    const double s = (kGuideLength / side) * (kGuideLength / side);
    for (std::size_t k = 0; k < report.analytic.size(); ++k) {
      report.analytic[k] *= s;
      report.abs_error.push_back(std::abs(report.eigenvalues[k] - report.analytic[k]));
    }
  }
  for (int k = 0; k < problem.keep_modes; ++k) {
    const Eigen::VectorXcd v = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    FieldSamples field(Grid::closed(2, grid.spacing(0) * (n - 1), n));
    // Normalize to unit max and a positive largest entry.
    Eigen::Index arg = 0;
    v.real().cwiseAbs().maxCoeff(&arg);
    const double scale = v(arg).real();
    for (std::size_t f = 0; f < id.size(); ++f)
      if (id[f] >= 0) field.values[f] = v(id[f]).real() / scale;
    report.modes.push_back(std::move(field));
  }
  return report;
}

}  // namespace dsc::pde
