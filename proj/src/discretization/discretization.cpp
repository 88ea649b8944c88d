#include "dsc/discretization.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "dsc/error.hpp"
#include "fold.hpp"

namespace dsc {

WeightTable build_weights(const KernelParams& params, int q) {
  params.validate();
  if (q < 0 || q > kMaxDerivativeOrder) throw UnsupportedError("derivative order must lie in 0..4");
  WeightTable t;
  t.order = q;
  t.half_bandwidth = params.half_bandwidth;
  t.params = params;
  const int m = params.half_bandwidth;
  t.weights.resize(static_cast<std::size_t>(2 * m + 1));
  for (int j = 0; j <= m; ++j) {
    const double w = eval_derivative(params, q, j * params.delta);
    t.weights[static_cast<std::size_t>(m + j)] = w;
    // Parity of the even kernel: c_{-j} = (-1)^q c_j.
    t.weights[static_cast<std::size_t>(m - j)] = (q % 2) ? -w : w;
  }
  if (q % 2) t.weights[static_cast<std::size_t>(m)] = 0.0;
  return t;
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Clamped: return "clamped";
    case BoundaryKind::SimplySupported: return "simply-supported";
    case BoundaryKind::TransverselySupported: return "transversely-supported";
    case BoundaryKind::General: return "general";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  for (auto k : {BoundaryKind::Periodic, BoundaryKind::Clamped, BoundaryKind::SimplySupported,
                 BoundaryKind::TransverselySupported, BoundaryKind::General}) {
    if (name == to_string(k)) return k;
  }
  if (name == "dirichlet") return BoundaryKind::SimplySupported;
  throw ParameterError("unknown boundary kind '" + std::string(name) + "'");
}

void BoundarySpec::validate() const {
  if ((left.kind == BoundaryKind::Periodic) != (right.kind == BoundaryKind::Periodic))
    throw ArgumentError("periodic boundaries must be periodic at both edges");
}

std::vector<double> boundary_coeffs(const EdgeCondition& cond, Edge edge,
                                    std::span<const WeightTable> tables) {
  if (cond.kind == BoundaryKind::Periodic) return {};

  // Condition weights Σ_n K_n f^{(n)}(edge), K_0 dropped since f(edge) is
  // prescribed.
  std::vector<double> k;
  switch (cond.kind) {
    case BoundaryKind::Clamped:
    case BoundaryKind::SimplySupported: {
      const int m = tables.empty() ? 0 : tables.front().half_bandwidth;
      return std::vector<double>(static_cast<std::size_t>(m),
                                 cond.kind == BoundaryKind::Clamped ? 1.0 : -1.0);
    }
    case BoundaryKind::TransverselySupported:
      k = {0.0, cond.k1, 1.0};
      break;
    case BoundaryKind::General:
      k = cond.k;
      if (k.size() < 2) throw ParameterError("general boundary needs at least K_1");
      if (k.size() > static_cast<std::size_t>(kMaxDerivativeOrder + 1))
        throw UnsupportedError("general boundary supports derivative orders up to 4 only");
      break;
    default:
      break;
  }

  const auto order_count = static_cast<int>(k.size());
  for (int n = 1; n < order_count; ++n) {
    if (k[static_cast<std::size_t>(n)] == 0.0) continue;
    if (static_cast<int>(tables.size()) <= n || tables[static_cast<std::size_t>(n)].order != n)
      throw ArgumentError("missing derivative table of order " + std::to_string(n));
  }
  const int m = tables[1].half_bandwidth;
  std::vector<double> a(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    // Interior-node weights seen from the edge: δ^{(n)}(x_0 - x_i) on the
    // left, δ^{(n)}(x_N - x_{N-i}) on the right.
    const int j = edge == Edge::Left ? -i : i;
    double even = 0.0;
    double odd = 0.0;
    for (int n = 1; n < order_count; ++n) {
      const double kn = k[static_cast<std::size_t>(n)];
      if (kn == 0.0) continue;
      const double c = tables[static_cast<std::size_t>(n)][j];
      (n % 2 ? odd : even) += kn * c;
    }
    // Σ_n K_n C_i^n (1 + (-1)^n a_i) = 0  =>  a_i = (E + O) / (O - E).
    const double num = even + odd;
    const double den = odd - even;
    const double scale = std::max({std::abs(num), std::abs(even), std::abs(odd)});
    if (den == 0.0 || std::abs(den) < 1e-14 * scale)
      throw DegenerateBoundaryError("boundary extension coefficient a_" + std::to_string(i) +
                                    " has a vanishing denominator");
    a[static_cast<std::size_t>(i - 1)] = num / den;
  }
  return a;
}

std::vector<double> boundary_coeffs(const EdgeCondition& cond, Edge edge,
                                    const KernelParams& params) {
  std::vector<WeightTable> tables;
  int needed = 1;
  if (cond.kind == BoundaryKind::TransverselySupported) needed = 2;
  if (cond.kind == BoundaryKind::General)
    needed = std::min(static_cast<int>(cond.k.size()) - 1, kMaxDerivativeOrder);
  for (int n = 0; n <= std::max(needed, 1); ++n) tables.push_back(build_weights(params, n));
  return boundary_coeffs(cond, edge, tables);
}

DiffMatrix::DiffMatrix(int size, int half_bandwidth, int order, int axis, BoundarySpec boundary,
                       const std::vector<double>& dense_row_major)
    : size_(size),
      half_bandwidth_(half_bandwidth),
      order_(order),
      axis_(axis),
      boundary_(std::move(boundary)) {
  const auto n = static_cast<std::size_t>(size);
  if (dense_row_major.size() != n * n) throw ArgumentError("dense matrix has the wrong size");
  const int m = half_bandwidth;
  storage_ = Storage::Dense;
  if (2 * m + 1 < size || (boundary_.is_periodic() && 2 * m + 1 <= size))
    storage_ = boundary_.is_periodic() ? Storage::PeriodicBanded : Storage::Banded;

  if (storage_ != Storage::Dense) {
    width_ = 2 * m + 1;
    data_.assign(n * static_cast<std::size_t>(width_), 0.0);
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        const double v = dense_row_major[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)];
        if (v == 0.0) continue;
        int d = c - r;
        if (storage_ == Storage::PeriodicBanded) {
          d = ((d % size) + size) % size;
          if (d > m) d -= size;
        }
        if (std::abs(d) > m) {
          // Fold reached outside the band; keep everything.
          storage_ = Storage::Dense;
          break;
        }
        data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
              static_cast<std::size_t>(d + m)] = v;
      }
      if (storage_ == Storage::Dense) break;
    }
  }
  if (storage_ == Storage::Dense) {
    width_ = size;
    data_ = dense_row_major;
  }
}

double DiffMatrix::operator()(int r, int c) const {
  if (storage_ == Storage::Dense)
    return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(c)];
  const int m = half_bandwidth_;
  int d = c - r;
  if (storage_ == Storage::PeriodicBanded) {
    d = ((d % size_) + size_) % size_;
    if (d > m) d -= size_;
  }
  if (std::abs(d) > m) return 0.0;
  return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(d + m)];
}

std::vector<double> DiffMatrix::dense() const {
  if (storage_ == Storage::Dense) return data_;
  const auto n = static_cast<std::size_t>(size_);
  std::vector<double> out(n * n, 0.0);
  for (int r = 0; r < size_; ++r)
    for (auto [c, v] : row(r)) out[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = v;
  return out;
}

std::vector<std::pair<int, double>> DiffMatrix::row(int r) const {
  std::vector<std::pair<int, double>> out;
  if (storage_ == Storage::Dense) {
    for (int c = 0; c < size_; ++c) {
      const double v = (*this)(r, c);
      if (v != 0.0) out.emplace_back(c, v);
    }
    return out;
  }
  const int m = half_bandwidth_;
  for (int d = -m; d <= m; ++d) {
    int c = r + d;
    if (storage_ == Storage::PeriodicBanded) c = ((c % size_) + size_) % size_;
    if (c < 0 || c >= size_) continue;
    const double v = data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
                           static_cast<std::size_t>(d + m)];
    if (v != 0.0) out.emplace_back(c, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void DiffMatrix::apply(const double* in, std::ptrdiff_t in_stride, double* out,
                       std::ptrdiff_t out_stride) const {
  const int m = half_bandwidth_;
  for (int r = 0; r < size_; ++r) {
    double acc = 0.0;
    if (storage_ == Storage::Dense) {
      const double* a = data_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(size_);
      for (int c = 0; c < size_; ++c) acc += a[c] * in[c * in_stride];
    } else {
      const double* a = data_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(width_);
      for (int d = -m; d <= m; ++d) {
        int c = r + d;
        if (storage_ == Storage::PeriodicBanded) {
          if (c < 0) c += size_;
          else if (c >= size_) c -= size_;
        } else if (c < 0 || c >= size_) {
          continue;
        }
        acc += a[d + m] * in[c * in_stride];
      }
    }
    out[r * out_stride] = acc;
  }
}

DiffMatrix build_diff_matrix(int count, const WeightTable& table, const BoundarySpec& boundary,
                             int axis) {
  if (count < 2) throw ArgumentError("differentiation matrix needs at least two nodes");
  const auto folder = detail::Folder::make(count, table.params, boundary);
  const int m = table.half_bandwidth;
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> dense(n * n, 0.0);
  std::vector<double> row(n);
  for (int k = 0; k < count; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int j = -m; j <= m; ++j) {
      const double c = table[j];
      if (c != 0.0) folder.add(k - j, c, row);
    }
    std::copy(row.begin(), row.end(), dense.begin() + static_cast<std::ptrdiff_t>(k * count));
  }
  return DiffMatrix(count, m, table.order, axis, boundary, dense);
}

DiffMatrix build_diff_matrix(const Grid& grid, int axis, const WeightTable& table,
                             const BoundarySpec& boundary) {
  if (axis < 0 || axis >= grid.dims()) throw ArgumentError("axis out of range");
  const double h = grid.spacing(axis);
  if (std::abs(h - table.params.delta) > 1e-12 * h)
    throw ArgumentError("kernel spacing does not match the grid spacing");
  return build_diff_matrix(grid.count(axis), table, boundary, axis);
}

FieldSamples apply_derivative(const FieldSamples& samples, int axis, const DiffMatrix& matrix) {
  const Grid& g = samples.grid;
  if (axis < 0 || axis >= g.dims()) throw ArgumentError("axis out of range");
  if (g.count(axis) != matrix.size())
    throw ArgumentError("matrix size does not match the axis node count");
  FieldSamples out(g);
  const int n = g.count(axis);
  const std::size_t before = g.stride(axis);
  const std::size_t after = g.size() / (before * static_cast<std::size_t>(n));

  // Small operators go through a matrix product even when banded.
  if (matrix.storage() == DiffMatrix::Storage::Dense || n <= 128) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const std::vector<double> a = matrix.dense();
    Eigen::Map<const RowMajor> op(a.data(), n, n);
    for (std::size_t s = 0; s < after; ++s) {
      const std::size_t offset = s * before * static_cast<std::size_t>(n);
      // Slab is before × n, column-major with the axis along columns.
      Eigen::Map<const Eigen::MatrixXd> in(samples.values.data() + offset,
                                           static_cast<Eigen::Index>(before), n);
      Eigen::Map<Eigen::MatrixXd> res(out.values.data() + offset,
                                      static_cast<Eigen::Index>(before), n);
      res.noalias() = in * op.transpose();
    }
    return out;
  }

  for (std::size_t s = 0; s < after; ++s) {
    for (std::size_t b = 0; b < before; ++b) {
      const std::size_t base = s * before * static_cast<std::size_t>(n) + b;
      matrix.apply(samples.values.data() + base, static_cast<std::ptrdiff_t>(before),
                   out.values.data() + base, static_cast<std::ptrdiff_t>(before));
    }
  }
  return out;
}

std::vector<std::pair<int, double>> interpolation_weights(const Axis& axis,
                                                          const KernelParams& params,
                                                          const BoundarySpec& boundary,
                                                          double x) {
  const double h = axis.spacing;
  if (std::abs(h - params.delta) > 1e-12 * h)
    throw ArgumentError("kernel spacing does not match the grid spacing");
  const double t = (x - axis.origin) / h;
  const bool periodic = boundary.is_periodic();
  const double hi = periodic ? axis.count : axis.count - 1;
  if (!(t >= -1e-12) || (periodic ? !(t < hi) : !(t <= hi + 1e-12)))
    throw DomainError("interpolation point lies outside the grid hull");

  const auto folder = detail::Folder::make(axis.count, params, boundary);
  const int center = static_cast<int>(std::lround(t));
  const int m = params.half_bandwidth;
  std::vector<double> row(static_cast<std::size_t>(axis.count), 0.0);
  for (int l = center - m; l <= center + m; ++l) {
    const double w = eval_kernel(params, x - axis.coord(l));
    if (w != 0.0) folder.add(l, w, row);
  }
  std::vector<std::pair<int, double>> out;
  for (int k = 0; k < axis.count; ++k)
    if (row[static_cast<std::size_t>(k)] != 0.0) out.emplace_back(k, row[static_cast<std::size_t>(k)]);
  return out;
}

double interpolate(const FieldSamples& samples, const KernelParams& params,
                   const BoundarySpec& boundary, double x) {
  if (samples.grid.dims() != 1) throw ArgumentError("interpolate expects 1-D samples");
  double acc = 0.0;
  for (auto [k, w] : interpolation_weights(samples.grid.axis(0), params, boundary, x))
    acc += w * samples.values[static_cast<std::size_t>(k)];
  return acc;
}

}  // namespace dsc
