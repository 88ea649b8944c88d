#pragma once

// Weight tables, boundary extensions and banded differentiation matrices
// built from DSC kernels.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dsc/grid.hpp"
#include "dsc/kernel.hpp"

namespace dsc {

/// Translation-invariant weights c_j = δ^{(q)}(jΔ), j = -M..M.
///
/// j is the row-minus-column offset: the q-th derivative at node k is
/// approximated by Σ_j c_j f(x_{k-j}). For M = 1, q = 1 and
/// σ = Δ/√(2 ln 2) the table reads (1/2Δ, 0, -1/2Δ).
struct WeightTable {
  int order = 0;
  int half_bandwidth = 0;
  KernelParams params;
  std::vector<double> weights;

  double operator[](int j) const { return weights[static_cast<std::size_t>(j + half_bandwidth)]; }
  int size() const { return static_cast<int>(weights.size()); }
};

WeightTable build_weights(const KernelParams& params, int q);

enum class BoundaryKind {
  Periodic,
  Clamped,
  SimplySupported,
  TransverselySupported,
  General,
};

std::string_view to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(std::string_view name);

/// Condition imposed at one edge. Every non-periodic kind assumes f = 0 at
/// the edge node (or a prescribed value that is moved to the right-hand side).
struct EdgeCondition {
  BoundaryKind kind = BoundaryKind::SimplySupported;
  /// TransverselySupported: f'' + K₁ f' = 0.
  double k1 = 0.0;
  /// General: Σ_{n=1..N} K_n f^{(n)} = 0 with N ≤ 4; entry 0 is ignored.
  std::vector<double> k;

  static EdgeCondition periodic() { return {BoundaryKind::Periodic, 0.0, {}}; }
  static EdgeCondition clamped() { return {BoundaryKind::Clamped, 0.0, {}}; }
  static EdgeCondition simply_supported() { return {BoundaryKind::SimplySupported, 0.0, {}}; }
  static EdgeCondition transversely_supported(double k1) {
    return {BoundaryKind::TransverselySupported, k1, {}};
  }
  static EdgeCondition general(std::vector<double> k) {
    return {BoundaryKind::General, 0.0, std::move(k)};
  }
};

enum class Edge { Left, Right };

struct BoundarySpec {
  EdgeCondition left;
  EdgeCondition right;

  static BoundarySpec periodic() { return {EdgeCondition::periodic(), EdgeCondition::periodic()}; }
  static BoundarySpec both(const EdgeCondition& e) { return {e, e}; }
  bool is_periodic() const { return left.kind == BoundaryKind::Periodic; }
  /// Throws ArgumentError if exactly one edge is periodic.
  void validate() const;
};

/// Extension coefficients a_1..a_M relating fictitious to interior nodes,
/// f(x_{-i}) = a_i f(x_i) + (1 - a_i) f(x_0), mirrored at the right edge.
///
/// `tables` must be indexed by derivative order and contain every order the
/// condition references. Periodic edges return an empty vector.
std::vector<double> boundary_coeffs(const EdgeCondition& cond, Edge edge,
                                    std::span<const WeightTable> tables);
/// Same, building the derivative tables from `params`.
std::vector<double> boundary_coeffs(const EdgeCondition& cond, Edge edge,
                                    const KernelParams& params);

/// Differentiation operator along one axis with boundary folds applied.
///
/// Storage is banded (2M+1 coefficients per row, shortened at the edges),
/// periodic-banded (columns taken modulo N) or dense once 2M+1 reaches N.
class DiffMatrix {
 public:
  enum class Storage { Banded, PeriodicBanded, Dense };

  DiffMatrix(int size, int half_bandwidth, int order, int axis, BoundarySpec boundary,
             const std::vector<double>& dense_row_major);

  int size() const { return size_; }
  int half_bandwidth() const { return half_bandwidth_; }
  int order() const { return order_; }
  int axis() const { return axis_; }
  Storage storage() const { return storage_; }
  const BoundarySpec& boundary() const { return boundary_; }

  double operator()(int row, int col) const;
  /// Row-major N×N copy.
  std::vector<double> dense() const;
  /// Non-zero pattern of one row as (column, coefficient) pairs.
  std::vector<std::pair<int, double>> row(int r) const;

  /// out[k*out_stride] = Σ_l A(k,l) in[l*in_stride].
  void apply(const double* in, std::ptrdiff_t in_stride, double* out,
             std::ptrdiff_t out_stride) const;

 private:
  int size_;
  int half_bandwidth_;
  int order_;
  int axis_;
  BoundarySpec boundary_;
  Storage storage_;
  int width_;
  std::vector<double> data_;
};

/// Assembles the N×N operator for `count` nodes.
DiffMatrix build_diff_matrix(int count, const WeightTable& table, const BoundarySpec& boundary,
                             int axis = 0);
/// Same for one axis of a grid; the grid spacing must equal the kernel Δ.
DiffMatrix build_diff_matrix(const Grid& grid, int axis, const WeightTable& table,
                             const BoundarySpec& boundary);

/// Applies `matrix` along every grid line parallel to `axis`.
FieldSamples apply_derivative(const FieldSamples& samples, int axis, const DiffMatrix& matrix);

/// Node weights w such that f(x) ≈ Σ w_k f(x_k), using the 2M+1 nearest
/// nodes and folding fictitious nodes through `boundary`.
std::vector<std::pair<int, double>> interpolation_weights(const Axis& axis,
                                                          const KernelParams& params,
                                                          const BoundarySpec& boundary,
                                                          double x);

/// DSC interpolation of 1-D samples at x. Throws DomainError outside the
/// grid hull ([x_0, x_{N-1}], or [x_0, x_0 + NΔ) when periodic).
double interpolate(const FieldSamples& samples, const KernelParams& params,
                   const BoundarySpec& boundary, double x);

}  // namespace dsc
