#pragma once

// Waveguide eigenmodes, box electrostatics and periodic wave propagation.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "dsc/discretization.hpp"
#include "dsc/grid.hpp"
#include "dsc/kernel.hpp"

namespace dsc::pde {

inline constexpr double kGuideLength = 31.415926535897932384626433832795;  // 10π

enum class GuideShape { Square, TShape, EShape, Custom };

std::string_view to_string(GuideShape shape);
GuideShape parse_guide_shape(std::string_view name);

/// Closed rectangle in units of the side length, [x0,x1] × [y0,y1] ⊂ [0,1]².
struct Rect {
  double x0, x1, y0, y1;
};

/// Rectangles whose union forms the T- or E-shaped cross section.
std::vector<Rect> shape_rects(GuideShape shape);

/// Interior mask for `nodes` per axis over [0, length]²: a node is interior
/// iff the four points (±Δ/2, ±Δ/2) around it all lie in the union.
std::vector<bool> shape_mask(const std::vector<Rect>& rects, int nodes);

/// TM waveguide cross section: ∇²E + k²E = 0, E = 0 on walls and mask edges.
struct WaveguideProblem {
  /// 2-D closed grid; outer-ring nodes are walls. An optional mask marks
  /// interior nodes of shaped guides.
  Grid grid;
  KernelParams kernel;
  int n_modes = 20;
  GuideShape shape = GuideShape::Square;
  /// Number of eigenvectors to return as fields (0 keeps none).
  int keep_modes = 0;
  /// Optional operating point for propagation metadata (k² = ω²εν − α²).
  std::optional<double> omega = std::nullopt;
  double eps_nu = 1.0;

  /// N intervals per side of [0,10π]², half bandwidth M, RSK with σ/Δ.
  static WaveguideProblem square(int intervals, int half_bandwidth, double sigma_over_delta,
                                 int n_modes);
  /// Shaped guide on `intervals` per side (defaults reproduce the 50-point runs).
  static WaveguideProblem shaped(GuideShape shape, int intervals = 50,
                                 double sigma_over_delta = 4.8, int half_bandwidth = 0,
                                 int n_modes = 20);
  void validate() const;
};

struct EigenReport {
  /// Ascending k² values.
  std::vector<double> eigenvalues;
  /// Analytic k² for the square guide, empty otherwise.
  std::vector<double> analytic;
  std::vector<double> abs_error;
  /// Cutoff frequency k/√(εν) per mode.
  std::vector<double> cutoff;
  /// Propagation constant α = √(ω²εν − k²), NaN when evanescent or ω unset.
  std::vector<double> alpha;
  /// Eigenvectors on the full grid, zero on walls and masked nodes.
  std::vector<FieldSamples> modes;
  std::size_t unknowns = 0;
  double max_imag = 0.0;
};

/// Sorted analytic spectrum (m² + n²)/100, m, n ≥ 1, first `count` values.
std::vector<double> square_guide_spectrum(int count);

EigenReport solve_waveguide(const WaveguideProblem& problem);

struct ChargePatch {
  double x0, x1, y0, y1;
  /// Charge density (C/m²) and relative permittivity of the patch.
  double rho;
  double eps_r;
};

inline constexpr double kVacuumPermittivity = 1e-9 / (36.0 * 3.14159265358979323846);

/// Potential in a grounded-sides box with a lid at fixed voltage.
struct ElectrostaticsProblem {
  /// Nodes per axis including the walls.
  int nodes = 32;
  double length = 1.0;
  double v_left = 0.0;
  double v_right = 0.0;
  double v_bottom = 0.0;
  double v_top = 10.0;
  std::vector<ChargePatch> patches;
  /// σ/Δ and half bandwidth (0 means nodes - 1) of the RSK.
  double sigma_over_delta = 3.2;
  int half_bandwidth = 0;
  std::vector<std::array<double, 2>> probes;

  static ElectrostaticsProblem laplace_box();
  /// Box with the 0.18 m × 0.16 m charged patch.
  static ElectrostaticsProblem charged_box();
  Grid grid() const;
  KernelParams kernel() const;
  void validate() const;
};

struct Probe {
  double x, y, value;
};

struct FieldReport {
  /// Potential on every node, walls included (corners take the mean of the
  /// two adjacent walls).
  FieldSamples field;
  std::vector<Probe> probes;
};

FieldReport solve_electrostatics(const ElectrostaticsProblem& problem);

/// DSC interpolation of a box potential at (x, y).
double sample_potential(const FieldReport& report, const ElectrostaticsProblem& problem,
                        double x, double y);

/// W_tt = ∇²W / εν on the periodic cube [0,10π)^d, integrated with RK4
/// from the plane wave W = sin(α·x + ωt).
struct WavePropagationProblem {
  int dims = 3;
  int nodes = 36;
  KernelParams kernel;
  std::array<double, 3> alpha{1.0, 1.0, 1.0};
  double eps_nu = 1.0;
  /// Time step; 0 selects the stability rule.
  double dt = 0.0;
  double t_end = 10.0;
  double report_every = 1.0;
  bool track_energy = false;

  static WavePropagationProblem cube(int dims, int nodes, int half_bandwidth,
                                     double sigma_over_delta, double t_end,
                                     double report_every);
  Grid grid() const;
  double omega() const;
  void validate() const;
};

struct ErrorTrace {
  std::vector<double> times;
  std::vector<double> linf_error;
  /// Discrete energy per reported time (empty unless tracked).
  std::vector<double> energy;
  double dt = 0.0;
  long steps = 0;
};

/// Stability step 0.5 · 2.8 / √(dims · max|λ(D_xx)| / εν) from Gershgorin.
double stable_time_step(const WavePropagationProblem& problem);

ErrorTrace propagate_wave(const WavePropagationProblem& problem);

}  // namespace dsc::pde
