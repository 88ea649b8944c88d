#pragma once

// Classical delta sequences (positive and Dirichlet type) and quadrature
// probes of their defining limits.

#include <functional>
#include <string_view>
#include <vector>

namespace dsc::zoo {

enum class DeltaKind {
  Impulse,
  Gauss,
  Lorentz,
  Landau,
  PoissonKernel,
  FejerDiscrete,
  FejerContinuous,
  Dirichlet,
  ModifiedDirichlet,
  DeLaValleePoussin,
  DilatedDensity,
};

std::string_view to_string(DeltaKind kind);
DeltaKind parse_delta_kind(std::string_view name);

/// A delta-sequence family together with its fixed shape parameters.
///
/// The sequence parameter itself (α, n or k) is passed separately to the
/// evaluation functions. Shape parameters are only read by the kinds that
/// use them: `lorentz_order` (n ≥ 1), `landau_support` (a > 0),
/// `poussin_p` (0 ≤ p ≤ n) and `density` for DilatedDensity.
struct DeltaSequence {
  DeltaKind kind = DeltaKind::Gauss;
  int lorentz_order = 1;
  double landau_support = 1.0;
  int poussin_p = 0;
  std::function<double(double)> density;

  static DeltaSequence gauss_density();
  static DeltaSequence lorentz_density();

  /// True when δ_param is of positive type (non-negative with unit mass in
  /// the limit). The de la Vallée Poussin kernel qualifies only for p = n.
  bool positive_type(double param) const;

  /// Nominal support [lo, hi]; infinite bounds for kinds defined on all reals.
  std::pair<double, double> support(double param) const;

  /// Throws ParameterError when `param` is outside the kind's range.
  void check_param(double param) const;
};

/// Value of δ_param(x); compact-support kinds return exactly 0 outside their
/// support.
double eval_delta(const DeltaSequence& seq, double param, double x);

/// Composite Simpson rule over [lo, hi] (clipped to the kind's support).
/// A step of 0 selects one automatically from the kind's width.
struct Quadrature {
  double lo = -10.0;
  double hi = 10.0;
  double step = 0.0;
};

/// ∫ δ_param(x) φ(x) dx for every entry of `schedule`.
std::vector<double> convergence_probe(const DeltaSequence& seq,
                                      const std::vector<double>& schedule,
                                      const std::function<double(double)>& test_fn,
                                      const Quadrature& quad);

struct PositivityMass {
  double min_value = 0.0;
  double mass = 0.0;
};

/// Minimum over the quadrature nodes and the integral over the support.
PositivityMass positivity_and_mass(const DeltaSequence& seq, double param,
                                   const Quadrature& quad);

/// Composite Simpson integration of f over [lo, hi] with step at most `step`.
double simpson(const std::function<double(double)>& f, double lo, double hi,
               double step);

}  // namespace dsc::zoo
