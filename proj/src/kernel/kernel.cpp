#include "dsc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsc/error.hpp"
#include "jet.hpp"

namespace dsc {
namespace {

using detail::Jet;
using std::numbers::pi;

// Offsets closer than this (relative to Δ) to a removable singularity take
// the limit branch.
constexpr double kSingularTolerance = 1e-9;

// Below |πu/Δ| < 1 the explicit Shannon derivative formulas cancel badly;
// the series-backed jet path is used instead.
constexpr double kShannonSeriesRadius = 1.0;

constexpr int kDefaultOrder = 50;

bool uses_order(KernelFamily f) {
  return f == KernelFamily::RegularizedDirichlet ||
         f == KernelFamily::RegularizedModifiedDirichlet ||
         f == KernelFamily::RegularizedLagrange;
}

// Explicit Shannon derivatives for u away from zero.
double shannon_explicit(int q, double u, double delta, double sigma) {
  const double a = pi / delta;
  const double is2 = std::isinf(sigma) ? 0.0 : 1.0 / (sigma * sigma);
  const double g = std::isinf(sigma) ? 1.0 : std::exp(-0.5 * u * u * is2);
  const double s = std::sin(a * u);
  const double c = std::cos(a * u);
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double u4 = u2 * u2;
  switch (q) {
    case 0:
      return s / (a * u) * g;
    case 1:
      return (c / u - s / (a * u2) - s * is2 / a) * g;
    case 2:
      return (-a * s / u - 2.0 * c / u2 - 2.0 * c * is2 + 2.0 * s / (a * u3) +
              s * is2 / (a * u) + s * u * is2 * is2 / a) *
             g;
    case 3:
      return (-a * a * c / u + 3.0 * a * s / u2 + 3.0 * a * s * is2 +
              6.0 * c / u3 + 3.0 * c * is2 / u + 3.0 * u * c * is2 * is2 -
              6.0 * s / (a * u4) - 3.0 * s * is2 / (a * u2) -
              u2 * s * is2 * is2 * is2 / a) *
             g;
    case 4:
      return (4.0 * a * a * c / u2 + a * a * a * s / u + 4.0 * a * a * c * is2 -
              12.0 * a * s / u3 - 6.0 * a * s * is2 / u -
              6.0 * a * u * s * is2 * is2 - 24.0 * c / u4 -
              12.0 * c * is2 / u2 - 4.0 * u2 * c * is2 * is2 * is2 +
              24.0 * s / (a * u4 * u) + 12.0 * s * is2 / (a * u3) +
              3.0 * s * is2 * is2 / (a * u) - 2.0 * u * s * is2 * is2 * is2 / a +
              u3 * s * is2 * is2 * is2 * is2 / a) *
             g;
    default:
      throw ParameterError("derivative order must lie in 0..4");
  }
}

double shannon_limit(int q, double delta, double sigma) {
  const double a = pi / delta;
  const double is2 = std::isinf(sigma) ? 0.0 : 1.0 / (sigma * sigma);
  switch (q) {
    case 0:
      return 1.0;
    case 2:
      return -(is2 + a * a / 3.0);
    case 4:
      return 3.0 * is2 * is2 + 2.0 * a * a * is2 + a * a * a * a / 5.0;
    default:
      return 0.0;
  }
}

// Family factor (without the Gaussian) as a jet in u.
Jet family_jet(const KernelParams& p, double u) {
  const double a = pi / p.delta;
  switch (p.family) {
    case KernelFamily::RegularizedShannon:
      return detail::sinc_jet(a, u);
    case KernelFamily::RegularizedDirichlet:
    case KernelFamily::RegularizedModifiedDirichlet: {
      // Both are periodic up to sign with period (2L+1)Δ; expand about the
      // nearest zero of the denominator so the quotient S(at)/S(bt) stays
      // regular.
      const double width = (2.0 * p.order + 1.0) * p.delta;
      const double n = std::round(u / width);
      const double t = u - n * width;
      const double b = a / (2.0 * p.order + 1.0);
      Jet ratio = detail::sinc_jet(a, t) / detail::sinc_jet(b, t);
      if (p.family == KernelFamily::RegularizedDirichlet) return ratio;
      const double sign = (std::fmod(std::abs(n), 2.0) == 1.0) ? -1.0 : 1.0;
      return sign * (ratio * detail::cos_jet(b, t));
    }
    case KernelFamily::RegularizedLagrange: {
      // Π_{j=1..L} (1 - u²/(jΔ)²), compactly supported on [-LΔ, LΔ].
      if (std::abs(u) > p.order * p.delta) return Jet{};
      Jet prod = Jet::constant(1.0);
      for (int j = 1; j <= p.order; ++j) {
        const double inv = 1.0 / ((j * p.delta) * (j * p.delta));
        prod = prod * Jet{{1.0 - u * u * inv, -2.0 * u * inv, -2.0 * inv, 0.0, 0.0}};
      }
      return prod;
    }
    case KernelFamily::DeLaValleePoussin:
      // (2/3)(cos z - cos 2z)/z² with z = 2πu/(3Δ) factors exactly into
      // S(πu/Δ)·S(πu/(3Δ)).
      return detail::sinc_jet(a, u) * detail::sinc_jet(a / 3.0, u);
  }
  throw ParameterError("unknown kernel family");
}

// Whether the family vanishes at the non-zero grid offset jΔ.
bool vanishes_at_node(const KernelParams& p, double j) {
  if (p.family == KernelFamily::RegularizedDirichlet ||
      p.family == KernelFamily::RegularizedModifiedDirichlet)
    return std::fmod(std::abs(j), 2.0 * p.order + 1.0) != 0.0;
  return true;
}

Jet kernel_jet(const KernelParams& p, double u) {
  return family_jet(p, u) * detail::gaussian_jet(u, p.sigma);
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::RegularizedShannon:
      return "shannon";
    case KernelFamily::RegularizedDirichlet:
      return "dirichlet";
    case KernelFamily::RegularizedModifiedDirichlet:
      return "modified-dirichlet";
    case KernelFamily::RegularizedLagrange:
      return "lagrange";
    case KernelFamily::DeLaValleePoussin:
      return "poussin";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  for (auto f : {KernelFamily::RegularizedShannon, KernelFamily::RegularizedDirichlet,
                 KernelFamily::RegularizedModifiedDirichlet,
                 KernelFamily::RegularizedLagrange, KernelFamily::DeLaValleePoussin}) {
    if (name == to_string(f)) return f;
  }
  if (name == "RegularizedShannon" || name == "rsk") return KernelFamily::RegularizedShannon;
  if (name == "RegularizedDirichlet" || name == "rdk") return KernelFamily::RegularizedDirichlet;
  if (name == "RegularizedModifiedDirichlet") return KernelFamily::RegularizedModifiedDirichlet;
  if (name == "RegularizedLagrange" || name == "rlk") return KernelFamily::RegularizedLagrange;
  if (name == "DeLaValleePoussin") return KernelFamily::DeLaValleePoussin;
  throw ParameterError("unknown kernel family '" + std::string(name) + "'");
}

KernelParams KernelParams::from_ratio(KernelFamily family, double delta,
                                      double sigma_over_delta, int half_bandwidth,
                                      int order) {
  KernelParams p;
  p.family = family;
  p.delta = delta;
  p.sigma = std::isinf(sigma_over_delta) ? kNoRegularization : sigma_over_delta * delta;
  p.half_bandwidth = half_bandwidth;
  p.order = order > 0 ? order : std::max(half_bandwidth, kDefaultOrder);
  p.validate();
  return p;
}

void KernelParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ParameterError("grid spacing must be positive and finite");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive (or infinite)");
  if (half_bandwidth < 1) throw ParameterError("half bandwidth M must be >= 1");
  if (uses_order(family) && order < half_bandwidth)
    throw ParameterError("kernel order L must satisfy L >= M");
}

double eval_kernel(const KernelParams& params, double offset) {
  return eval_derivative(params, 0, offset);
}

double eval_derivative(const KernelParams& params, int q, double offset) {
  if (q < 0 || q > kMaxDerivativeOrder)
    throw UnsupportedError("derivative order must lie in 0..4");
  params.validate();
  if (q == 0) {
    // Grid offsets hit the zeros of the sine factor exactly, not up to the
    // rounding of sin(πj).
    const double t = offset / params.delta;
    const double j = std::round(t);
    if (j != 0.0 && std::abs(t - j) <= 1e-12 * std::abs(j) && vanishes_at_node(params, j))
      return 0.0;
  }
  if (params.family == KernelFamily::RegularizedShannon) {
    const double au = pi * offset / params.delta;
    if (std::abs(offset) < kSingularTolerance * params.delta)
      return shannon_limit(q, params.delta, params.sigma);
    if (std::abs(au) >= kShannonSeriesRadius)
      return shannon_explicit(q, offset, params.delta, params.sigma);
  }
  return kernel_jet(params, offset).d[q];
}

std::array<double, kMaxDerivativeOrder + 1> eval_derivatives(const KernelParams& params,
                                                             double offset) {
  std::array<double, kMaxDerivativeOrder + 1> out{};
  for (int q = 0; q <= kMaxDerivativeOrder; ++q) out[q] = eval_derivative(params, q, offset);
  return out;
}

double normalization(const KernelParams& params) {
  params.validate();
  if (params.family != KernelFamily::RegularizedShannon)
    throw UnsupportedError("closed-form normalization exists only for the Shannon family");
  if (!params.regularized()) return 1.0;
  return std::erf(pi * params.sigma / (std::numbers::sqrt2 * params.delta));
}

int min_half_bandwidth(double eta, double sigma_over_delta) {
  if (!(eta > 0.0)) throw ParameterError("accuracy digits eta must be positive");
  if (!(sigma_over_delta > 0.0)) throw ParameterError("sigma/delta must be positive");
  const double bound = std::sqrt(4.61 * eta);
  int m = static_cast<int>(std::floor(sigma_over_delta * bound)) + 1;
  while (static_cast<double>(m) / sigma_over_delta <= bound) ++m;
  return std::max(m, 1);
}

ParameterAdvice advise_parameters(double eta, double bandlimit, double delta) {
  if (!(eta > 0.0)) throw ParameterError("accuracy digits eta must be positive");
  if (!(delta > 0.0)) throw ParameterError("grid spacing must be positive");
  if (!(bandlimit >= 0.0)) throw ParameterError("bandlimit must be non-negative");
  const double margin = pi - bandlimit * delta;
  if (!(margin > 0.0))
    throw ParameterError("under-resolved: bandlimit * delta must be below pi");
  const double bound = std::sqrt(4.61 * eta);
  // Round r up to three decimals, keeping the inequality strict.
  double r = std::ceil(bound / margin * 1000.0) / 1000.0;
  while (r * margin <= bound) r += 1e-3;
  r = std::max(r, 1e-3);
  return ParameterAdvice{eta, bandlimit, r, min_half_bandwidth(eta, r)};
}

double eval_shannon_wavelet(double offset) {
  if (std::abs(offset) < kSingularTolerance) return 1.0;
  return (std::sin(2.0 * pi * offset) - std::sin(pi * offset)) / (pi * offset);
}

}  // namespace dsc
