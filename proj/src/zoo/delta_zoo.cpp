#include "dsc/delta_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dsc/error.hpp"

namespace dsc::zoo {
namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// |sin(x/2)| below this takes the x -> 0 limit of the trigonometric kernels.
constexpr double kTrigLimit = 1e-8;

bool is_integer(double v) { return std::floor(v) == v; }

// The kind's defining expression on its closed support; no zeroing at the
// support edges so that quadrature sees a continuous integrand.
double formula(const DeltaSequence& s, double p, double x) {
  switch (s.kind) {
    case DeltaKind::Impulse:
      return p;
    case DeltaKind::Gauss:
      return std::exp(-0.5 * x * x / (p * p)) / (std::sqrt(2.0 * pi) * p);
    case DeltaKind::Lorentz: {
      const int n = s.lorentz_order;
      return std::pow(p, n) * std::pow(x, n - 1) /
             (pi * (std::pow(x, 2 * n) + std::pow(p, 2 * n)));
    }
    case DeltaKind::Landau: {
      const double a = s.landau_support;
      const double t = 1.0 - (x / a) * (x / a);
      if (t <= 0.0) return p == 0.0 ? 1.0 / (2.0 * a) : 0.0;
      // ∫_{-a}^{a} (a²-y²)^n dy = a^{2n+1} √π Γ(n+1) / Γ(n+3/2)
      const double log_norm = std::log(a) + 0.5 * std::log(pi) + std::lgamma(p + 1.0) -
                              std::lgamma(p + 1.5);
      return std::exp(p * std::log(t) - log_norm);
    }
    case DeltaKind::PoissonKernel:
      return (1.0 - p * p) / (2.0 * pi * (1.0 - 2.0 * p * std::cos(x) + p * p));
    case DeltaKind::FejerDiscrete: {
      const double h = std::sin(0.5 * x);
      if (std::abs(h) < kTrigLimit) return p / (2.0 * pi);
      const double num = std::sin(0.5 * p * x);
      return num * num / (2.0 * pi * p * h * h);
    }
    case DeltaKind::FejerContinuous: {
      if (std::abs(p * x) < kTrigLimit) return p / pi;
      const double num = std::sin(p * x);
      return num * num / (pi * p * x * x);
    }
    case DeltaKind::Dirichlet: {
      const double h = std::sin(0.5 * x);
      if (std::abs(h) < kTrigLimit) return (2.0 * p + 1.0) / (2.0 * pi);
      return std::sin((p + 0.5) * x) / (2.0 * pi * h);
    }
    case DeltaKind::ModifiedDirichlet: {
      if (std::abs(std::sin(0.5 * x)) < kTrigLimit) return p / pi;
      return std::sin(p * x) / (2.0 * pi * std::tan(0.5 * x));
    }
    case DeltaKind::DeLaValleePoussin: {
      const double q = s.poussin_p;
      const double h = std::sin(0.5 * x);
      if (std::abs(h) < kTrigLimit) return (2.0 * p + 1.0 - q) / (2.0 * pi);
      return std::sin((2.0 * p + 1.0 - q) * 0.5 * x) * std::sin((q + 1.0) * 0.5 * x) /
             (2.0 * pi * (q + 1.0) * h * h);
    }
    case DeltaKind::DilatedDensity:
      return s.density(x / p) / p;
  }
  return 0.0;
}

// Characteristic width used to pick an automatic quadrature step.
double width(const DeltaSequence& s, double p) {
  switch (s.kind) {
    case DeltaKind::Impulse:
    case DeltaKind::FejerContinuous:
      return 1.0 / p;
    case DeltaKind::Gauss:
    case DeltaKind::Lorentz:
    case DeltaKind::DilatedDensity:
      return p;
    case DeltaKind::Landau:
      return s.landau_support / std::sqrt(2.0 * p + 1.0);
    case DeltaKind::PoissonKernel:
      return std::max(1.0 - p, 1e-3);
    case DeltaKind::FejerDiscrete:
    case DeltaKind::Dirichlet:
    case DeltaKind::ModifiedDirichlet:
    case DeltaKind::DeLaValleePoussin:
      return pi / (p + 1.0);
  }
  return 1.0;
}

struct Interval {
  double lo;
  double hi;
  double step;
};

Interval clip(const DeltaSequence& s, double p, const Quadrature& q) {
  if (!(q.hi > q.lo)) throw ArgumentError("quadrature range must satisfy lo < hi");
  auto [slo, shi] = s.support(p);
  Interval iv{std::max(q.lo, slo), std::min(q.hi, shi), q.step};
  if (iv.step <= 0.0) iv.step = std::min(width(s, p), q.hi - q.lo) / 64.0;
  return iv;
}

}  // namespace

std::string_view to_string(DeltaKind kind) {
  switch (kind) {
    case DeltaKind::Impulse: return "impulse";
    case DeltaKind::Gauss: return "gauss";
    case DeltaKind::Lorentz: return "lorentz";
    case DeltaKind::Landau: return "landau";
    case DeltaKind::PoissonKernel: return "poisson";
    case DeltaKind::FejerDiscrete: return "fejer";
    case DeltaKind::FejerContinuous: return "fejer-continuous";
    case DeltaKind::Dirichlet: return "dirichlet";
    case DeltaKind::ModifiedDirichlet: return "modified-dirichlet";
    case DeltaKind::DeLaValleePoussin: return "poussin";
    case DeltaKind::DilatedDensity: return "dilated";
  }
  return "unknown";
}

DeltaKind parse_delta_kind(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(DeltaKind::DilatedDensity); ++i) {
    const auto k = static_cast<DeltaKind>(i);
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown delta sequence kind '" + std::string(name) + "'");
}

DeltaSequence DeltaSequence::gauss_density() {
  DeltaSequence s;
  s.kind = DeltaKind::DilatedDensity;
  s.density = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); };
  return s;
}

DeltaSequence DeltaSequence::lorentz_density() {
  DeltaSequence s;
  s.kind = DeltaKind::DilatedDensity;
  s.density = [](double x) { return 1.0 / (pi * (1.0 + x * x)); };
  return s;
}

bool DeltaSequence::positive_type(double param) const {
  switch (kind) {
    case DeltaKind::Dirichlet:
    case DeltaKind::ModifiedDirichlet:
      return false;
    case DeltaKind::DeLaValleePoussin:
      return poussin_p == param;
    case DeltaKind::Lorentz:
      return lorentz_order == 1;
    default:
      return true;
  }
}

std::pair<double, double> DeltaSequence::support(double param) const {
  switch (kind) {
    case DeltaKind::Impulse:
      return {0.0, 1.0 / param};
    case DeltaKind::Landau:
      return {-landau_support, landau_support};
    case DeltaKind::PoissonKernel:
    case DeltaKind::FejerDiscrete:
    case DeltaKind::Dirichlet:
    case DeltaKind::ModifiedDirichlet:
    case DeltaKind::DeLaValleePoussin:
      return {-pi, pi};
    default:
      return {-kInf, kInf};
  }
}

void DeltaSequence::check_param(double p) const {
  auto fail = [&](const char* why) {
    throw ParameterError(std::string(to_string(kind)) + ": " + why);
  };
  if (!std::isfinite(p)) fail("parameter must be finite");
  switch (kind) {
    case DeltaKind::Impulse:
    case DeltaKind::Gauss:
    case DeltaKind::FejerContinuous:
      if (!(p > 0.0)) fail("parameter must be positive");
      break;
    case DeltaKind::Lorentz:
      if (lorentz_order < 1) fail("order n must be >= 1");
      if (!(p > 0.0)) fail("parameter must be positive");
      break;
    case DeltaKind::Landau:
      if (!(landau_support > 0.0)) fail("support a must be positive");
      if (p < 0.0 || !is_integer(p)) fail("n must be a non-negative integer");
      break;
    case DeltaKind::PoissonKernel:
      if (!(p >= 0.0 && p < 1.0)) fail("parameter must satisfy 0 <= alpha < 1");
      break;
    case DeltaKind::FejerDiscrete:
      if (p < 1.0 || !is_integer(p)) fail("k must be a positive integer");
      break;
    case DeltaKind::Dirichlet:
    case DeltaKind::ModifiedDirichlet:
      if (p < 0.0 || !is_integer(p)) fail("k must be a non-negative integer");
      break;
    case DeltaKind::DeLaValleePoussin:
      if (p < 0.0 || !is_integer(p)) fail("n must be a non-negative integer");
      if (poussin_p < 0 || poussin_p > p) fail("p must satisfy 0 <= p <= n");
      break;
    case DeltaKind::DilatedDensity:
      if (!density) fail("a density function is required");
      if (!(p > 0.0)) fail("parameter must be positive");
      break;
  }
}

double eval_delta(const DeltaSequence& seq, double param, double x) {
  seq.check_param(param);
  if (seq.kind == DeltaKind::Impulse) return (x > 0.0 && x < 1.0 / param) ? param : 0.0;
  auto [lo, hi] = seq.support(param);
  if (x < lo || x > hi) return 0.0;
  return formula(seq, param, x);
}

double simpson(const std::function<double(double)>& f, double lo, double hi, double step) {
  if (!(hi > lo)) return 0.0;
  if (!(step > 0.0)) throw ArgumentError("quadrature step must be positive");
  auto n = static_cast<long>(std::ceil((hi - lo) / step));
  n = std::max<long>(2, n + (n % 2));
  const double h = (hi - lo) / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (long i = 1; i < n; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(lo) + f(hi) + 4.0 * odd + 2.0 * even);
}

std::vector<double> convergence_probe(const DeltaSequence& seq,
                                      const std::vector<double>& schedule,
                                      const std::function<double(double)>& test_fn,
                                      const Quadrature& quad) {
  if (schedule.empty()) throw ArgumentError("convergence schedule is empty");
  std::vector<double> out;
  out.reserve(schedule.size());
  for (double p : schedule) {
    seq.check_param(p);
    const Interval iv = clip(seq, p, quad);
    out.push_back(simpson([&](double x) { return formula(seq, p, x) * test_fn(x); },
                          iv.lo, iv.hi, iv.step));
  }
  return out;
}

PositivityMass positivity_and_mass(const DeltaSequence& seq, double param,
                                   const Quadrature& quad) {
  seq.check_param(param);
  const Interval iv = clip(seq, param, quad);
  PositivityMass out;
  out.min_value = kInf;
  auto f = [&](double x) {
    const double v = formula(seq, param, x);
    out.min_value = std::min(out.min_value, v);
    return v;
  };
  out.mass = simpson(f, iv.lo, iv.hi, iv.step);
  return out;
}

}  // namespace dsc::zoo
