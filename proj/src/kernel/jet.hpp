#pragma once

// Truncated derivative arrays ("jets") used to assemble closed-form kernel
// derivatives by the product and quotient rules.

#include <array>
#include <cmath>
#include <cstddef>

namespace dsc::detail {

inline constexpr int kJetOrder = 4;

/// d[k] holds the k-th derivative of some function at a fixed point.
struct Jet {
  std::array<double, kJetOrder + 1> d{};

  static Jet constant(double v) {
    Jet j;
    j.d[0] = v;
    return j;
  }
};

inline constexpr std::array<std::array<double, kJetOrder + 1>, kJetOrder + 1>
    kBinomial{{{1, 0, 0, 0, 0},
               {1, 1, 0, 0, 0},
               {1, 2, 1, 0, 0},
               {1, 3, 3, 1, 0},
               {1, 4, 6, 4, 1}}};

inline Jet operator*(const Jet& f, const Jet& g) {
  Jet h;
  for (int n = 0; n <= kJetOrder; ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += kBinomial[n][k] * f.d[k] * g.d[n - k];
    h.d[n] = acc;
  }
  return h;
}

inline Jet operator*(double s, Jet f) {
  for (double& v : f.d) v *= s;
  return f;
}

/// 1/g from g·h = 1 differentiated n times.
inline Jet reciprocal(const Jet& g) {
  Jet h;
  h.d[0] = 1.0 / g.d[0];
  for (int n = 1; n <= kJetOrder; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += kBinomial[n][k] * g.d[k] * h.d[n - k];
    h.d[n] = -acc / g.d[0];
  }
  return h;
}

inline Jet operator/(const Jet& f, const Jet& g) { return f * reciprocal(g); }

/// exp(-u²/2σ²); derivatives are (-1/σ)^k He_k(u/σ) times the value.
inline Jet gaussian_jet(double u, double sigma) {
  if (std::isinf(sigma)) return Jet::constant(1.0);
  const double z = u / sigma;
  const double g = std::exp(-0.5 * z * z);
  const double z2 = z * z;
  const std::array<double, kJetOrder + 1> he{1.0, z, z2 - 1.0, z * (z2 - 3.0),
                                             z2 * z2 - 6.0 * z2 + 3.0};
  Jet j;
  double scale = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    j.d[k] = scale * he[k] * g;
    scale *= -1.0 / sigma;
  }
  return j;
}

/// cos(b u) in u.
inline Jet cos_jet(double b, double u) {
  const double c = std::cos(b * u);
  const double s = std::sin(b * u);
  return Jet{{c, -b * s, -b * b * c, b * b * b * s, b * b * b * b * c}};
}

/// Derivatives of S(z) = sin(z)/z with respect to z. Uses the Taylor series
/// for |z| < 2 so that the removable singularity and its neighbourhood are
/// free of cancellation.
inline std::array<double, kJetOrder + 1> sinc_derivatives(double z) {
  std::array<double, kJetOrder + 1> out{};
  if (std::abs(z) < 2.0) {
    // Σ_n (-1)^n z^{2n} / (2n+1)!, differentiated term by term.
    double coef = 1.0;  // (-1)^n / (2n+1)!
    for (int n = 0; n <= 24; ++n) {
      const int p = 2 * n;
      for (int k = 0; k <= kJetOrder && k <= p; ++k) {
        double falling = 1.0;
        for (int i = 0; i < k; ++i) falling *= static_cast<double>(p - i);
        out[k] += coef * falling * std::pow(z, p - k);
      }
      coef *= -1.0 / static_cast<double>((p + 2) * (p + 3));
    }
    return out;
  }
  // sin(z) · z^{-1} by Leibniz.
  const double s = std::sin(z);
  const double c = std::cos(z);
  const std::array<double, kJetOrder + 1> sin_d{s, c, -s, -c, s};
  std::array<double, kJetOrder + 1> inv_d{};
  double fact = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    if (k > 0) fact *= k;
    inv_d[k] = ((k % 2) ? -1.0 : 1.0) * fact / std::pow(z, k + 1);
  }
  for (int n = 0; n <= kJetOrder; ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += kBinomial[n][k] * sin_d[k] * inv_d[n - k];
    out[n] = acc;
  }
  return out;
}

/// S(a u) as a function of u.
inline Jet sinc_jet(double a, double u) {
  const auto s = sinc_derivatives(a * u);
  Jet j;
  double scale = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    j.d[k] = scale * s[k];
    scale *= a;
  }
  return j;
}

}  // namespace dsc::detail
