#pragma once

// Regularized delta kernels used for discrete singular convolution, their
// closed-form derivatives up to fourth order, and accuracy-driven parameter
// selection.

#include <array>
#include <limits>
#include <string>
#include <string_view>

namespace dsc {

enum class KernelFamily {
  RegularizedShannon,
  RegularizedDirichlet,
  RegularizedModifiedDirichlet,
  RegularizedLagrange,
  DeLaValleePoussin,
};

inline constexpr int kMaxDerivativeOrder = 4;
inline constexpr double kNoRegularization = std::numeric_limits<double>::infinity();

std::string_view to_string(KernelFamily family);
/// Accepts "shannon", "dirichlet", "modified-dirichlet", "lagrange", "poussin"
/// (and the enumerator names). Throws ParameterError otherwise.
KernelFamily parse_kernel_family(std::string_view name);

/// One delta kernel on a uniform grid.
///
/// `sigma` is the Gaussian regularization width in the same length unit as
/// `delta`; `kNoRegularization` switches the Gaussian factor off exactly.
/// `order` (L) only matters for the Dirichlet and Lagrange families, where it
/// must satisfy L >= M.
struct KernelParams {
  KernelFamily family = KernelFamily::RegularizedShannon;
  double delta = 1.0;
  double sigma = 3.2;
  int half_bandwidth = 1;
  int order = 1;

  /// Builds parameters from the ratio r = σ/Δ. When `order` is omitted it
  /// defaults to max(M, 50).
  static KernelParams from_ratio(KernelFamily family, double delta,
                                 double sigma_over_delta, int half_bandwidth,
                                 int order = 0);

  bool regularized() const noexcept { return sigma != kNoRegularization; }
  double ratio() const noexcept { return sigma / delta; }

  /// Throws ParameterError when any invariant is violated.
  void validate() const;
};

/// Kernel value δ_{σ,Δ}(offset), offset = x - x_k.
double eval_kernel(const KernelParams& params, double offset);

/// q-th derivative of the kernel with respect to x, q in 0..4.
double eval_derivative(const KernelParams& params, int q, double offset);

/// All derivatives 0..4 at one offset.
std::array<double, kMaxDerivativeOrder + 1> eval_derivatives(
    const KernelParams& params, double offset);

/// ∫ δ_{σ,Δ}(x) dx / Δ for the regularized Shannon kernel, i.e.
/// erf(πσ / (√2 Δ)). Other families throw UnsupportedError.
double normalization(const KernelParams& params);

/// Smallest (σ/Δ, M) meeting a requested accuracy of 10^-η for functions
/// band-limited to `bandlimit` (radians per length).
struct ParameterAdvice {
  double eta = 0.0;
  double bandlimit = 0.0;
  double r_min = 0.0;
  int m_min = 1;
};

ParameterAdvice advise_parameters(double eta, double bandlimit, double delta);

/// Smallest integer M with M / r > sqrt(4.61 η), floored at 1.
int min_half_bandwidth(double eta, double sigma_over_delta);

/// Shannon mother wavelet (sin 2πx - sin πx) / (πx).
double eval_shannon_wavelet(double offset);

}  // namespace dsc
