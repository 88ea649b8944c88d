#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "../support/oracles.hpp"
#include "dsc/discretization.hpp"
#include "dsc/error.hpp"

using namespace dsc;

namespace {

KernelParams rsk(double delta, double r, int m) {
  return KernelParams::from_ratio(KernelFamily::RegularizedShannon, delta, r, m);
}

FieldSamples sampled(const Grid& g, double (*f)(double)) {
  FieldSamples s(g);
  for (int i = 0; i < g.count(0); ++i) s[static_cast<std::size_t>(i)] = f(g.axis(0).coord(i));
  return s;
}

double periodic_error(int n, int m, double r, int q, double k = 1.0) {
  const Grid g = Grid::periodic(1, 2.0 * oracle::pi, n);
  const KernelParams p = rsk(g.spacing(0), r, m);
  FieldSamples f(g);
  for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = std::sin(k * g.axis(0).coord(i));
  const auto d = apply_derivative(f, 0, build_diff_matrix(g, 0, build_weights(p, q), BoundarySpec::periodic()));
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.axis(0).coord(i);
    const double exact = q == 1 ? k * std::cos(k * x) : -k * k * std::sin(k * x);
    e = std::max(e, std::abs(d[static_cast<std::size_t>(i)] - exact));
  }
  return e;
}

}  // namespace

TEST_CASE("q=0 tables are unit vectors") {
  for (auto f : {KernelFamily::RegularizedShannon, KernelFamily::RegularizedDirichlet,
                 KernelFamily::RegularizedModifiedDirichlet, KernelFamily::RegularizedLagrange,
                 KernelFamily::DeLaValleePoussin}) {
    CAPTURE(to_string(f));
    for (int m : {1, 5, 12}) {
      const auto t = build_weights(KernelParams::from_ratio(f, 0.4, 3.2, m), 0);
      REQUIRE(t.size() == 2 * m + 1);
      for (int j = -m; j <= m; ++j) CHECK(t[j] == (j == 0 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("central difference limit") {
  const double delta = 0.7;
  const auto t = build_weights(rsk(delta, 1.0 / std::sqrt(2.0 * std::log(2.0)), 1), 1);
  CHECK(std::abs(t[-1] - 0.5 / delta) <= 1e-14);
  CHECK(t[0] == 0.0);
  CHECK(std::abs(t[1] + 0.5 / delta) <= 1e-14);
}

TEST_CASE("second derivative central difference needs its own sigma") {
  // δ''(Δ) = 2 e^{-Δ²/2σ²}(1/Δ² + 1/σ²); solve 2 e^{-t}(1 + 2t) = 1, t = Δ²/2σ².
  double lo = 0.1, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * std::exp(-mid) * (1.0 + 2.0 * mid) > 1.0 ? lo : hi) = mid;
  }
  const double r = 1.0 / std::sqrt(2.0 * lo);
  const auto t = build_weights(rsk(1.0, r, 1), 2);
  CHECK(t[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t[-1] == doctest::Approx(1.0).epsilon(1e-12));
  // The centre weight is -(1/σ² + π²/3), not -2: no single σ matches both.
  CHECK(t[0] == doctest::Approx(-(1.0 / (r * r) + oracle::pi * oracle::pi / 3.0)).epsilon(1e-14));
  CHECK(std::abs(t[0] + 2.0) > 0.5);
}

TEST_CASE("weight parity and centre values") {
  for (int q = 0; q <= 4; ++q) {
    const auto t = build_weights(rsk(0.3, 3.2, 10), q);
    for (int j = 1; j <= 10; ++j) {
      const double sign = q % 2 ? -1.0 : 1.0;
      CHECK(std::abs(t[-j] - sign * t[j]) <= 1e-13 * std::max(1.0, std::abs(t[j])));
    }
  }
  const double s = 3.2 * 0.3;
  const auto t2 = build_weights(rsk(0.3, 3.2, 4), 2);
  CHECK(t2[0] == doctest::Approx(-(3.0 + oracle::pi * oracle::pi * 3.2 * 3.2) / (3.0 * s * s)).epsilon(1e-14));
  // Row-minus-column convention: c_1 = δ'(Δ).
  const auto t1 = build_weights(rsk(0.3, 3.2, 4), 1);
  CHECK(t1[1] == eval_derivative(t1.params, 1, 0.3));
}

TEST_CASE("boundary coefficients") {
  const KernelParams p = rsk(0.5, 3.2, 6);
  for (double a : boundary_coeffs(EdgeCondition::clamped(), Edge::Left, p)) CHECK(a == 1.0);
  for (double a : boundary_coeffs(EdgeCondition::simply_supported(), Edge::Right, p)) CHECK(a == -1.0);
  for (double a : boundary_coeffs(EdgeCondition::transversely_supported(0.0), Edge::Left, p))
    CHECK(a == doctest::Approx(-1.0).epsilon(1e-15));

  // a_i = (K₁C¹_i + C²_i)/(K₁C¹_i - C²_i) with C^n_i = δ^{(n)}(-iΔ).
  const double k1 = 0.8;
  const auto ts = boundary_coeffs(EdgeCondition::transversely_supported(k1), Edge::Left, p);
  REQUIRE(ts.size() == 6);
  for (int i = 1; i <= 6; ++i) {
    const double c1 = eval_derivative(p, 1, -i * p.delta);
    const double c2 = eval_derivative(p, 2, -i * p.delta);
    CHECK(ts[static_cast<std::size_t>(i - 1)] == doctest::Approx((k1 * c1 + c2) / (k1 * c1 - c2)).epsilon(1e-13));
  }
  // The general even/odd family reproduces the special cases.
  const auto g = boundary_coeffs(EdgeCondition::general({0.0, k1, 1.0}), Edge::Left, p);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(ts[i]).epsilon(1e-14));
  for (double a : boundary_coeffs(EdgeCondition::general({0.0, 1.0}), Edge::Left, p))
    CHECK(a == doctest::Approx(1.0).epsilon(1e-14));
  for (double a : boundary_coeffs(EdgeCondition::general({0.0, 0.0, 1.0, 0.0, 0.5}), Edge::Left, p))
    CHECK(a == doctest::Approx(-1.0).epsilon(1e-14));

  // Choosing K₂ to cancel at i = 1 makes the relation unsolvable there.
  const double c1 = eval_derivative(p, 1, -p.delta);
  const double c2 = eval_derivative(p, 2, -p.delta);
  CHECK_THROWS_AS(boundary_coeffs(EdgeCondition::general({0.0, 1.0, c1 / c2}), Edge::Left, p),
                  DegenerateBoundaryError);
  CHECK_THROWS_AS(boundary_coeffs(EdgeCondition::general({0.0, 1, 1, 1, 1, 1}), Edge::Left, p),
                  UnsupportedError);
  CHECK(boundary_coeffs(EdgeCondition::periodic(), Edge::Left, p).empty());
}

TEST_CASE("fold matches brute-force elimination") {
  const std::vector<BoundarySpec> specs{
      BoundarySpec::periodic(),
      BoundarySpec::both(EdgeCondition::clamped()),
      BoundarySpec::both(EdgeCondition::simply_supported()),
      BoundarySpec::both(EdgeCondition::transversely_supported(0.7)),
      {EdgeCondition::general({0.0, 0.3, 1.0, 0.25}), EdgeCondition::simply_supported()},
      {EdgeCondition::clamped(), EdgeCondition::transversely_supported(-1.3)},
  };
  int compared = 0;
  for (const auto& spec : specs) {
    for (int n = 2; n <= 12; ++n) {
      for (int m = 1; m <= 6; ++m) {
        for (int q = 1; q <= 2; ++q) {
          const KernelParams p = rsk(0.6, 2.5, m);
          std::vector<double> left, right;
          try {
            left = boundary_coeffs(spec.left, Edge::Left, p);
            right = boundary_coeffs(spec.right, Edge::Right, p);
          } catch (const DegenerateBoundaryError&) {
            continue;
          }
          const WeightTable t = build_weights(p, q);
          const DiffMatrix d = build_diff_matrix(n, t, spec);
          const Eigen::MatrixXd ref = oracle::fold_matrix(
              n, m, [&](int j) { return t[j]; }, spec.is_periodic(), left, right);
          double worst = 0.0;
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(d(r, c) - ref(r, c)));
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(q);
          CHECK(worst <= 1e-13 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 700);
}

TEST_CASE("simply supported fold pattern near the edge") {
  const KernelParams p = rsk(1.0, 3.0, 3);
  const WeightTable t = build_weights(p, 2);
  const DiffMatrix d = build_diff_matrix(10, t, BoundarySpec::both(EdgeCondition::simply_supported()));
  // Row 1: column j gets c_{1-j} - c_{1+j}; column 0 collects c_1 + 2(c_2 + c_3).
  CHECK(d(1, 2) == doctest::Approx(t[-1] - t[3]).epsilon(1e-15));
  CHECK(d(1, 1) == doctest::Approx(t[0] - t[2]).epsilon(1e-15));
  CHECK(d(1, 0) == doctest::Approx(t[1] + 2.0 * (t[2] + t[3])).epsilon(1e-15));
}

TEST_CASE("matrix storage and translation invariance") {
  const KernelParams p = rsk(0.2, 3.2, 4);
  const WeightTable t = build_weights(p, 2);
  const DiffMatrix banded = build_diff_matrix(20, t, BoundarySpec::both(EdgeCondition::clamped()));
  CHECK(banded.storage() == DiffMatrix::Storage::Banded);
  for (int r = 4; r < 16; ++r) {
    const auto row = banded.row(r);
    CHECK(row.size() <= 9u);
    for (int c = r - 4; c <= r + 4; ++c) CHECK(banded(r, c) == t[r - c]);
  }
  CHECK(banded(10, 2) == 0.0);

  const DiffMatrix circ = build_diff_matrix(9, t, BoundarySpec::periodic());
  CHECK(circ.storage() == DiffMatrix::Storage::PeriodicBanded);

  const KernelParams full = rsk(0.2, 3.2, 19);
  const DiffMatrix dense = build_diff_matrix(20, build_weights(full, 2), BoundarySpec::both(EdgeCondition::simply_supported()));
  CHECK(dense.storage() == DiffMatrix::Storage::Dense);
  CHECK(dense(10, 0) != 0.0);
}

TEST_CASE("periodic first derivative is circulant with zero row sums") {
  const DiffMatrix d = build_diff_matrix(8, build_weights(rsk(0.5, 2.0, 3), 1), BoundarySpec::periodic());
  for (int r = 0; r < 8; ++r) {
    double s = 0.0;
    for (int c = 0; c < 8; ++c) {
      s += d(r, c);
      CHECK(d(r, c) == d((r + 1) % 8, (c + 1) % 8));
    }
    CHECK(std::abs(s) <= 1e-12);
  }
}

TEST_CASE("interpolation") {
  const Grid g = Grid::periodic(1, 2.0 * oracle::pi, 32);
  const KernelParams p = rsk(g.spacing(0), 3.2, 30);
  FieldSamples one(g);
  std::fill(one.values.begin(), one.values.end(), 1.0);
  CHECK(interpolate(one, p, BoundarySpec::periodic(), g.axis(0).coord(7)) == 1.0);

  const FieldSamples s = sampled(g, [](double x) { return std::sin(x); });
  CHECK(std::abs(interpolate(s, p, BoundarySpec::periodic(), 0.3) - std::sin(0.3)) <= 1e-10);
  CHECK(interpolate(s, p, BoundarySpec::periodic(), g.axis(0).coord(5)) == s[5]);
  CHECK_THROWS_AS(interpolate(s, p, BoundarySpec::periodic(), 2.0 * oracle::pi + 0.01), DomainError);
  CHECK_THROWS_AS(interpolate(s, p, BoundarySpec::periodic(), -0.01), DomainError);

  // Odd function about both walls: antisymmetric extension is exact.
  const Grid c = Grid::closed(1, oracle::pi, 33);
  const FieldSamples w = sampled(c, [](double x) { return std::sin(x); });
  const KernelParams pc = rsk(c.spacing(0), 3.2, 30);
  const auto ss = BoundarySpec::both(EdgeCondition::simply_supported());
  for (double x : {0.01, 0.3, 1.5, 3.13}) CHECK(std::abs(interpolate(w, pc, ss, x) - std::sin(x)) <= 1e-10);
  CHECK_THROWS_AS(interpolate(w, pc, ss, 3.2), DomainError);
}

TEST_CASE("derivative accuracy on periodic samples") {
  CHECK(periodic_error(32, 31, 3.2, 2) < 1e-10);

  const Grid g = Grid::periodic(1, 2.0 * oracle::pi, 32);
  FieldSamples c(g);
  std::fill(c.values.begin(), c.values.end(), 2.5);
  const auto d = apply_derivative(c, 0, build_diff_matrix(g, 0, build_weights(rsk(g.spacing(0), 3.2, 12), 1), BoundarySpec::periodic()));
  for (double v : d.values) CHECK(std::abs(v) <= 1e-12);

  // q=2 error on sin(x) shrinks as the bandwidth grows at fixed σ/Δ.
  double prev = 1e9;
  for (int m : {2, 4, 8, 16, 31}) {
    const double e = periodic_error(32, m, 3.2, 2);
    CAPTURE(m);
    CHECK(e < prev);
    prev = e;
  }
  // Accuracy is controlled by the bandwidth at small σ/Δ as well.
  CHECK(periodic_error(32, 8, 1.8, 1) < periodic_error(32, 4, 1.8, 1));
  CHECK(periodic_error(32, 16, 1.8, 1) < periodic_error(32, 8, 1.8, 1));
}

TEST_CASE("narrow stencil first derivative to 1e-4" * doctest::should_fail()) {
  // Measured L∞ error is about 3e-2: at M=4, σ/Δ=1.8 the truncated weights
  // only reproduce 96.5% of the derivative of sin.
  CHECK(periodic_error(32, 4, 1.8, 1) < 1e-4);
}

TEST_CASE("simply supported second derivative has a real negative spectrum") {
  for (int m : {4, 10, 20}) {
    const DiffMatrix d = build_diff_matrix(22, build_weights(rsk(0.3, 3.2, m), 2),
                                           BoundarySpec::both(EdgeCondition::simply_supported()));
    Eigen::MatrixXd a(20, 20);
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 20; ++c) a(r, c) = d(r + 1, c + 1);
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    for (int k = 0; k < 20; ++k) {
      const auto l = es.eigenvalues()(k);
      CHECK(std::abs(l.imag()) <= 1e-8 * std::abs(l));
      CHECK(l.real() < 0.0);
    }
  }
}

TEST_CASE("multi-dimensional application matches per-line products") {
  Grid g({Axis{0.0, 0.3, 5}, Axis{0.0, 0.3, 4}, Axis{0.0, 0.3, 150}});
  FieldSamples f(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = std::sin(0.37 * i) + 0.1 * i;
  for (int axis = 0; axis < 3; ++axis) {
    const DiffMatrix d = build_diff_matrix(g, axis, build_weights(rsk(0.3, 3.2, 3), 1),
                                           BoundarySpec::both(EdgeCondition::clamped()));
    const FieldSamples out = apply_derivative(f, axis, d);
    double worst = 0.0;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
      auto ijk = g.unravel(flat);
      double s = 0.0;
      for (int l = 0; l < g.count(axis); ++l) {
        auto other = ijk;
        other[static_cast<std::size_t>(axis)] = l;
        s += d(ijk[static_cast<std::size_t>(axis)], l) * f.values[g.index(other)];
      }
      worst = std::max(worst, std::abs(s - out.values[flat]));
    }
    CHECK(worst <= 1e-12);
  }
  const DiffMatrix wrong = build_diff_matrix(7, build_weights(rsk(0.3, 3.2, 3), 1), BoundarySpec::periodic());
  CHECK_THROWS_AS(apply_derivative(f, 0, wrong), ArgumentError);
}

TEST_CASE("grid and boundary validation") {
  CHECK_THROWS_AS(Grid({Axis{0.0, 0.0, 4}}), ArgumentError);
  CHECK_THROWS_AS(Grid({Axis{0.0, 1.0, 1}}), ArgumentError);
  Grid g = Grid::closed(2, 1.0, 4);
  CHECK_THROWS_AS(g.set_mask(std::vector<bool>(16, false)), ArgumentError);
  CHECK_THROWS_AS(g.set_mask(std::vector<bool>(15, true)), ArgumentError);
  BoundarySpec mixed{EdgeCondition::periodic(), EdgeCondition::clamped()};
  CHECK_THROWS_AS(mixed.validate(), ArgumentError);
  CHECK(parse_boundary_kind("simply-supported") == BoundaryKind::SimplySupported);
}
