#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "dsc/error.hpp"
#include "dsc/pde.hpp"

using namespace dsc;
using namespace dsc::pde;

namespace {

std::vector<double> errors(int n, double r, int modes) {
  const auto rep = solve_waveguide(WaveguideProblem::square(n, n, r, modes));
  const auto exact = oracle::square_spectrum(modes, 10.0 * oracle::pi);
  std::vector<double> e;
  for (int k = 0; k < modes; ++k) e.push_back(std::abs(rep.eigenvalues[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)]));
  return e;
}

}  // namespace

TEST_CASE("square guide low modes") {
  const auto rep = solve_waveguide(WaveguideProblem::square(24, 24, 3.2, 10));
  CHECK(rep.unknowns == 23u * 23u);
  CHECK(std::abs(rep.eigenvalues[0] - 0.02) <= 1e-8);
  CHECK(std::abs(rep.eigenvalues[1] - 0.05) <= 1e-8);
  CHECK(std::abs(rep.eigenvalues[2] - 0.05) <= 1e-8);
  const auto exact = oracle::square_spectrum(10, 10.0 * oracle::pi);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(rep.analytic[k] == doctest::Approx(exact[k]).epsilon(1e-15));
    CHECK(rep.abs_error[k] >= 0.0);
    if (k) CHECK(rep.eigenvalues[k] >= rep.eigenvalues[k - 1]);
  }
}

TEST_CASE("square guide spectrum is real and positive") {
  const auto rep = solve_waveguide(WaveguideProblem::square(12, 12, 2.65, 121));
  for (double l : rep.eigenvalues) CHECK(l > 0.0);
  CHECK(rep.max_imag <= 1e-8 * rep.eigenvalues.back());
}

TEST_CASE("per-mode errors shrink along the grid ladder") {
  // Once a mode reaches rounding level it cannot shrink further; such pairs
  // only need to stay there. Eigenvalue rounding scales with the operator
  // norm, about 2(π/Δ)² on the finest grid.
  const auto e12 = errors(12, 2.65, 20);
  const auto e24 = errors(24, 3.2, 20);
  const auto e36 = errors(36, 4.2, 20);
  const auto exact = oracle::square_spectrum(20, 10.0 * oracle::pi);
  for (std::size_t k = 0; k < 20; ++k) {
    CAPTURE(k);
    const double floor = 64.0 * 2.2e-16 * 2.0 * std::pow(36.0 / 10.0, 2);
    CHECK(e24[k] < e12[k]);
    CHECK((e36[k] < e24[k] || std::max(e36[k], e24[k]) <= floor));
  }
}

TEST_CASE("propagation metadata") {
  auto p = WaveguideProblem::square(12, 12, 2.65, 3);
  p.omega = 0.3;
  p.eps_nu = 2.0;
  const auto rep = solve_waveguide(p);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(rep.cutoff[k] == doctest::Approx(std::sqrt(rep.eigenvalues[k] / 2.0)));
    CHECK(rep.alpha[k] == doctest::Approx(std::sqrt(0.18 - rep.eigenvalues[k])));
  }
}

TEST_CASE("shaped guides") {
  for (auto shape : {GuideShape::TShape, GuideShape::EShape}) {
    CAPTURE(to_string(shape));
    auto p = WaveguideProblem::shaped(shape, 30, 4.8, 0, 6);
    p.keep_modes = 6;
    const auto rep = solve_waveguide(p);
    // Domain monotonicity: a subdomain of the square has a larger fundamental.
    CHECK(rep.eigenvalues[0] > 0.02);
    CHECK(rep.max_imag <= 1e-8 * rep.eigenvalues.back());
    for (const auto& mode : rep.modes) {
      for (std::size_t f = 0; f < mode.values.size(); ++f)
        if (!p.grid.interior(f)) CHECK(mode.values[f] == 0.0);
    }
  }
  // The T's top band alone is a 10π × 4π rectangle: its fundamental bounds the T's.
  auto t = WaveguideProblem::shaped(GuideShape::TShape, 30, 4.8, 0, 1);
  t.keep_modes = 1;
  const auto rt = solve_waveguide(t);
  CHECK(rt.eigenvalues[0] < 0.01 * (1.0 + 1.0 / 0.16));
  // ... and its fundamental mode peaks inside that band.
  const auto& m = rt.modes[0];
  std::size_t arg = 0;
  for (std::size_t f = 0; f < m.values.size(); ++f)
    if (std::abs(m.values[f]) > std::abs(m.values[arg])) arg = f;
  CHECK(m.grid.unravel(arg)[1] >= 18);
}

TEST_CASE("shape masks") {
  const auto mask = shape_mask(shape_rects(GuideShape::TShape), 51);
  auto at = [&](int i, int j) { return mask[static_cast<std::size_t>(j * 51 + i)]; };
  CHECK(at(25, 10));   // stem
  CHECK(at(5, 40));    // band
  CHECK_FALSE(at(5, 10));
  CHECK(at(25, 30));   // stem meets band
  CHECK_FALSE(at(0, 40));
}

TEST_CASE("waveguide errors") {
  Grid g = Grid::closed(2, kGuideLength, 12);
  std::vector<bool> mask(144, false);
  for (int j = 2; j <= 4; ++j)
    for (int i = 2; i <= 4; ++i) mask[static_cast<std::size_t>(j * 12 + i)] = true;
  for (int j = 7; j <= 9; ++j)
    for (int i = 7; i <= 9; ++i) mask[static_cast<std::size_t>(j * 12 + i)] = true;
  g.set_mask(mask);
  WaveguideProblem p{.grid = g,
                     .kernel = KernelParams::from_ratio(KernelFamily::RegularizedShannon,
                                                        g.spacing(0), 3.2, 11),
                     .n_modes = 2};
  CHECK_THROWS_AS(solve_waveguide(p), GeometryError);
  CHECK_THROWS_AS(solve_waveguide(WaveguideProblem::square(6, 6, 3.2, 26)), ArgumentError);
}

TEST_CASE("laplace box") {
  const auto prob = ElectrostaticsProblem::laplace_box();
  const auto rep = solve_electrostatics(prob);
  REQUIRE(rep.probes.size() == 1);
  CHECK(std::abs(rep.probes[0].value - 2.5) <= 1e-3);
  const Grid& g = rep.field.grid;
  for (int i = 0; i < 32; ++i) CHECK(rep.field.values[g.index({i, 0, 0})] == 0.0);
  double lo = 1e9, hi = -1e9;
  for (int j = 1; j < 31; ++j)
    for (int i = 1; i < 31; ++i) {
      const double v = rep.field.values[g.index({i, j, 0})];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  CHECK(lo > 0.0);
  CHECK(hi < 10.0);
  // Fourier series away from the lid corners.
  for (double x : {0.2, 0.5, 0.7})
    for (double y : {0.1, 0.5, 0.8})
      CHECK(std::abs(sample_potential(rep, prob, x, y) - oracle::box_series(x, y, 10.0)) <= 5e-3);
}

TEST_CASE("charged patch raises the potential") {
  const auto base = solve_electrostatics(ElectrostaticsProblem::laplace_box());
  const auto prob = ElectrostaticsProblem::charged_box();
  const auto rep = solve_electrostatics(prob);
  const double centre = sample_potential(rep, prob, 0.5, 0.8);
  CHECK(centre > sample_potential(base, ElectrostaticsProblem::laplace_box(), 0.5, 0.8));
  // Patch sampling: 6 × 5 nodes.
  int inside = 0;
  const double h = 1.0 / 31.0;
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i)
      if (i * h >= 0.41 && i * h <= 0.59 && j * h >= 0.72 && j * h <= 0.88) ++inside;
  CHECK(inside == 30);
  auto bad = prob;
  bad.patches[0].eps_r = 0.0;
  CHECK_THROWS_AS(solve_electrostatics(bad), ParameterError);
  bad = prob;
  bad.patches[0].x1 = 1.2;
  CHECK_THROWS_AS(solve_electrostatics(bad), ParameterError);
}

TEST_CASE("wave starts exact and improves with bandwidth") {
  double prev = 1e9;
  for (auto [m, r] : {std::pair{6, 2.0}, {12, 2.65}, {24, 3.2}}) {
    auto p = WavePropagationProblem::cube(1, 24, m, r, 10.0, 5.0);
    p.dt = 0.005;
    const auto tr = propagate_wave(p);
    REQUIRE(tr.times.size() == 3);
    CHECK(tr.linf_error[0] == 0.0);
    CHECK(tr.times.back() == 10.0);
    CHECK(tr.linf_error.back() < prev);
    prev = tr.linf_error.back();
  }
}

TEST_CASE("wave energy is conserved") {
  auto p = WavePropagationProblem::cube(3, 24, 24, 3.2, 10.0, 1.0);
  p.dt = 0.02;
  p.track_energy = true;
  const auto tr = propagate_wave(p);
  REQUIRE(tr.energy.size() == 11);
  // Continuous energy of the plane wave: 2 ω² (10π)³ / 2, up to the
  // discretization error of the gradient.
  CHECK(tr.energy[0] == doctest::Approx(3.0 * std::pow(10.0 * oracle::pi, 3)).epsilon(1e-7));
  for (double e : tr.energy) CHECK(std::abs(e / tr.energy[0] - 1.0) <= 1e-6);
}

TEST_CASE("rk4 temporal order") {
  std::vector<double> dts{0.2, 0.1, 0.05}, errs;
  for (double dt : dts) {
    auto p = WavePropagationProblem::cube(1, 36, 36, 4.2, 10.0, 10.0);
    p.dt = dt;
    errs.push_back(propagate_wave(p).linf_error.back());
  }
  CHECK(oracle::fitted_order(dts, errs) >= 3.7);
}

TEST_CASE("wave stability rule and divergence") {
  auto p = WavePropagationProblem::cube(2, 16, 16, 3.2, 40.0, 10.0);
  const double dt = stable_time_step(p);
  CHECK(dt > 0.0);
  CHECK_NOTHROW(propagate_wave(p));
  p.dt = 4.0 * dt;
  p.report_every = 40.0;
  try {
    propagate_wave(p);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 40.0);
  }
  p.alpha = {0.3, 1.0, 1.0};
  CHECK_THROWS_AS(propagate_wave(p), ParameterError);
}
