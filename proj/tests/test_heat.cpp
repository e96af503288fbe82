#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gammalab/heat_lab.hpp"
#include "gammalab/rng.hpp"

using namespace gammalab;

TEST_CASE("spectral field collocation round trip 1d") {
  SpectralField u(1, 8, 2.0, 0.0);
  const std::uint64_t k = rng::key(5, 0);
  for (int i = 0; i < u.mode_count(); ++i)
    u.mode(i) = Complex(rng::gaussian(k, 2 * i), rng::gaussian(k, 2 * i + 1));
  u.enforce_reality();
  const auto vals = u.to_collocation();
  const SpectralField back =
      SpectralField::from_collocation(1, 8, 2.0, 0.0, vals);
  for (int i = 0; i < u.mode_count(); ++i)
    CHECK(std::abs(back.mode(i) - u.mode(i)) < 1e-12);
}

TEST_CASE("spectral field collocation round trip 2d") {
  SpectralField u(2, 3, 2.0, 0.0);
  const std::uint64_t k = rng::key(6, 0);
  for (int i = 0; i < u.mode_count(); ++i)
    u.mode(i) = Complex(rng::gaussian(k, 2 * i), rng::gaussian(k, 2 * i + 1));
  u.enforce_reality();
  const auto vals = u.to_collocation();
  const SpectralField back =
      SpectralField::from_collocation(2, 3, 2.0, 0.0, vals);
  for (int i = 0; i < u.mode_count(); ++i)
    CHECK(std::abs(back.mode(i) - u.mode(i)) < 1e-12);
}

TEST_CASE("derivative acts as ik") {
  // u = sin(3x): modes at k = +-3 with -+ i/2
  SpectralField u(1, 4, 2.0, 0.0);
  u.mode(3 + 4) = Complex(0.0, -0.5);  // k = 3
  u.mode(-3 + 4) = Complex(0.0, 0.5);  // k = -3
  const SpectralField du = u.derivative(0);
  // expect 3 cos(3x): modes 3/2 at +-3
  CHECK(std::abs(du.mode(3 + 4) - Complex(1.5, 0.0)) < 1e-15);
  CHECK(std::abs(du.mode(-3 + 4) - Complex(1.5, 0.0)) < 1e-15);
  const auto vals = du.to_collocation();
  const int M = u.collocation_points();
  for (int j = 0; j < M; ++j) {
    const double x = 2.0 * std::numbers::pi * j / M;
    CHECK(vals[j] == doctest::Approx(3.0 * std::cos(3.0 * x)).epsilon(1e-10));
  }
}

TEST_CASE("sobolev norm of a single mode") {
  SpectralField u(1, 4, 2.0, 0.0);
  u.mode(2 + 4) = Complex(0.5, 0.0);
  u.mode(-2 + 4) = Complex(0.5, 0.0);
  // u = cos(2x): L2 norm over the torus is sqrt(pi)
  CHECK(u.sobolev_norm(0.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  // H^1 weight multiplies by (1+4)^{1/2}
  CHECK(u.sobolev_norm(1.0) ==
        doctest::Approx(std::sqrt(5.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("heat step decays a pure mode without noise") {
  SpectralField u(1, 4, 2.0, 0.0);
  u.mode(1 + 4) = Complex(0.5, 0.0);
  u.mode(-1 + 4) = Complex(0.5, 0.0);
  NoisePreset noise;
  noise.b = {0.5};
  Vector dw = Vector::Zero(1);
  const HeatStepInfo info = spectral_heat_step(u, noise, 0.1, dw);
  CHECK(info.parabolicity_ok);
  CHECK(std::abs(u.mode(1 + 4) - Complex(0.5 * std::exp(-0.1), 0.0)) < 1e-14);
  NoisePreset hot;
  hot.b = {1.6};
  CHECK_FALSE(spectral_heat_step(u, hot, 0.1, dw).parabolicity_ok);
}

TEST_CASE("nemytskii map is pointwise") {
  SpectralField u(1, 4, 2.0, 0.0);
  u.mode(4) = Complex(0.25, 0.0);  // constant 1/4
  const SpectralField v =
      nemytskii([](double a, double) { return a * a; }, u);
  CHECK(std::abs(v.mode(4) - Complex(0.0625, 0.0)) < 1e-13);
  for (int i = 0; i < v.mode_count(); ++i)
    if (i != 4) CHECK(std::abs(v.mode(i)) < 1e-13);
}

TEST_CASE("nemytskii lipschitz inequality") {
  const std::uint64_t k = rng::key(9, 0);
  auto rand_field = [&](int stream) {
    SpectralField u(1, 6, 2.0, 0.0);
    for (int i = 0; i < u.mode_count(); ++i)
      u.mode(i) = 0.2 * Complex(rng::gaussian(rng::key(9, stream), 2 * i),
                                rng::gaussian(rng::key(9, stream), 2 * i + 1));
    u.enforce_reality();
    return u;
  };
  (void)k;
  std::vector<SpectralField> phi1, phi2;
  for (int t = 0; t < 4; ++t) {
    phi1.push_back(rand_field(2 * t));
    phi2.push_back(rand_field(2 * t + 1));
  }
  // f(u, du) = sin(u) + 0.5 du: L1 = 1, L2 = 0.5
  const auto f = [](double a, double b) { return std::sin(a) + 0.5 * b; };
  const LipschitzCheck chk =
      nemytskii_lipschitz_check(f, 1.0, 0.5, phi1, phi2, 0.25);
  CHECK(chk.margin() >= 0.0);
  CHECK(chk.lhs > 0.0);
}

TEST_CASE("exponent fit recovers a pure power law") {
  std::vector<double> h, v;
  for (double x = 1e-3; x < 0.5; x *= 2.0) {
    h.push_back(x);
    v.push_back(3.0 * std::pow(x, 0.37));
  }
  const ExponentFit fit = fit_exponent(h, v);
  CHECK(fit.exponent == doctest::Approx(0.37).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.conclusive);
}

TEST_CASE("deterministic exponent rows") {
  for (double theta : {0.6, 0.75, 1.0}) {
    const ExponentRow row = deterministic_exponent_row(64, theta, 1);
    CHECK(row.conclusive);
    CHECK(std::abs(row.time_exp_measured - (theta - 0.5)) < 0.05);
  }
  CHECK_THROWS(deterministic_exponent_row(64, 0.4, 1));
}

TEST_CASE("stochastic exponent row near the predicted scale") {
  const ExponentRow row = stochastic_exponent_row(32, 0.25, 2.0, -1.0, 0.5,
                                                  32, 3);
  CHECK(row.time_exp_paper == doctest::Approx(0.25));
  CHECK(std::isfinite(row.time_exp_measured));
  CHECK(std::isfinite(row.space_exp_measured));
}

TEST_CASE("square function norm is refinement stable") {
  // fixed smooth trajectory sampled at two rates
  auto traj = [&](int steps) {
    std::vector<SpectralField> out;
    for (int t = 0; t <= steps; ++t) {
      SpectralField u(1, 8, 2.0, 0.0);
      const double tt = static_cast<double>(t) / steps;
      u.mode(1 + 8) = Complex(0.5 * std::exp(-tt), 0.0);
      u.mode(-1 + 8) = Complex(0.5 * std::exp(-tt), 0.0);
      u.mode(3 + 8) = Complex(0.1 * std::exp(-9.0 * tt), 0.0);
      u.mode(-3 + 8) = Complex(0.1 * std::exp(-9.0 * tt), 0.0);
      out.push_back(u);
    }
    return out;
  };
  for (double q : {1.5, 2.0, 4.0}) {
    const double c = measure_sqfn_norm(traj(64), 1, q, 1.0 / 64);
    const double r = measure_sqfn_norm(traj(128), 1, q, 1.0 / 128);
    CHECK(std::isfinite(c));
    CHECK(std::abs(c - r) / r < 0.05);
  }
}
