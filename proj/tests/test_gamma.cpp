#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gammalab/frequency.hpp"
#include "gammalab/gamma_norms.hpp"
#include "gammalab/rng.hpp"

using namespace gammalab;

namespace {
const SpaceModel kH2 = SpaceModel::hilbert(2);
}

TEST_CASE("hilbert norm closed form") {
  // single interval of length 4, value (3,4): norm = 5 * 2
  const TimeGrid g = TimeGrid::uniform(0.0, 4.0, 1);
  Vector v(2);
  v << 3.0, 4.0;
  const StepFunction f = StepFunction::indicator(g, kH2, 0.0, 4.0, v);
  CHECK(gamma_norm_hilbert(f).value == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("hilbert norm is homogeneous and grid-refinement invariant") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 8);
  StepFunction f = random_step(g, kH2, 1, 5);
  const double base = gamma_norm_hilbert(f).value;
  StepFunction scaled = f;
  scaled *= -2.5;
  CHECK(gamma_norm_hilbert(scaled).value == doctest::Approx(2.5 * base));
  // refine: same function on a finer grid
  const TimeGrid r = g.refined();
  std::vector<CMatrix> vals(r.intervals());
  for (int i = 0; i < r.intervals(); ++i) vals[i] = f.value(i / 2);
  const StepFunction fr(r, kH2, vals);
  CHECK(gamma_norm_hilbert(fr).value == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("mc estimator agrees with exact norm") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 12);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const StepFunction f = random_step(g, SpaceModel::hilbert(5), 2, seed);
    const double exact = gamma_norm_hilbert(f).value;
    const GammaEstimate mc = gamma_norm_mc(f, 8192, seed, 9);
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.stderr_);
    // deterministic in (seed, stream)
    CHECK(gamma_norm_mc(f, 8192, seed, 9).value == mc.value);
  }
}

TEST_CASE("square function norm at q=2 equals the exact norm") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 6);
  const StepFunction f = random_step(g, kH2, 2, 17);
  CHECK(gamma_norm_sqfn(f).value ==
        doctest::Approx(gamma_norm_hilbert(f).value).epsilon(1e-13));
  CHECK(gamma_norm(f).value == gamma_norm_hilbert(f).value);
}

TEST_CASE("sqfn norm on l^q targets") {
  // one interval length 1, scalar column y: norm = ||y||_q
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 1);
  const SpaceModel x = SpaceModel::lq(2, 4.0);
  Vector v(2);
  v << 1.0, 2.0;
  const StepFunction f = StepFunction::indicator(g, x, 0.0, 1.0, v);
  CHECK(gamma_norm_sqfn(f).value ==
        doctest::Approx(std::pow(1.0 + 16.0, 0.25)));
  CHECK_THROWS(gamma_norm_hilbert(f));
}

TEST_CASE("khintchine-type comparison between q=1 and the mc norm") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 8);
  const SpaceModel x = SpaceModel::lq(3, 1.0);
  const StepFunction f = random_step(g, x, 1, 23);
  const double sq = gamma_norm_sqfn(f).value;
  const GammaEstimate mc = gamma_norm_mc(f, 16384, 23, 1);
  // the two norms are equivalent with moderate constants
  CHECK(mc.value / sq > 0.70);
  CHECK(mc.value / sq < 1.45);
}

TEST_CASE("restriction is monotone, integrate is exact") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 8);
  const StepFunction f = random_step(g, kH2, 1, 31);
  const StepFunction r = restrict(f, {{0.25, 0.75}});
  CHECK(gamma_norm_hilbert(r).value <= gamma_norm_hilbert(f).value + 1e-14);
  CVector total = CVector::Zero(2);
  for (int i = 0; i < 8; ++i) total += g.length(i) * f.column(i);
  CHECK((integrate(f) - total).norm() < 1e-14);
  const CVector part = integrate(f, {{0.0, 0.5}});
  CVector half = CVector::Zero(2);
  for (int i = 0; i < 4; ++i) half += g.length(i) * f.column(i);
  CHECK((part - half).norm() < 1e-14);
  // window edges must lie on the grid
  CHECK_THROWS(restrict(f, {{0.3, 0.7}}));
}

TEST_CASE("gamma bound on hilbert targets is the max operator norm") {
  Matrix t1 = Matrix::Identity(2, 2);
  Matrix t2(2, 2);
  t2 << 0.0, 3.0, 0.0, 0.0;
  const double b = gamma_bound_estimate({t1, t2}, kH2, 4, 7);
  CHECK(b == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hardy scalar example") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 16);
  const SpaceModel x = SpaceModel::hilbert(1);
  Vector one(1);
  one << 1.0;
  const StepFunction f = StepFunction::indicator(g, x, 0.0, 1.0, one);
  const HardyPair hp = hardy_check(f, 0.5);
  CHECK(hp.lhs == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
  CHECK(hp.rhs == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("hardy inequality holds on random data") {
  const TimeGrid g = TimeGrid::uniform(0.25, 2.25, 16);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StepFunction f = random_step(g, SpaceModel::hilbert(3), 1, seed);
    for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
      const HardyPair hp = hardy_check(f, alpha);
      CHECK(hp.lhs <= hp.rhs * (1.0 + 1e-3));
    }
  }
}

TEST_CASE("fourier transform of an indicator") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 4);
  const SpaceModel x = SpaceModel::hilbert(1);
  Vector one(1);
  one << 1.0;
  const StepFunction f = StepFunction::indicator(g, x, 0.0, 1.0, one);
  // f^(xi) = (1 - e^{-i xi}) / (i xi), |f^(0)| = 1
  CHECK(std::abs(fourier_at(f, 0.0)(0, 0) - Complex(1.0, 0.0)) < 1e-14);
  const double xi = 3.0;
  const Complex expect =
      (Complex(1.0, 0.0) - std::exp(Complex(0.0, -xi))) / Complex(0.0, xi);
  CHECK(std::abs(fourier_at(f, xi)(0, 0) - expect) < 1e-12);
}

TEST_CASE("plancherel through the symbol quadrature") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 8);
  const StepFunction f = random_step(g, kH2, 1, 3);
  const double direct = gamma_norm_hilbert(f).value;
  const double freq =
      scalar_weighted_l2(f, [](double) { return 1.0; });
  // accuracy limited by the geometric tail extrapolation of |f^|^2 ~ 1/s^2
  CHECK(freq == doctest::Approx(direct).epsilon(1e-4));
}

TEST_CASE("fourier round trip on the same grid") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 8);
  const StepFunction f = random_step(g, kH2, 1, 13);
  const double xi_max = std::numbers::pi / g.length(0);
  const TimeGrid fg = frequency_grid(xi_max, 64);
  const StepFunction fhat = fourier(f, fg);
  const StepFunction back = fourier_inverse(fhat, g);
  double worst = 0.0;
  for (int i = 0; i < g.intervals(); ++i)
    worst = std::max(worst, (back.value(i) - f.value(i)).norm());
  CHECK(worst < 1e-6);
}

TEST_CASE("gamma_s_norm at s=0 is consistent with the plain norm") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 16);
  const StepFunction f = random_step(g, kH2, 1, 29);
  const double s0 = gamma_s_norm(f, 0.0).value;
  const double plain = gamma_norm_hilbert(f).value;
  // band-limited reading discards frequencies beyond the Nyquist rate
  CHECK(s0 <= plain * 1.01);
  CHECK(s0 >= 0.8 * plain);
}

TEST_CASE("gamma_s_norm grows with s") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 16);
  const StepFunction f = random_step(g, kH2, 1, 37);
  CHECK(gamma_s_norm(f, 0.4).value >= gamma_s_norm(f, 0.0).value);
  CHECK(gamma_s_norm(f, 0.0).value >= gamma_s_norm(f, -0.4).value);
}
