#include "gammalab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gammalab/frequency.hpp"
#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

// variance-exact noise scale for one exponential-Euler step:
// Var int_0^d e^{-lam s} dW = (1 - e^{-2 Re lam d}) / (2 Re lam)
double ou_scale(Complex lam, double d) {
  const double a = 2.0 * lam.real() * d;
  if (std::abs(a) < 1e-8) return 1.0;
  return std::sqrt(-std::expm1(-a) / a);
}

}  // namespace

CylindricalBM::CylindricalBM(TimeGrid grid, int noise_dim, int samples,
                             std::uint64_t seed)
    : grid_(std::move(grid)), m_(noise_dim), samples_(samples), seed_(seed) {
  if (m_ < 1 || samples_ < 1)
    throw std::invalid_argument("need noise_dim >= 1, samples >= 1");
  grid_.validate();
  incr_.resize(samples_);
  for (int w = 0; w < samples_; ++w) {
    incr_[w].resize(grid_.intervals());
    for (int i = 0; i < grid_.intervals(); ++i) {
      const std::uint64_t k = rng::key(seed_, w, 0, i);
      const double sd = std::sqrt(grid_.length(i));
      incr_[w][i].resize(m_);
      for (int c = 0; c < m_; ++c)
        incr_[w][i][c] = sd * rng::gaussian(k, c);
    }
  }
}

Vector CylindricalBM::path(int w, int j) const {
  Vector acc = Vector::Zero(m_);
  for (int i = 0; i < j; ++i) acc += incr_[w][i];
  return acc;
}

CylindricalBM CylindricalBM::refined() const {
  CylindricalBM out;
  out.grid_ = grid_.refined();
  out.m_ = m_;
  out.samples_ = samples_;
  out.level_ = level_ + 1;
  out.seed_ = seed_;
  out.incr_.resize(samples_);
  for (int w = 0; w < samples_; ++w) {
    out.incr_[w].resize(out.grid_.intervals());
    for (int i = 0; i < grid_.intervals(); ++i) {
      // midpoint (bridge) split: halves sum to the coarse increment
      const std::uint64_t k =
          rng::key(seed_, w, 1000 + static_cast<std::uint64_t>(level_) + 1, i);
      const double sd = 0.5 * std::sqrt(grid_.length(i));
      Vector xi(m_);
      for (int c = 0; c < m_; ++c) xi[c] = sd * rng::gaussian(k, c);
      out.incr_[w][2 * i] = 0.5 * incr_[w][i] + xi;
      out.incr_[w][2 * i + 1] = 0.5 * incr_[w][i] - xi;
    }
  }
  return out;
}

AdaptedProcess::AdaptedProcess(TimeGrid grid, int dim, int noise_dim,
                               int samples)
    : grid_(std::move(grid)), n_(dim), m_(noise_dim), samples_(samples) {
  grid_.validate();
  val_.assign(samples_,
              std::vector<Matrix>(grid_.intervals(), Matrix::Zero(n_, m_)));
}

AdaptedProcess AdaptedProcess::deterministic(const StepFunction& g,
                                             int samples) {
  if (!g.is_real(1e-12))
    throw std::invalid_argument("integrand must be real valued");
  AdaptedProcess out(g.grid(), g.dim(), g.noise_dim(), samples);
  for (int w = 0; w < samples; ++w)
    for (int i = 0; i < g.grid().intervals(); ++i)
      out.val_[w][i] = g.value(i).real();
  return out;
}

double AdaptedProcess::sample_gamma_norm(int w) const {
  std::vector<double> terms(grid_.intervals());
  for (int i = 0; i < grid_.intervals(); ++i)
    terms[i] = grid_.measure(i) * val_[w][i].squaredNorm();
  return std::sqrt(pairwise_sum(terms));
}

PathEnsemble::PathEnsemble(TimeGrid grid, int dim, int samples)
    : grid_(std::move(grid)), n_(dim), samples_(samples) {
  grid_.validate();
  path_.assign(samples_, std::vector<Vector>(grid_.knots.size(),
                                             Vector::Zero(n_)));
}

StepFunction PathEnsemble::sample_steps(int w, const SpaceModel& target) const {
  std::vector<CMatrix> vals(grid_.intervals());
  for (int i = 0; i < grid_.intervals(); ++i)
    vals[i] = path_[w][i].cast<Complex>();
  return StepFunction(grid_, target, std::move(vals));
}

double PathEnsemble::sample_sup(int w) const {
  double m = 0.0;
  for (const auto& u : path_[w]) m = std::max(m, u.norm());
  return m;
}

double PathEnsemble::sample_weighted_l2(int w, const Matrix& b) const {
  std::vector<double> terms(grid_.intervals());
  for (int i = 0; i < grid_.intervals(); ++i)
    terms[i] = grid_.length(i) * (b * path_[w][i]).squaredNorm();
  return std::sqrt(pairwise_sum(terms));
}

PathEnsemble ito_integral(const AdaptedProcess& g, const CylindricalBM& w) {
  if (!g.grid().same_knots(w.grid()) || g.noise_dim() != w.noise_dim() ||
      g.samples() != w.samples())
    throw std::invalid_argument("integrand and noise do not match");
  PathEnsemble out(g.grid(), g.dim(), g.samples());
  for (int s = 0; s < g.samples(); ++s)
    for (int i = 0; i < g.grid().intervals(); ++i)
      out.at(s, i + 1) = out.at(s, i) + g.value(s, i) * w.increment(s, i);
  return out;
}

IsomorphismCheck ito_isomorphism_check(const AdaptedProcess& g,
                                       const CylindricalBM& w, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  const PathEnsemble u = ito_integral(g, w);
  std::vector<double> sups(g.samples()), norms(g.samples());
  for (int s = 0; s < g.samples(); ++s) {
    sups[s] = std::pow(u.sample_sup(s), p);
    norms[s] = std::pow(g.sample_gamma_norm(s), p);
  }
  IsomorphismCheck out;
  out.lhs = pairwise_sum(sups) / g.samples();
  out.rhs = pairwise_sum(norms) / g.samples();
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

PathEnsemble stoch_convolve(const SectorialOp& a, const AdaptedProcess& g,
                            const CylindricalBM& w, bool exact_integrator) {
  if (!g.grid().same_knots(w.grid()) || g.noise_dim() != w.noise_dim() ||
      g.samples() != w.samples())
    throw std::invalid_argument("integrand and noise do not match");
  if (g.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
  PathEnsemble out(g.grid(), g.dim(), g.samples());
  const int nj = g.grid().intervals();
  if (!exact_integrator || !a.diagonalizable()) {
    for (int s = 0; s < g.samples(); ++s) {
      CVector u = CVector::Zero(a.dim());
      for (int i = 0; i < nj; ++i) {
        const double d = g.grid().length(i);
        const CVector kick =
            (g.value(s, i) * w.increment(s, i)).cast<Complex>();
        u = a.semigroup(d) * (u + kick);
        out.at(s, i + 1) = u.real();
      }
    }
    return out;
  }
  const CVector& lam = a.eigenvalues();
  const CMatrix& v = a.eigenvectors();
  const CMatrix& vinv = a.eigenvectors_inverse();
  for (int s = 0; s < g.samples(); ++s) {
    CVector z = CVector::Zero(a.dim());
    for (int i = 0; i < nj; ++i) {
      const double d = g.grid().length(i);
      const CVector kick =
          vinv * (g.value(s, i) * w.increment(s, i)).cast<Complex>();
      for (int k = 0; k < a.dim(); ++k)
        z[k] = std::exp(-lam[k] * d) * z[k] + ou_scale(lam[k], d) * kick[k];
      out.at(s, i + 1) = (v * z).real();
    }
  }
  return out;
}

StochMaxregResult stoch_maxreg_constant(const SectorialOp& a, int trials,
                                        int samples, double p,
                                        std::uint64_t seed, int time_steps,
                                        double horizon) {
  if (!a.invertible() || !(a.angle() < 1.5707963267948966))
    throw std::invalid_argument("need invertible A with analytic semigroup");
  const SpaceModel target = SpaceModel::hilbert(a.dim());
  const TimeGrid grid = TimeGrid::uniform(0.0, horizon, time_steps);
  const Matrix ahalf = a.frac_power(0.5).real();
  // trapezoid over the horizon plus the exact free-decay tail, so the
  // half-line integral int_0^inf ||A^{1/2} U||^2 dt carries no horizon cut
  const bool exact_tail = a.diagonalizable();
  CMatrix pmat, vinv;
  if (exact_tail) {
    const CMatrix bv = ahalf.cast<Complex>() * a.eigenvectors();
    pmat = bv.adjoint() * bv;
    vinv = a.eigenvectors_inverse();
  }
  const CVector& lam = a.eigenvalues();
  auto weighted_sq = [&](const PathEnsemble& u, int s) {
    double acc = 0.0;
    const int nj = u.grid().intervals();
    for (int i = 0; i < nj; ++i)
      acc += 0.5 * u.grid().length(i) *
             ((ahalf * u.at(s, i)).squaredNorm() +
              (ahalf * u.at(s, i + 1)).squaredNorm());
    if (exact_tail) {
      const CVector z = vinv * u.at(s, nj).cast<Complex>();
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l)
          acc += (std::conj(z[k]) * pmat(k, l) * z[l] /
                  (std::conj(lam[k]) + lam[l]))
                     .real();
    }
    return acc;
  };
  StochMaxregResult best;
  for (int t = 0; t < trials; ++t) {
    const StepFunction gstep = random_step(grid, target, 1, seed, t);
    const AdaptedProcess g = AdaptedProcess::deterministic(gstep, samples);
    const CylindricalBM w(grid, 1, samples, rng::key(seed, 7000, t));
    const PathEnsemble u = stoch_convolve(a, g, w);
    std::vector<double> num(samples);
    for (int s = 0; s < samples; ++s)
      num[s] = std::pow(weighted_sq(u, s), 0.5 * p);
    const MeanStderr ms = batch_mean_stderr(num);
    const double lhs = std::pow(ms.mean, 1.0 / p);
    const double den = gamma_norm_hilbert(gstep).value;
    if (den <= 0.0) continue;
    const double c = lhs / den;
    if (c > best.constant) {
      best.constant = c;
      best.stderr_ =
          ms.mean > 0.0 ? c * ms.stderr_ / (p * ms.mean) : 0.0;
    }
  }
  return best;
}

double spacetime_reg_check(const SectorialOp& a, const AdaptedProcess& g,
                           const CylindricalBM& w, double theta) {
  if (!(theta >= 0.0) || theta >= 0.5)
    throw std::invalid_argument("theta must lie in [0, 1/2)");
  const PathEnsemble u = stoch_convolve(a, g, w);
  const Matrix apow = a.frac_power(0.5 - theta).real();
  const SpaceModel target = SpaceModel::hilbert(a.dim());
  std::vector<double> num(g.samples()), den(g.samples());
  for (int s = 0; s < g.samples(); ++s) {
    StepFunction steps = u.sample_steps(s, target);
    std::vector<CMatrix> weighted(steps.grid().intervals());
    for (int i = 0; i < steps.grid().intervals(); ++i)
      weighted[i] = apow.cast<Complex>() * steps.value(i);
    StepFunction au(steps.grid(), target, std::move(weighted));
    num[s] = std::pow(gamma_s_norm(au, theta).value, 2.0);
    den[s] = std::pow(g.sample_gamma_norm(s), 2.0);
  }
  const double l = pairwise_sum(num) / g.samples();
  const double r = pairwise_sum(den) / g.samples();
  return r > 0.0 ? std::sqrt(l / r) : 0.0;
}

double lp_mean(const std::vector<double>& values, double p) {
  if (values.empty()) return 0.0;
  std::vector<double> pw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    pw[i] = std::pow(std::abs(values[i]), p);
  return std::pow(pairwise_sum(pw) / values.size(), 1.0 / p);
}

}  // namespace gammalab
