#include "gammalab/maxreg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

constexpr double kPi = std::numbers::pi;

// phi1(x) = (e^x - 1)/x, stable near 0.
Complex phi1(Complex x) {
  if (std::abs(x) < 1e-6)
    return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  return (std::exp(x) - 1.0) / x;
}

// int_0^d e^{-lam s} ds
Complex exp_int(Complex lam, double d) { return d * phi1(-lam * d); }

std::vector<double> merge_knots(const std::vector<double>& a,
                                const std::vector<double>& b, double tol) {
  std::vector<double> all;
  all.reserve(a.size() + b.size() + 1);
  all.push_back(0.0);
  all.insert(all.end(), a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double t : all)
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  return out;
}

}  // namespace

MildSolution::MildSolution(const SectorialOp& a, const StepFunction& f,
                           const TimeGrid& grid_out)
    : a_(&a), f_(&f), grid_(grid_out) {
  if (!(a.angle() < kPi / 2.0))
    throw std::invalid_argument("semigroup is not analytic: angle >= pi/2");
  if (!a.diagonalizable())
    throw std::invalid_argument("exact convolution needs diagonalizable A");
  if (f.noise_dim() != 1)
    throw std::invalid_argument("forcing must be X-valued (one column)");
  if (f.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
  grid_.validate();
  const double span = std::max(f.grid().t1(), grid_.t1());
  fgrid_.weight = Weight::lebesgue;
  fgrid_.knots = merge_knots(f.grid().knots, grid_.knots, 1e-12 * span);

  const CVector& lam = a.eigenvalues();
  const CMatrix& vinv = a.eigenvectors_inverse();
  const int ni = fgrid_.intervals();
  g_.resize(ni);
  for (int i = 0; i < ni; ++i) {
    const double mid = fgrid_.midpoint(i);
    CVector fv = CVector::Zero(a.dim());
    // f value at mid (zero outside f's support)
    const auto& fk = f.grid().knots;
    if (mid > fk.front() && mid < fk.back()) {
      const int j = static_cast<int>(
          std::upper_bound(fk.begin(), fk.end(), mid) - fk.begin() - 1);
      fv = f.column(j);
    }
    g_[i] = vinv * fv;
  }
  z_.resize(ni + 1);
  z_[0] = CVector::Zero(a.dim());
  for (int i = 0; i < ni; ++i) {
    const double d = fgrid_.length(i);
    z_[i + 1].resize(a.dim());
    for (int k = 0; k < a.dim(); ++k)
      z_[i + 1][k] =
          std::exp(-lam[k] * d) * z_[i][k] + exp_int(lam[k], d) * g_[i][k];
  }
  zk_.resize(grid_.knots.size());
  for (std::size_t j = 0; j < grid_.knots.size(); ++j) {
    const auto it = std::lower_bound(fgrid_.knots.begin(), fgrid_.knots.end(),
                                     grid_.knots[j] - 1e-12 * span);
    zk_[j] = z_[static_cast<std::size_t>(it - fgrid_.knots.begin())];
  }
}

CVector MildSolution::at_knot(int j) const {
  return a_->eigenvectors() * zk_[j];
}

CVector MildSolution::at(double t) const {
  const auto& kn = fgrid_.knots;
  if (t <= kn.front()) return CVector::Zero(a_->dim());
  if (t >= kn.back()) {
    // beyond the computed span the forcing is zero: free decay
    const double s = t - kn.back();
    CVector z = z_.back();
    for (int k = 0; k < a_->dim(); ++k)
      z[k] *= std::exp(-a_->eigenvalues()[k] * s);
    return a_->eigenvectors() * z;
  }
  const int i = static_cast<int>(
      std::upper_bound(kn.begin(), kn.end(), t) - kn.begin() - 1);
  const double s = t - kn[i];
  CVector z(a_->dim());
  for (int k = 0; k < a_->dim(); ++k) {
    const Complex lam = a_->eigenvalues()[k];
    z[k] = std::exp(-lam * s) * z_[i][k] + exp_int(lam, s) * g_[i][k];
  }
  return a_->eigenvectors() * z;
}

CVector MildSolution::cell_avg_Au(int i) const {
  const double t0 = grid_.knots[i], t1 = grid_.knots[i + 1];
  const double d = t1 - t0;
  // exact cell average of f over [t0, t1]
  CVector favg = CVector::Zero(a_->dim());
  for (int j = 0; j < fgrid_.intervals(); ++j) {
    const double a = std::max(fgrid_.knots[j], t0);
    const double b = std::min(fgrid_.knots[j + 1], t1);
    if (b > a) favg += (b - a) * (a_->eigenvectors() * g_[j]);
  }
  favg /= d;
  return favg - (at_knot(i + 1) - at_knot(i)) / d;
}

StepFunction MildSolution::Au_steps() const {
  std::vector<CMatrix> vals(grid_.intervals());
  for (int i = 0; i < grid_.intervals(); ++i) vals[i] = cell_avg_Au(i);
  return StepFunction(grid_, f_->target(), std::move(vals));
}

StepFunction MildSolution::du_steps() const {
  std::vector<CMatrix> vals(grid_.intervals());
  for (int i = 0; i < grid_.intervals(); ++i)
    vals[i] = (at_knot(i + 1) - at_knot(i)) / grid_.length(i);
  return StepFunction(grid_, f_->target(), std::move(vals));
}

double MildSolution::weighted_l2_sq(const CMatrix& b) const {
  if (!a_->invertible())
    throw std::invalid_argument("half-line integral needs invertible A");
  const CVector& lam = a_->eigenvalues();
  const int n = a_->dim();
  const CMatrix bv = b * a_->eigenvectors();
  const CMatrix p = bv.adjoint() * bv;  // quadratic form in eigencoordinates
  double total = 0.0;
  for (int i = 0; i < fgrid_.intervals(); ++i) {
    const double d = fgrid_.length(i);
    CVector w(n), c(n);
    for (int k = 0; k < n; ++k) {
      w[k] = g_[i][k] / lam[k];
      c[k] = z_[i][k] - w[k];
    }
    // u = V (e^{-Lam s} c + w) on the interval
    Complex acc = 0.0;
    const CVector pw = p * w;
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l)
        acc += std::conj(c[k]) * p(k, l) * c[l] *
               exp_int(std::conj(lam[k]) + lam[l], d);
      acc += 2.0 * (std::conj(c[k]) * pw[k] * exp_int(std::conj(lam[k]), d))
                       .real();
    }
    acc += w.dot(pw) * d;
    total += acc.real();
  }
  // free-decay tail after the last knot
  const CVector& zn = z_.back();
  Complex tail = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Complex mu = std::conj(lam[k]) + lam[l];
      if (!(mu.real() > 0.0))
        throw std::domain_error("tail integral diverges: Re eigenvalue <= 0");
      tail += std::conj(zn[k]) * p(k, l) * zn[l] / mu;
    }
  total += tail.real();
  return std::max(0.0, total);
}

double MildSolution::derivative_l2_sq() const {
  if (!a_->invertible())
    throw std::invalid_argument("half-line integral needs invertible A");
  const CVector& lam = a_->eigenvalues();
  const int n = a_->dim();
  const CMatrix& v = a_->eigenvectors();
  const CMatrix p = v.adjoint() * v;
  double total = 0.0;
  for (int i = 0; i < fgrid_.intervals(); ++i) {
    const double d = fgrid_.length(i);
    CVector c(n);  // u' = V e^{-Lam s} c with c = -Lam (z_i - g_i / Lam)
    for (int k = 0; k < n; ++k) c[k] = g_[i][k] - lam[k] * z_[i][k];
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        acc += std::conj(c[k]) * p(k, l) * c[l] *
               exp_int(std::conj(lam[k]) + lam[l], d);
    total += acc.real();
  }
  const CVector& zn = z_.back();
  Complex tail = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      tail += std::conj(lam[k] * zn[k]) * p(k, l) * (lam[l] * zn[l]) /
              (std::conj(lam[k]) + lam[l]);
  total += tail.real();
  return std::max(0.0, total);
}

double MildSolution::weak_identity_residual() const {
  const CVector& lam = a_->eigenvalues();
  const CMatrix& v = a_->eigenvectors();
  const int n = a_->dim();
  CVector int_au = CVector::Zero(n), int_f = CVector::Zero(n);
  double worst = 0.0;
  for (int i = 0; i < fgrid_.intervals(); ++i) {
    const double d = fgrid_.length(i);
    CVector au_piece(n);
    for (int k = 0; k < n; ++k) {
      const Complex e2 = exp_int(lam[k], d);
      au_piece[k] = lam[k] * e2 * z_[i][k] + (d - e2) * g_[i][k];
    }
    int_au += v * au_piece;
    int_f += d * (v * g_[i]);
    const CVector u = v * z_[i + 1];
    worst = std::max(worst, (u + int_au - int_f).norm());
  }
  return worst;
}

double MildSolution::sup_norm() const {
  double m = 0.0;
  for (const auto& z : z_) m = std::max(m, (a_->eigenvectors() * z).norm());
  return m;
}

MildSolution convolve(const SectorialOp& a, const StepFunction& f,
                      const TimeGrid& grid_out) {
  return MildSolution(a, f, grid_out);
}

Symbol maxreg_symbol(const SectorialOp& a, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0, 1]");
  if (theta < 1.0 && !a.invertible())
    throw std::invalid_argument("theta < 1 needs invertible A");
  const CMatrix apow = a.frac_power(1.0 - theta);
  const int n = a.dim();
  return [&a, apow, theta, n](double s) -> CMatrix {
    if (s == 0.0) {
      if (theta > 0.0) return CMatrix::Zero(n, n);
      return CMatrix::Identity(n, n);  // A (0 + A)^{-1}
    }
    const Complex is(0.0, s);
    const Complex pref = theta == 0.0 ? Complex(1.0) : std::pow(is, theta);
    return pref * apow * a.resolvent(is);
  };
}

double dtheta_norm(const SectorialOp& a, const StepFunction& f, double theta,
                   double xi_max) {
  return symbol_weighted_l2(f, maxreg_symbol(a, theta), xi_max);
}

StepFunction dtheta_a1mtheta(const SectorialOp& a, const StepFunction& f,
                             double theta) {
  if (theta == 0.0) return MildSolution(a, f, f.grid()).Au_steps();
  if (theta == 1.0) return MildSolution(a, f, f.grid()).du_steps();
  const TimeGrid& g = f.grid();
  double mind = g.length(0);
  for (int i = 1; i < g.intervals(); ++i) mind = std::min(mind, g.length(i));
  const double xi = kPi / mind;
  const double span = std::max(1.0, std::max(std::abs(g.t0()), g.t1()));
  const int half = std::max(g.intervals(),
                            static_cast<int>(std::ceil(xi * span / 1.5)));
  const StepFunction fhat = fourier(f, frequency_grid(xi, half));
  const Symbol m = maxreg_symbol(a, theta);
  const StepFunction mf = apply_multiplier(
      [&m](double s) { return m(s); }, fhat);
  return fourier_inverse(mf, g);
}

double spacetime_norm(const SectorialOp& a, const StepFunction& f,
                      double theta) {
  const CMatrix apow = a.frac_power(1.0 - theta);
  Symbol m = [&a, apow, theta](double s) -> CMatrix {
    return std::pow(1.0 + s * s, 0.5 * theta) * apow * a.resolvent(Complex(0.0, s));
  };
  return symbol_weighted_l2(f, m);
}

double maxreg_constant(const SectorialOp& a, int trials, std::uint64_t seed,
                       int dim_noise, int intervals, double horizon) {
  const SpaceModel target = SpaceModel::hilbert(a.dim());
  const TimeGrid grid = TimeGrid::uniform(0.0, horizon, intervals);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const StepFunction f = random_step(grid, target, dim_noise, seed, t);
    double num_sq = 0.0;
    for (int c = 0; c < dim_noise; ++c) {
      std::vector<CMatrix> col(grid.intervals());
      for (int i = 0; i < grid.intervals(); ++i) col[i] = f.value(i).col(c);
      StepFunction fc(grid, target, std::move(col));
      num_sq += MildSolution(a, fc, grid).weighted_l2_sq(a.matrix());
    }
    const double den = gamma_norm_hilbert(f).value;
    if (den > 0.0) best = std::max(best, std::sqrt(num_sq) / den);
  }
  return best;
}

HolderTrace holder_trace_norms(const MildSolution& u, double theta) {
  if (!(theta > 0.5) || theta > 1.0)
    throw std::invalid_argument("Holder exponent needs theta in (1/2, 1]");
  const SectorialOp& a = u.op();
  const CMatrix b = a.frac_power(1.0 - theta);
  const CMatrix ahalf = a.frac_power(0.5);
  const TimeGrid& g = u.grid();
  const double T = g.t1();
  HolderTrace out;
  const int kmax = std::max(
      1, static_cast<int>(std::floor(std::log2(g.intervals()))));
  for (int k = 1; k <= kmax; ++k) {
    const double h = T * std::pow(2.0, -k);
    for (double t : g.knots) {
      if (t + h > T + 1e-12 * T) continue;
      const double q =
          (b * (u.at(t + h) - u.at(t))).norm() / std::pow(h, theta - 0.5);
      out.holder_seminorm = std::max(out.holder_seminorm, q);
    }
  }
  for (std::size_t j = 0; j < g.knots.size(); ++j)
    out.sup_a_half =
        std::max(out.sup_a_half, (ahalf * u.at_knot(static_cast<int>(j))).norm());
  return out;
}

StepFunction extension(const SectorialOp& a, const Vector& x,
                       const TimeGrid& grid) {
  const SpaceModel target = SpaceModel::hilbert(a.dim());
  std::vector<CMatrix> vals(grid.intervals());
  const CMatrix id = CMatrix::Identity(a.dim(), a.dim());
  for (int i = 0; i < grid.intervals(); ++i) {
    const double t = grid.midpoint(i);
    const CMatrix m = id + t * a.matrix();
    vals[i] = m.partialPivLu().solve(x.cast<Complex>().eval());
  }
  return StepFunction(grid, target, std::move(vals));
}

double extension_norm(const SectorialOp& a, const Vector& x) {
  if (!a.diagonalizable() || !a.invertible())
    throw std::invalid_argument("exact extension norm needs spectral data");
  const CVector y = a.eigenvectors_inverse() * x.cast<Complex>();
  const CMatrix p = a.eigenvectors().adjoint() * a.eigenvectors();
  const CVector& lam = a.eigenvalues();
  Complex total = 0.0;
  for (int k = 0; k < a.dim(); ++k)
    for (int l = 0; l < a.dim(); ++l) {
      const Complex aa = std::conj(lam[k]), bb = lam[l];
      // int_0^inf ab / ((1+a t)(1+b t)) dt
      Complex val;
      if (std::abs(aa - bb) < 1e-12 * (std::abs(aa) + std::abs(bb)))
        val = 0.5 * (aa + bb);
      else
        val = aa * bb * (std::log(aa) - std::log(bb)) / (aa - bb);
      total += std::conj(y[k]) * p(k, l) * y[l] * val;
    }
  return std::sqrt(std::max(0.0, total.real()));
}

CVector trace_zero(const std::function<CVector(double)>& u, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  auto avg = [&](double s) {
    // composite midpoint-refined Gauss on [0, s]
    static const double xs[4] = {0.0694318442029737, 0.3300094782075719,
                                 0.6699905217924281, 0.9305681557970263};
    static const double ws[4] = {0.1739274225687269, 0.3260725774312731,
                                 0.3260725774312731, 0.1739274225687269};
    const int panels = 16;
    CVector acc;
    for (int p = 0; p < panels; ++p) {
      const double a = s * p / panels, d = s / panels;
      for (int i = 0; i < 4; ++i) {
        const CVector v = ws[i] * u(a + d * xs[i]);
        if (p == 0 && i == 0)
          acc = v;
        else
          acc += v;
      }
    }
    return CVector(acc / panels);
  };
  // averaged value is Tr + O(sigma); one Richardson step removes the
  // linear term
  return 2.0 * avg(0.5 * sigma) - avg(sigma);
}

GammaSectorialityProfile gamma_sectoriality_from_maxreg(const SectorialOp& a,
                                                        const SpaceModel& target,
                                                        int samples) {
  GammaSectorialityProfile out;
  const double scale = std::max(a.max_abs_eig(), 1.0);
  std::vector<CMatrix> family;
  for (int i = 0; i < samples; ++i) {
    const double s =
        scale * std::pow(10.0, -3.0 + 6.0 * i / std::max(1, samples - 1));
    const CMatrix m = s * a.resolvent(Complex(0.0, s));
    out.s_values.push_back(s);
    out.norms.push_back(m.jacobiSvd().singularValues()(0));
    family.push_back(m);
  }
  if (target.is_hilbert()) {
    out.gamma_bound = *std::max_element(out.norms.begin(), out.norms.end());
    return out;
  }
  // randomized Gaussian-sum ratio lower bound for lattice targets
  const int n = target.dim;
  if (n != a.dim())
    throw std::invalid_argument("target dimension mismatch");
  const std::uint64_t seed = 0x70726f66ULL;
  const std::uint64_t k = rng::key(seed, 1);
  TimeGrid unit = TimeGrid::uniform(0.0, static_cast<double>(family.size()),
                                    static_cast<int>(family.size()));
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<CMatrix> xs(family.size()), txs(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      CVector x(n);
      for (int r = 0; r < n; ++r) x[r] = rng::gaussian(k, ctr++);
      xs[i] = x;
      txs[i] = family[i] * x;
    }
    StepFunction fx(unit, target, std::move(xs));
    StepFunction ftx(unit, target, std::move(txs));
    const double den = gamma_norm_mc(fx, 2048, seed, 2 * trial).value;
    const double num = gamma_norm_mc(ftx, 2048, seed, 2 * trial).value;
    if (den > 0.0) out.gamma_bound = std::max(out.gamma_bound, num / den);
  }
  return out;
}

}  // namespace gammalab
