#include "gammalab/sectorial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "gammalab/gamma_norms.hpp"
#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

constexpr double kPi = std::numbers::pi;

double cert_bound(const HoloFn& f, double r) {
  return f.C * std::pow(r, f.eps) / std::pow(1.0 + r, 2.0 * f.eps);
}

// Fit C on the boundary rays of the declared sector.
double fit_certificate_constant(const std::function<Complex(Complex)>& eval,
                                double eps, double angle) {
  double c = 0.0;
  for (int side = -1; side <= 1; side += 2) {
    for (int i = 0; i <= 400; ++i) {
      const double r = std::pow(10.0, -8.0 + 16.0 * i / 400.0);
      const Complex z = std::polar(r, side * angle);
      const double envelope = std::pow(r, eps) / std::pow(1.0 + r, 2.0 * eps);
      c = std::max(c, std::abs(eval(z)) / envelope);
    }
  }
  return 1.05 * c;
}

}  // namespace

void HoloFn::check_certificate(double sigma) const {
  if (!(sigma < angle))
    throw std::invalid_argument("contour angle outside analyticity sector");
  for (int side = -1; side <= 1; side += 2) {
    for (int i = 0; i <= 200; ++i) {
      const double r = std::pow(10.0, -8.0 + 16.0 * i / 200.0);
      const Complex z = std::polar(r, side * sigma);
      if (std::abs(eval(z)) > cert_bound(*this, r) * (1.0 + 1e-9))
        throw std::runtime_error("decay certificate violated on contour");
    }
  }
}

HoloFn HoloFn::sqrt_exp() { return power_exp(0.5); }

HoloFn HoloFn::z_over_1pz_sq() {
  HoloFn f;
  f.eval = [](Complex z) { return z / ((1.0 + z) * (1.0 + z)); };
  f.eps = 1.0;
  f.angle = 2.0;
  f.C = fit_certificate_constant(f.eval, f.eps, f.angle);
  return f;
}

HoloFn HoloFn::power_exp(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("exponent must be positive");
  HoloFn f;
  f.eval = [a](Complex z) { return std::pow(z, a) * std::exp(-z); };
  f.eps = std::min(a, 1.0);
  f.angle = 1.3;  // < pi/2 so e^{-z} still decays on the rays
  f.C = fit_certificate_constant(f.eval, f.eps, f.angle);
  return f;
}

SectorialOp::SectorialOp(const Matrix& a) : SectorialOp(CMatrix(a.cast<Complex>())) {}

SectorialOp::SectorialOp(const CMatrix& a) : a_(a) {
  if (a_.rows() != a_.cols() || a_.rows() < 1)
    throw std::invalid_argument("operator must be square");
  const double scale = std::max(1e-300, a_.norm());
  normal_ = (a_ * a_.adjoint() - a_.adjoint() * a_).norm() <=
            1e-12 * scale * scale;
  Eigen::ComplexEigenSolver<CMatrix> es(a_);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  eig_ = es.eigenvalues();
  v_ = es.eigenvectors();
  Eigen::FullPivLU<CMatrix> lu(v_);
  diagonalizable_ = lu.isInvertible();
  if (diagonalizable_) vinv_ = lu.inverse();
  double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < eig_.size(); ++i) {
    const double m = std::abs(eig_[i]);
    max_abs = std::max(max_abs, m);
    min_abs = std::min(min_abs, m);
    if (m > 0.0 && std::abs(std::arg(eig_[i])) > kPi - 1e-12)
      throw std::invalid_argument("eigenvalue on the negative real axis");
  }
  invertible_ = min_abs > 1e-12 * std::max(max_abs, 1e-300);
  angle_ = 0.0;
  for (int i = 0; i < eig_.size(); ++i)
    if (std::abs(eig_[i]) > 0.0)
      angle_ = std::max(angle_, std::abs(std::arg(eig_[i])));
}

SectorialOp SectorialOp::diagonal(const Vector& eigenvalues) {
  return SectorialOp(Matrix(eigenvalues.asDiagonal()));
}

const CMatrix& SectorialOp::eigenvectors_inverse() const {
  if (!diagonalizable_)
    throw std::runtime_error("operator is not diagonalizable");
  return vinv_;
}

double SectorialOp::min_real_eig() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < eig_.size(); ++i) m = std::min(m, eig_[i].real());
  return m;
}

double SectorialOp::max_abs_eig() const {
  double m = 0.0;
  for (int i = 0; i < eig_.size(); ++i) m = std::max(m, std::abs(eig_[i]));
  return m;
}

double SectorialOp::operator_norm() const {
  return a_.jacobiSvd().singularValues()(0);
}

CMatrix SectorialOp::semigroup(double t) const {
  if (t < 0.0) throw std::invalid_argument("semigroup needs t >= 0");
  if (t == 0.0) return CMatrix::Identity(dim(), dim());
  if (diagonalizable_)
    return apply_spectral([t](Complex z) { return std::exp(-t * z); });
  return CMatrix((-t * a_).exp());
}

CMatrix SectorialOp::resolvent(Complex z) const {
  CMatrix shifted = a_;
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<CMatrix> lu(shifted);
  const CMatrix r = lu.solve(CMatrix::Identity(dim(), dim()));
  if (!r.allFinite()) throw std::runtime_error("z in the spectrum of -A");
  return r;
}

CMatrix SectorialOp::frac_power(double alpha) const {
  if (alpha == 0.0) return CMatrix::Identity(dim(), dim());
  if (alpha == 1.0) return a_;
  if (alpha < 0.0 && !invertible_)
    throw std::invalid_argument("negative power needs invertible operator");
  if (diagonalizable_)
    return apply_spectral([alpha](Complex z) { return std::pow(z, alpha); });
  return CMatrix(a_.pow(alpha));
}

CMatrix SectorialOp::apply_spectral(
    const std::function<Complex(Complex)>& f) const {
  if (!diagonalizable_)
    throw std::runtime_error("spectral mapping needs a diagonalizable operator");
  CVector fe(eig_.size());
  for (int i = 0; i < eig_.size(); ++i) fe[i] = f(eig_[i]);
  return v_ * fe.asDiagonal() * vinv_;
}

Vector SectorialOp::frac_apply(double alpha, const Vector& x) const {
  return frac_apply(alpha, CVector(x.cast<Complex>())).real();
}

CVector SectorialOp::frac_apply(double alpha, const CVector& x) const {
  if (alpha == 0.0) return x;
  return frac_power(alpha) * x;
}

CMatrix SectorialOp::hinf_calculus(const HoloFn& f, double sigma_contour,
                                   int nodes_per_ray) const {
  if (!(sigma_contour > angle_))
    throw std::invalid_argument("contour angle must exceed operator angle");
  if (!(sigma_contour < f.angle))
    throw std::invalid_argument("contour angle must stay inside f's sector");
  f.check_certificate(sigma_contour);
  const double scale = invertible_
                           ? std::sqrt(max_abs_eig() *
                                       std::abs(eig_.cwiseAbs().minCoeff()))
                           : std::max(max_abs_eig(), 1.0);
  const double u0 = std::log(1e-8 * scale), u1 = std::log(1e8 * scale);
  const double du = (u1 - u0) / (nodes_per_ray - 1);
  CMatrix acc = CMatrix::Zero(dim(), dim());
  // boundary of the sector, spectrum enclosed counterclockwise:
  // upper ray runs inward, lower ray outward
  for (int side = -1; side <= 1; side += 2) {
    const Complex dir = std::polar(1.0, side * sigma_contour);
    CMatrix ray = CMatrix::Zero(dim(), dim());
    for (int i = 0; i < nodes_per_ray; ++i) {
      const double r = std::exp(u0 + i * du);
      const Complex lam = r * dir;
      const double w = (i == 0 || i == nodes_per_ray - 1) ? 0.5 : 1.0;
      // (lam - A)^{-1} = -(-lam + A)^{-1}
      ray -= w * r * f(lam) * resolvent(-lam);
    }
    // dl = dir * r du; side = +1 traversed inward (negate)
    acc += static_cast<double>(-side) * dir * du * ray;
  }
  return acc / Complex(0.0, 2.0 * kPi);
}

SectorialOp::AngleProfile SectorialOp::measure_angle(int angle_samples,
                                                     int radius_samples) const {
  if (!invertible_ && min_real_eig() <= 0.0)
    throw std::runtime_error("angle profile needs an injective operator");
  AngleProfile out;
  out.eigen_angle = angle_;
  const double scale = std::max(max_abs_eig(), 1.0);
  for (int j = 0; j < angle_samples; ++j) {
    const double sp = angle_ + (kPi - angle_) *
                                   (j + 1.0) / (angle_samples + 1.0);
    double sup = 0.0;
    for (int side = -1; side <= 1; side += 2) {
      for (int i = 0; i < radius_samples; ++i) {
        const double r = scale * std::pow(10.0, -6.0 + 12.0 * i /
                                                     (radius_samples - 1.0));
        const Complex z = std::polar(r, side * sp);
        const CMatrix m = z * resolvent(z);
        sup = std::max(sup, m.jacobiSvd().singularValues()(0));
      }
    }
    out.ray_angles.push_back(sp);
    out.resolvent_sup.push_back(sup);
  }
  return out;
}

GammaEstimate SectorialOp::sqfn_norm(const HoloFn& phi, const Vector& x,
                                     const SpaceModel& target,
                                     int per_decade) const {
  if (!diagonalizable_)
    throw std::runtime_error("square-function norm needs spectral mapping");
  if (!invertible_)
    throw std::runtime_error("square-function norm needs invertible operator");
  const double lam_max = max_abs_eig();
  const double lam_min = eig_.cwiseAbs().minCoeff();
  const TimeGrid grid = TimeGrid::log_spaced(1e-7 / lam_max, 1e7 / lam_min,
                                             per_decade, Weight::dt_over_t);
  const CVector cx = x.cast<Complex>();
  std::vector<CMatrix> vals(grid.intervals());
  for (int i = 0; i < grid.intervals(); ++i) {
    const double t = std::sqrt(grid.knots[i] * grid.knots[i + 1]);
    vals[i] = apply_spectral([&](Complex z) { return phi(t * z); }) * cx;
  }
  StepFunction orbit(grid, target, std::move(vals));
  return gamma_norm(orbit);
}

double sqfn_constant(const HoloFn& phi) {
  // trapezoid in u = log t; integrand decays per the certificate
  const int n = 8192;
  const double u0 = std::log(1e-9), u1 = std::log(1e9);
  const double du = (u1 - u0) / (n - 1);
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) {
    const double t = std::exp(u0 + i * du);
    const double a = std::abs(phi(Complex(t, 0.0)));
    terms[i] = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * a * a;
  }
  return std::sqrt(pairwise_sum(terms) * du);
}

}  // namespace gammalab
