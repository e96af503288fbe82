#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gammalab/space.hpp"
#include "gammalab/step_function.hpp"

namespace gammalab {

// Holomorphic function on a sector, with an H_0^infty decay certificate
// |f(z)| <= C |z|^eps / (1+|z|)^{2 eps}.
struct HoloFn {
  std::function<Complex(Complex)> eval;
  double eps = 0.5;
  double C = 1.0;
  double angle = 3.0;  // analyticity half-angle (radians)

  Complex operator()(Complex z) const { return eval(z); }
  // Checks the decay certificate on sampled contour points; throws on
  // violation.
  void check_certificate(double sigma) const;

  static HoloFn sqrt_exp();           // z^{1/2} e^{-z}
  static HoloFn z_over_1pz_sq();      // z / (1+z)^2
  static HoloFn power_exp(double a);  // z^{a} e^{-z}, a > 0
};

// Matrix sectorial operator with cached spectral data.  Immutable after
// construction; evaluators are pure.
class SectorialOp {
 public:
  explicit SectorialOp(const Matrix& a);
  explicit SectorialOp(const CMatrix& a);

  static SectorialOp diagonal(const Vector& eigenvalues);

  int dim() const { return static_cast<int>(a_.rows()); }
  const CMatrix& matrix() const { return a_; }
  const CVector& eigenvalues() const { return eig_; }
  const CMatrix& eigenvectors() const { return v_; }
  const CMatrix& eigenvectors_inverse() const;
  bool normal() const { return normal_; }
  bool diagonalizable() const { return diagonalizable_; }
  bool invertible() const { return invertible_; }
  // Max |arg lambda| over the spectrum.
  double angle() const { return angle_; }
  double min_real_eig() const;
  double max_abs_eig() const;
  double operator_norm() const;

  CMatrix semigroup(double t) const;            // exp(-tA)
  CMatrix resolvent(Complex z) const;           // (z + A)^{-1}
  CMatrix frac_power(double alpha) const;       // A^alpha, principal branch
  CMatrix apply_spectral(const std::function<Complex(Complex)>& f) const;

  Vector frac_apply(double alpha, const Vector& x) const;  // real part of A^a x
  CVector frac_apply(double alpha, const CVector& x) const;

  // Dunford integral f(A) over the two rays of the sector boundary at
  // half-angle sigma_contour, log-spaced composite quadrature truncated
  // where the decay certificate drops below 1e-12 of the accumulated value.
  CMatrix hinf_calculus(const HoloFn& f, double sigma_contour,
                        int nodes_per_ray = 256) const;

  struct AngleProfile {
    double eigen_angle = 0.0;
    std::vector<double> ray_angles;
    std::vector<double> resolvent_sup;  // sup_r ||z (z+A)^{-1}||, z = r e^{i sigma'}
  };
  AngleProfile measure_angle(int angle_samples = 9,
                             int radius_samples = 48) const;

  // || t -> phi(tA) x ||_{gamma(R_+, dt/t; X)} on a log-spaced grid.
  GammaEstimate sqfn_norm(const HoloFn& phi, const Vector& x,
                          const SpaceModel& target,
                          int per_decade = 256) const;

 private:
  CMatrix a_;
  CMatrix v_, vinv_;
  CVector eig_;
  bool normal_ = false;
  bool diagonalizable_ = false;
  bool invertible_ = false;
  double angle_ = 0.0;
};

// (int_0^infty |phi(t)|^2 dt/t)^{1/2}, the scalar square-function constant.
double sqfn_constant(const HoloFn& phi);

}  // namespace gammalab
