#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>

namespace gammalab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Finite-dimensional l^q model of the Banach space X.  q = 2 is the
// Hilbert case; q = infinity is handled exactly (max-abs), not as a
// large finite exponent.  Complex vectors are measured by the l^q norm
// of their moduli.
struct SpaceModel {
  int dim = 1;
  double exponent = 2.0;
  std::string label;

  static SpaceModel lq(int n, double q, std::string label = {});
  static SpaceModel hilbert(int n, std::string label = {});

  bool is_hilbert() const { return exponent == 2.0; }
  double norm(const Vector& v) const;
  double norm(const CVector& v) const;
};

class SectorialOp;

// Fractional-domain norm ||A^alpha x|| on top of a base space.
struct DomainScale {
  const SectorialOp* op = nullptr;
  double alpha = 0.0;
};

double domain_norm(const SpaceModel& base, const DomainScale& scale,
                   const Vector& v);
double domain_norm(const SpaceModel& base, const DomainScale& scale,
                   const CVector& v);

}  // namespace gammalab
