#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gammalab/space.hpp"
#include "gammalab/stochastic.hpp"

namespace gammalab {

// Fourier-spectral field on the d-torus (d = 1 or 2), modes |k_i| <= K,
// reality constraint u^_{-k} = conj(u^_k).
class SpectralField {
 public:
  SpectralField(int d, int K, double q, double s);

  int d() const { return d_; }
  int K() const { return K_; }
  double q() const { return q_; }
  double s() const { return s_; }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  int collocation_points() const { return M_; }

  Complex& mode(int idx) { return modes_[idx]; }
  const Complex& mode(int idx) const { return modes_[idx]; }
  // Multi-index of flat slot idx (size d, entries in [-K, K]).
  std::vector<int> wavenumber(int idx) const;
  double ksq(int idx) const;  // |k|^2

  void enforce_reality();

  // Collocation values (M^d real samples) via inverse DFT.
  std::vector<double> to_collocation() const;
  static SpectralField from_collocation(int d, int K, double q, double s,
                                        const std::vector<double>& vals);
  // Partial derivative d/dx_axis in mode space.
  SpectralField derivative(int axis) const;

  // H^{r,q} torus norm: l^q collocation norm of (1 - Delta)^{r/2} u.
  double sobolev_norm(double r) const;
  double lq_norm() const { return sobolev_norm(0.0); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double c);

 private:
  int d_, K_, M_;
  double q_, s_;
  std::vector<Complex> modes_;
};

struct NoisePreset {
  enum class Type { gradient, sequence } type = Type::gradient;
  std::vector<double> b;  // gradient case: constant vector field (size d)
  // sequence case: family g_n(u, du) with declared constants
  std::vector<std::function<double(double, double)>> g;
  double L_g1 = 0.0, L_g2 = 0.0;
};

struct HeatStepInfo {
  bool parabolicity_ok = true;  // |b|^2 < 2
};

// One exponential-Euler step u^_k <- e^{-|k|^2 dt}(u^_k + noise), gradient
// noise applied pseudo-spectrally with 2/3 dealiasing.
HeatStepInfo spectral_heat_step(SpectralField& field, const NoisePreset& noise,
                                double dt, const Vector& dW);

// Pointwise Nemytskii map f(u, Du) on the collocation grid (1d: Du scalar).
SpectralField nemytskii(const std::function<double(double, double)>& f,
                        const SpectralField& u);

struct LipschitzCheck {
  double lhs = 0.0;   // square-function norm of f(phi1)-f(phi2)
  double rhs = 0.0;   // L1 ||dphi|| + L2 ||d Dphi|| in the same norm
  double margin() const { return rhs - lhs; }
};
// Lemma-style inequality on a pair of time-trajectories of fields.
LipschitzCheck nemytskii_lipschitz_check(
    const std::function<double(double, double)>& f, double l1, double l2,
    const std::vector<SpectralField>& phi1,
    const std::vector<SpectralField>& phi2, double dt);

// Per-trajectory int_x (int_t |D^r u|^2 dt)^{q/2} dx, collocation quadrature.
double measure_sqfn_norm(const std::vector<SpectralField>& traj, int r,
                         double q, double dt);

struct ExponentFit {
  double exponent = 0.0;
  double r2 = 0.0;
  bool conclusive = false;
};
// Least-squares slope of log(value) vs log(h) with fit quality gate.
ExponentFit fit_exponent(const std::vector<double>& h,
                         const std::vector<double>& value,
                         double r2_gate = 0.95);

struct ExponentRow {
  double theta = 0.0;
  double time_exp_measured = 0.0;
  double time_exp_paper = 0.0;
  double space_exp_measured = 0.0;
  double space_exp_paper = 0.0;
  double r2 = 0.0;
  bool conclusive = false;
};

// Deterministic row: dyadic-increment scaling of A^{1-theta} u for the mild
// solution of the heat flow driven by spectrally-white forcing; the fitted
// time exponent approaches theta - 1/2 for theta in (1/2, 1].
ExponentRow deterministic_exponent_row(int K, double theta,
                                       std::uint64_t seed);

// Stochastic rows for theta in [0, 1/2): measured time/space exponents of
// A^{1/2-theta}-weighted gradient-noise runs against the regularity-scale
// values theta + 1/q - 1/2 and s + 1 - 2 theta.
ExponentRow stochastic_exponent_row(int K, double theta, double q, double s,
                                    double b, int samples, std::uint64_t seed);

std::vector<ExponentRow> exponent_table(int K, const std::vector<double>& thetas,
                                        double q, double s, double b,
                                        int samples, std::uint64_t seed);

}  // namespace gammalab
