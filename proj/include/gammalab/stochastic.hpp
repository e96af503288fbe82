#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gammalab/gamma_norms.hpp"
#include "gammalab/sectorial.hpp"

namespace gammalab {

// Finite model of a cylindrical Brownian motion: per-sample Gaussian
// increments on a uniform grid, keyed (seed, sample, level, interval) so
// that dyadic refinement via the Levy midpoint construction shares paths
// with the coarse grid.
class CylindricalBM {
 public:
  CylindricalBM(TimeGrid grid, int noise_dim, int samples,
                std::uint64_t seed);

  const TimeGrid& grid() const { return grid_; }
  int noise_dim() const { return m_; }
  int samples() const { return samples_; }
  std::uint64_t seed() const { return seed_; }

  // Increment over grid interval i for sample w (m-vector).
  const Vector& increment(int w, int i) const { return incr_[w][i]; }
  // Path value W(t_j) (cumulative sum, W(t_0) = 0).
  Vector path(int w, int j) const;

  // Brownian-bridge refinement: halves every interval, coarse sums
  // preserved exactly.
  CylindricalBM refined() const;

 private:
  CylindricalBM() = default;
  TimeGrid grid_;
  int m_ = 1;
  int samples_ = 1;
  int level_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<Vector>> incr_;  // [sample][interval] m-vector
};

// Per-sample, per-interval n x m integrand matrices; adaptedness is
// structural (interval i value may depend only on increments before t_i).
class AdaptedProcess {
 public:
  AdaptedProcess(TimeGrid grid, int dim, int noise_dim, int samples);

  static AdaptedProcess deterministic(const StepFunction& g, int samples);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return n_; }
  int noise_dim() const { return m_; }
  int samples() const { return samples_; }

  Matrix& value(int w, int i) { return val_[w][i]; }
  const Matrix& value(int w, int i) const { return val_[w][i]; }

  // gamma(0,T;H,X) norm of sample w as a step function (Hilbert exact).
  double sample_gamma_norm(int w) const;

 private:
  TimeGrid grid_;
  int n_ = 1, m_ = 1, samples_ = 1;
  std::vector<std::vector<Matrix>> val_;
};

// Seeded collection of X-valued trajectories on a grid (values at knots).
class PathEnsemble {
 public:
  PathEnsemble(TimeGrid grid, int dim, int samples);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return n_; }
  int samples() const { return samples_; }

  Vector& at(int w, int j) { return path_[w][j]; }
  const Vector& at(int w, int j) const { return path_[w][j]; }

  // Left-value step function of sample w.
  StepFunction sample_steps(int w, const SpaceModel& target) const;
  // Grid-max of ||U(t_j)||_{l2} for sample w.
  double sample_sup(int w) const;
  // (sum_j dt_j ||B U(t_j)||^2)^{1/2}, left rule.
  double sample_weighted_l2(int w, const Matrix& b) const;

 private:
  TimeGrid grid_;
  int n_ = 1, samples_ = 1;
  std::vector<std::vector<Vector>> path_;
};

// Running left-endpoint Ito sums sum_{i<j} G_i dW_i.
PathEnsemble ito_integral(const AdaptedProcess& g, const CylindricalBM& w);

struct IsomorphismCheck {
  double lhs = 0.0;   // empirical E sup_t || int_0^t G dW ||^p
  double rhs = 0.0;   // empirical E ||G||_gamma^p
  double ratio = 0.0; // lhs / rhs, 0 flagged if rhs = 0
};
IsomorphismCheck ito_isomorphism_check(const AdaptedProcess& g,
                                       const CylindricalBM& w, double p);

// Stochastic convolution S <> G.  `exact_integrator` uses the per-mode
// variance-exact exponential update (diagonalizable A) driven by the same
// increments; otherwise plain left-endpoint Euler-Maruyama sums.
PathEnsemble stoch_convolve(const SectorialOp& a, const AdaptedProcess& g,
                            const CylindricalBM& w,
                            bool exact_integrator = true);

// Max over seeded deterministic step integrands of
// ||A^{1/2} S<>G||_{L^p(Omega;gamma)} / ||G||_{L^p(Omega;gamma(H,X))}.
struct StochMaxregResult {
  double constant = 0.0;
  double stderr_ = 0.0;
};
StochMaxregResult stoch_maxreg_constant(const SectorialOp& a, int trials,
                                        int samples, double p,
                                        std::uint64_t seed,
                                        int time_steps = 256,
                                        double horizon = 4.0);

// ||gamma^theta norm of A^{1/2-theta} U|| / ||G||, theta in [0, 1/2).
double spacetime_reg_check(const SectorialOp& a, const AdaptedProcess& g,
                           const CylindricalBM& w, double theta);

// L^p(Omega) empirical norm with fixed-order pairwise reduction.
double lp_mean(const std::vector<double>& values, double p);

}  // namespace gammalab
