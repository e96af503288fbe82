#pragma once

#include <cstdint>

#include "gammalab/frequency.hpp"
#include "gammalab/gamma_norms.hpp"
#include "gammalab/sectorial.hpp"

namespace gammalab {

// Mild solution u = S * f of u' + Au = f, u(0) = 0, with exact
// per-interval integration of the exponential kernel for diagonalizable A.
class MildSolution {
 public:
  MildSolution(const SectorialOp& a, const StepFunction& f,
               const TimeGrid& grid_out);

  const TimeGrid& grid() const { return grid_; }
  const SectorialOp& op() const { return *a_; }
  const StepFunction& forcing() const { return *f_; }

  // Value at a grid knot (exact in eigencoordinates).
  CVector at_knot(int j) const;
  // Value at arbitrary t in [0, t_N].
  CVector at(double t) const;
  // Exact cell average of A u over grid interval i: f_i - (u_{i+1}-u_i)/dt.
  CVector cell_avg_Au(int i) const;
  // Step functions of exact cell averages.
  StepFunction Au_steps() const;
  StepFunction du_steps() const;

  // Exact int_0^infty || B u(t) ||_{l2}^2 dt (tail after t_N included).
  double weighted_l2_sq(const CMatrix& b) const;
  // Same for u' = f - Au.
  double derivative_l2_sq() const;
  // Residual of u(t) + int_0^t Au - int_0^t f at every knot (max norm).
  double weak_identity_residual() const;
  double sup_norm() const;  // sup over knots of ||u(t)||_{l2}

 private:
  const SectorialOp* a_;
  const StepFunction* f_;
  TimeGrid grid_;
  // eigencoordinate states z(t_j) and forcing g_i = V^{-1} f_i
  std::vector<CVector> z_;
  std::vector<CVector> g_;
  TimeGrid fgrid_;  // merged grid on which z_ lives
  std::vector<CVector> zk_;
};

MildSolution convolve(const SectorialOp& a, const StepFunction& f,
                      const TimeGrid& grid_out);

// Frequency-domain symbol m_theta(s) = (is)^theta A^{1-theta} (is+A)^{-1},
// principal branch of (is)^theta.
Symbol maxreg_symbol(const SectorialOp& a, double theta);

// Frequency route: gamma norm of D^theta A^{1-theta} u for Hilbert targets,
// computed by symbol-weighted quadrature against the exact transform of f.
double dtheta_norm(const SectorialOp& a, const StepFunction& f, double theta,
                   double xi_max = 0.0);

// Step-function realization of D^theta A^{1-theta} u on f's grid via the
// frequency inverse; exact time-domain identities are used at theta = 0, 1.
StepFunction dtheta_a1mtheta(const SectorialOp& a, const StepFunction& f,
                             double theta);

// ||u||_{gamma^theta(R_+; D(A^{1-theta}))} via the weighted symbol
// (1+s^2)^{theta/2} A^{1-theta} (is+A)^{-1}, divided by sqrt(2pi).
double spacetime_norm(const SectorialOp& a, const StepFunction& f,
                      double theta);

// Max over seeded random f of ||Au||_gamma / ||f||_gamma (time-domain
// exact route); a lower bound on the maximal-regularity constant.
double maxreg_constant(const SectorialOp& a, int trials, std::uint64_t seed,
                       int dim_noise = 1, int intervals = 24, double horizon = 2.0);

struct HolderTrace {
  double holder_seminorm = 0.0;   // exponent theta - 1/2, dyadic distances
  double sup_a_half = 0.0;        // sup_t ||A^{1/2} u(t)||
};
HolderTrace holder_trace_norms(const MildSolution& u, double theta);

// Extension operator Ext(x)(t) = (1 + tA)^{-1} x sampled on a grid.
StepFunction extension(const SectorialOp& a, const Vector& x,
                       const TimeGrid& grid);
// || t -> A (1+tA)^{-1} x ||_{gamma(R_+;X)} exactly (diagonalizable, l2).
double extension_norm(const SectorialOp& a, const Vector& x);

// Evaluate the averaging trace formula at sigma = first positive knot with
// one Richardson step; `u` sampled densely near 0.
CVector trace_zero(const std::function<CVector(double)>& u, double sigma);

struct GammaSectorialityProfile {
  std::vector<double> s_values;
  std::vector<double> norms;      // ||s (is+A)^{-1}||
  double gamma_bound = 0.0;       // estimate over the sampled family
};
GammaSectorialityProfile gamma_sectoriality_from_maxreg(const SectorialOp& a,
                                                        const SpaceModel& target,
                                                        int samples = 33);

}  // namespace gammalab
