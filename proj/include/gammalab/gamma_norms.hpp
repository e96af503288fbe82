#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "gammalab/step_function.hpp"

namespace gammalab {

// Exact gamma norm in the Hilbert case: (sum_i mu(I_i) ||y_i||_F^2)^{1/2}.
// Throws if the target exponent is not 2.
GammaEstimate gamma_norm_hilbert(const StepFunction& f);

// Empirical (E || sum_{i,j} g_{ij} sqrt(mu_i) G_i e_j ||^2)^{1/2} over
// `samples` independent Gaussian draws, batch-means standard error.
// Deterministic given (seed, stream).
GammaEstimate gamma_norm_mc(const StepFunction& f, long samples,
                            std::uint64_t seed, std::uint64_t stream = 0);

// Lattice square-function norm || (sum_i mu_i |y_i|^2)^{1/2} ||_{l^q}.
// Requires q < infinity.
GammaEstimate gamma_norm_sqfn(const StepFunction& f);

// Dispatch: exact for q = 2, square function otherwise.
GammaEstimate gamma_norm(const StepFunction& f);

inline constexpr long kDefaultMcSamples = 4096;

// Interval-wise operator multiplier (M_i y_i).
StepFunction apply_multiplier(const std::vector<CMatrix>& ops,
                              const StepFunction& f);
StepFunction apply_multiplier(const std::function<CMatrix(double)>& op_of_t,
                              const StepFunction& f);
StepFunction apply_scalar_multiplier(const std::function<double(double)>& m,
                                     const StepFunction& f);

// F given as a union of [a,b) windows resolved on the grid.
using IntervalSet = std::vector<std::pair<double, double>>;
StepFunction restrict(const StepFunction& f, const IntervalSet& windows);
CVector integrate(const StepFunction& f, const IntervalSet& windows);
CVector integrate(const StepFunction& f);  // whole support

// Lower-bound estimate of the gamma-bound of a finite operator family.
// On Hilbert targets this equals the max operator norm (exact); otherwise
// randomized sequences (x_k, T_k) are sampled and the Gaussian-sum ratio
// maximized.
double gamma_bound_estimate(const std::vector<Matrix>& family,
                            const SpaceModel& target, int trials,
                            std::uint64_t seed);

// gamma-Hardy inequality data: lhs and rhs of Prop-style bound
//   || s^{-a-1/2} int_0^s f ||_gamma  <=  a^{-1} || s^{-a+1/2} f(s) ||_gamma.
// Computed by exact piecewise antiderivatives in the Hilbert case
// (integrals extended over the whole half-line including the tail).
struct HardyPair {
  double lhs = 0.0;
  double rhs = 0.0;
};
HardyPair hardy_check(const StepFunction& f, double alpha);

}  // namespace gammalab
