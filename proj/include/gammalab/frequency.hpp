#pragma once

#include <cstdint>
#include <functional>

#include "gammalab/step_function.hpp"

namespace gammalab {

// Unnormalised transform f^(xi) = int f(t) e^{-i xi t} dt, evaluated by
// exact per-interval integration of the kernel.  Columns transform
// independently.
CMatrix fourier_at(const StepFunction& f, double xi);

// Symmetric frequency grid [-Xi, Xi] with 2*half_intervals cells.
TimeGrid frequency_grid(double xi_max, int half_intervals);

// Frequency-domain step representation: midpoint samples of f^ on the
// given symmetric grid.
StepFunction fourier(const StepFunction& f, const TimeGrid& freq_grid);

// Inverse: the step function on `time_grid` whose transform best matches
// the given frequency samples in the weighted least-squares sense.  For
// samples produced by `fourier` from a step function on the same grid the
// round trip is exact to solver precision.
StepFunction fourier_inverse(const StepFunction& fhat,
                             const TimeGrid& time_grid);

// Operator-valued Fourier symbol s -> M(s) (dim x dim complex).
using Symbol = std::function<CMatrix(double)>;

// (1/2pi) int_R || M(s) f^(s) ||_F^2 ds for the Hilbert-case gamma norm of
// the multiplier output.  Composite Gauss-Legendre with panel width tied to
// the oscillation scale, truncated at +-xi_max with one Richardson step in
// xi_max to remove the power-law tail.
double symbol_weighted_l2(const StepFunction& f, const Symbol& symbol,
                          double xi_max = 0.0);
// Scalar-weight overload: weight(s) multiplies ||f^(s)||^2.
double scalar_weighted_l2(const StepFunction& f,
                          const std::function<double(double)>& weight,
                          double xi_max = 0.0);

// Frequency-weighted norm || s -> (1+s^2)^{s/2} f^(s) ||_gamma / sqrt(2pi),
// so s = 0 is consistent with gamma_norm(f).  Frequencies beyond the grid
// Nyquist rate pi / min dt are discarded: the step function is read as a
// sample of an underlying smooth function.  Non-Hilbert targets evaluate
// the weighted frequency samples with the square-function norm.
GammaEstimate gamma_s_norm(const StepFunction& f, double s);

}  // namespace gammalab
