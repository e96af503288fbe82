#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gammalab/stochastic.hpp"

namespace gammalab {

// Grid function for one sample: values at knots, used as the state the
// nonlinearities act on.
using GridFn = std::vector<Vector>;

// Whole-grid-function nonlinearities with declared Lipschitz data.
// F: (grid, state) -> per-interval X values;  B: -> per-interval n x m
// values measured in X_{1/2}.
struct LipschitzSpec {
  std::function<std::vector<Vector>(const TimeGrid&, const GridFn&)> F;
  std::function<std::vector<Matrix>(const TimeGrid&, const GridFn&)> B;
  double L_F = 0.0, Lt_F = 0.0, C_F = 0.0;
  double L_B = 0.0, Lt_B = 0.0, C_B = 0.0;

  static LipschitzSpec zero(int dim, int noise_dim);
};

struct SEEProblem {
  SectorialOp A;
  LipschitzSpec spec;
  Vector u0;
  double horizon = 1.0;
  int time_steps = 256;
  double shift = 0.0;  // w with A + w invertible; 0 = auto
  StepFunction f;      // deterministic forcing (may be empty)
  std::optional<StepFunction> b;  // deterministic noise term

  // Default shift recipe: 2 max(0, -min Re lambda) + 1 if A is not
  // already invertible with spectrum in the open right half-plane.
  double effective_shift() const;
};

struct RegularityConstants {
  double K_star = 0.0;     // g -> S_w * g   into gamma(.;X_1)
  double K_diamond = 0.0;  // G -> S_w <> G  into gamma(.;X_1)
  double contraction(double lf, double lb) const {
    return lf * K_star + lb * K_diamond;
  }
};

RegularityConstants measure_constants(const SEEProblem& problem, int trials,
                                      std::uint64_t seed);

struct IterationReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> update_norms;      // per-iteration mean gamma(X_1) norm
  std::vector<double> contraction_ratios;
  double contraction_bound = 0.0;        // L_F K* + L_B K<>
};

class SmallnessViolation : public std::runtime_error {
 public:
  explicit SmallnessViolation(const std::string& what)
      : std::runtime_error(what) {}
};
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

struct PicardResult {
  PathEnsemble solution;
  IterationReport report;
};

PicardResult picard_solve(const SEEProblem& problem, int samples,
                          int max_iter, double tol, std::uint64_t seed);
// Variant reusing an existing noise (for matched-path experiments).
PicardResult picard_solve(const SEEProblem& problem, const CylindricalBM& w,
                          int max_iter, double tol);

struct ResidualStats {
  double max_rel = 0.0;
  double median_rel = 0.0;
};
ResidualStats mild_strong_check(const PathEnsemble& u,
                                const SEEProblem& problem,
                                const CylindricalBM& w);

struct NonautonomousResult {
  PathEnsemble solution;
  std::vector<double> split_points;
};

// Freezing scheme for A(t): greedy split of [0,T] until the gamma-bound of
// {A(u) - A(v)} on each piece is below epsilon, then concatenated solves
// with frozen A(s_{m-1}) and the difference absorbed into F.
NonautonomousResult solve_nonautonomous(
    const SEEProblem& problem, const std::function<Matrix(double)>& a_of_t,
    double epsilon, const CylindricalBM& w, int max_iter, double tol);

}  // namespace gammalab
