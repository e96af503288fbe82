#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gammalab/grid.hpp"
#include "gammalab/space.hpp"

namespace gammalab {

// Discrete carrier of gamma(0,T;X) and gamma(0,T;H,X) elements: one
// value per grid interval.  Scalar-noise elements are n x 1 matrices,
// operator-valued ones n x m with m the noise dimension.  Values are
// stored complex; real data has zero imaginary part.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(TimeGrid grid, SpaceModel target, int noise_dim = 1);
  StepFunction(TimeGrid grid, SpaceModel target,
               std::vector<CMatrix> values);

  static StepFunction indicator(const TimeGrid& grid, const SpaceModel& target,
                                double a, double b, const Vector& value);
  static StepFunction sampled(const TimeGrid& grid, const SpaceModel& target,
                              const std::function<Vector(double)>& f);

  const TimeGrid& grid() const { return grid_; }
  const SpaceModel& target() const { return target_; }
  int noise_dim() const { return noise_dim_; }
  int dim() const { return target_.dim; }

  CMatrix& value(int i) { return values_[i]; }
  const CMatrix& value(int i) const { return values_[i]; }
  // Column j of interval i as an X-vector.
  CVector column(int i, int j = 0) const { return values_[i].col(j); }

  bool is_real(double tol = 0.0) const;

  StepFunction& operator+=(const StepFunction& other);
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(double c);
  friend StepFunction operator-(StepFunction a, const StepFunction& b) {
    a -= b;
    return a;
  }
  friend StepFunction operator+(StepFunction a, const StepFunction& b) {
    a += b;
    return a;
  }

  void validate() const;

 private:
  TimeGrid grid_;
  SpaceModel target_;
  int noise_dim_ = 1;
  std::vector<CMatrix> values_;
};

// Norm value plus method provenance.
enum class NormMethod { hilbert_exact, square_function, monte_carlo };

struct GammaEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::hilbert_exact;
  long samples = 0;
  double stderr_ = 0.0;
};

// Random step function with iid standard normal entries, used by the
// property and constant-measurement suites.
StepFunction random_step(const TimeGrid& grid, const SpaceModel& target,
                         int noise_dim, std::uint64_t seed,
                         std::uint64_t stream = 0);

}  // namespace gammalab
