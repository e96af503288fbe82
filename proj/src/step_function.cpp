#include "gammalab/step_function.hpp"

#include <stdexcept>

#include "gammalab/rng.hpp"

namespace gammalab {

StepFunction::StepFunction(TimeGrid grid, SpaceModel target, int noise_dim)
    : grid_(std::move(grid)), target_(std::move(target)),
      noise_dim_(noise_dim) {
  if (noise_dim_ < 1) throw std::invalid_argument("noise_dim must be >= 1");
  grid_.validate();
  values_.assign(grid_.intervals(),
                 CMatrix::Zero(target_.dim, noise_dim_));
}

StepFunction::StepFunction(TimeGrid grid, SpaceModel target,
                           std::vector<CMatrix> values)
    : grid_(std::move(grid)), target_(std::move(target)),
      values_(std::move(values)) {
  grid_.validate();
  if (values_.empty()) throw std::invalid_argument("no interval values");
  noise_dim_ = static_cast<int>(values_[0].cols());
  validate();
}

StepFunction StepFunction::indicator(const TimeGrid& grid,
                                     const SpaceModel& target, double a,
                                     double b, const Vector& value) {
  StepFunction f(grid, target);
  for (int i = 0; i < grid.intervals(); ++i) {
    // interval fully inside [a, b); partial overlap is a grid mismatch
    if (grid.knots[i] >= a && grid.knots[i + 1] <= b)
      f.values_[i].col(0) = value.cast<Complex>();
  }
  return f;
}

StepFunction StepFunction::sampled(const TimeGrid& grid,
                                   const SpaceModel& target,
                                   const std::function<Vector(double)>& fn) {
  StepFunction f(grid, target);
  for (int i = 0; i < grid.intervals(); ++i)
    f.values_[i].col(0) = fn(grid.midpoint(i)).cast<Complex>();
  return f;
}

bool StepFunction::is_real(double tol) const {
  for (const auto& m : values_)
    if (m.imag().cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  if (!grid_.same_knots(other.grid_) || noise_dim_ != other.noise_dim_ ||
      target_.dim != other.target_.dim)
    throw std::invalid_argument("step function shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] += other.values_[i];
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  if (!grid_.same_knots(other.grid_) || noise_dim_ != other.noise_dim_ ||
      target_.dim != other.target_.dim)
    throw std::invalid_argument("step function shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] -= other.values_[i];
  return *this;
}

StepFunction& StepFunction::operator*=(double c) {
  for (auto& m : values_) m *= c;
  return *this;
}

void StepFunction::validate() const {
  grid_.validate();
  if (static_cast<int>(values_.size()) != grid_.intervals())
    throw std::invalid_argument("value count != interval count");
  for (const auto& m : values_)
    if (m.rows() != target_.dim || m.cols() != noise_dim_)
      throw std::invalid_argument("interval value has wrong shape");
}

StepFunction random_step(const TimeGrid& grid, const SpaceModel& target,
                         int noise_dim, std::uint64_t seed,
                         std::uint64_t stream) {
  StepFunction f(grid, target, noise_dim);
  const std::uint64_t k = rng::key(seed, 0x5f3759dfULL, stream);
  std::uint64_t ctr = 0;
  for (int i = 0; i < grid.intervals(); ++i)
    for (int r = 0; r < target.dim; ++r)
      for (int c = 0; c < noise_dim; ++c)
        f.value(i)(r, c) = rng::gaussian(k, ctr++);
  return f;
}

}  // namespace gammalab
