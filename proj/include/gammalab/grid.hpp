#pragma once

#include <string>
#include <vector>

namespace gammalab {

enum class Weight { lebesgue, dt_over_t, power };

// Partition t_0 < t_1 < ... < t_N carrying one of the measures dt,
// dt/t, or sigma^beta dsigma.  Interval measures use the exact
// antiderivative of the weight, not a midpoint rule.
struct TimeGrid {
  std::vector<double> knots;
  Weight weight = Weight::lebesgue;
  double beta = 0.0;  // only for Weight::power

  static TimeGrid uniform(double t0, double t1, int n,
                          Weight w = Weight::lebesgue);
  static TimeGrid log_spaced(double t0, double t1, int per_decade,
                             Weight w = Weight::dt_over_t);

  int intervals() const { return static_cast<int>(knots.size()) - 1; }
  double t0() const { return knots.front(); }
  double t1() const { return knots.back(); }
  double length(int i) const { return knots[i + 1] - knots[i]; }
  double midpoint(int i) const { return 0.5 * (knots[i] + knots[i + 1]); }
  // Measure of interval i under the grid weight.
  double measure(int i) const;
  double total_measure() const;

  void validate() const;  // throws on non-monotone knots etc.
  bool same_knots(const TimeGrid& other, double tol = 0.0) const;

  // Refine by splitting every interval into two halves.
  TimeGrid refined() const;
};

std::string weight_name(Weight w);
Weight weight_from_name(const std::string& s);

}  // namespace gammalab
