#include "gammalab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace gammalab {

TimeGrid TimeGrid::uniform(double t0, double t1, int n, Weight w) {
  if (n < 1) throw std::invalid_argument("need at least one interval");
  if (!(t1 > t0)) throw std::invalid_argument("need t1 > t0");
  TimeGrid g;
  g.weight = w;
  g.knots.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    g.knots[i] = t0 + (t1 - t0) * static_cast<double>(i) / n;
  g.knots.back() = t1;
  g.validate();
  return g;
}

TimeGrid TimeGrid::log_spaced(double t0, double t1, int per_decade, Weight w) {
  if (!(t0 > 0.0) || !(t1 > t0))
    throw std::invalid_argument("need 0 < t0 < t1");
  if (per_decade < 1) throw std::invalid_argument("per_decade must be >= 1");
  TimeGrid g;
  g.weight = w;
  const double l0 = std::log10(t0), l1 = std::log10(t1);
  const int n = std::max(1, static_cast<int>(std::ceil((l1 - l0) * per_decade)));
  g.knots.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    g.knots[i] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) / n);
  g.knots.front() = t0;
  g.knots.back() = t1;
  g.validate();
  return g;
}

double TimeGrid::measure(int i) const {
  const double a = knots[i], b = knots[i + 1];
  switch (weight) {
    case Weight::lebesgue:
      return b - a;
    case Weight::dt_over_t:
      if (!(a > 0.0)) throw std::domain_error("dt/t weight needs t > 0");
      return std::log(b / a);
    case Weight::power: {
      if (beta == -1.0) {
        if (!(a > 0.0)) throw std::domain_error("weight needs t > 0");
        return std::log(b / a);
      }
      const double p = beta + 1.0;
      if (a < 0.0 || (a == 0.0 && p <= 0.0))
        throw std::domain_error("power weight not integrable at 0");
      const double fa = a == 0.0 ? 0.0 : std::pow(a, p);
      return (std::pow(b, p) - fa) / p;
    }
  }
  throw std::logic_error("unknown weight");
}

double TimeGrid::total_measure() const {
  double s = 0.0;
  for (int i = 0; i < intervals(); ++i) s += measure(i);
  return s;
}

void TimeGrid::validate() const {
  if (knots.size() < 2) throw std::invalid_argument("grid needs >= 2 knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1]))
      throw std::invalid_argument("grid knots must increase strictly");
  if ((weight == Weight::dt_over_t) && !(knots.front() > 0.0))
    throw std::invalid_argument("dt/t grid must start at t > 0");
}

bool TimeGrid::same_knots(const TimeGrid& other, double tol) const {
  if (knots.size() != other.knots.size()) return false;
  for (std::size_t i = 0; i < knots.size(); ++i)
    if (std::abs(knots[i] - other.knots[i]) > tol) return false;
  return true;
}

TimeGrid TimeGrid::refined() const {
  TimeGrid g;
  g.weight = weight;
  g.beta = beta;
  g.knots.reserve(2 * knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    g.knots.push_back(knots[i]);
    g.knots.push_back(0.5 * (knots[i] + knots[i + 1]));
  }
  g.knots.push_back(knots.back());
  return g;
}

std::string weight_name(Weight w) {
  switch (w) {
    case Weight::lebesgue: return "dt";
    case Weight::dt_over_t: return "dt/t";
    case Weight::power: return "power";
  }
  return "?";
}

Weight weight_from_name(const std::string& s) {
  if (s == "dt") return Weight::lebesgue;
  if (s == "dt/t") return Weight::dt_over_t;
  if (s == "power") return Weight::power;
  throw std::invalid_argument("unknown weight name: " + s);
}

}  // namespace gammalab
