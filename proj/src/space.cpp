#include "gammalab/space.hpp"

#include <cmath>
#include <stdexcept>

#include "gammalab/rng.hpp"
#include "gammalab/sectorial.hpp"

namespace gammalab {

SpaceModel SpaceModel::lq(int n, double q, std::string label) {
  if (n < 1) throw std::invalid_argument("space dimension must be positive");
  if (!(q >= 1.0)) throw std::invalid_argument("exponent must be >= 1");
  return SpaceModel{n, q, std::move(label)};
}

SpaceModel SpaceModel::hilbert(int n, std::string label) {
  return lq(n, 2.0, std::move(label));
}

namespace {

template <typename Vec>
double lq_norm_impl(const Vec& v, double q) {
  if (q == kInfExponent) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      m = std::max(m, std::abs(v[i]));
    return m;
  }
  if (q == 2.0) return v.norm();
  if (q == 1.0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::abs(v[i]);
    return s;
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    s += std::pow(std::abs(v[i]), q);
  return std::pow(s, 1.0 / q);
}

}  // namespace

double SpaceModel::norm(const Vector& v) const {
  if (v.size() != dim) throw std::invalid_argument("vector/space dim mismatch");
  return lq_norm_impl(v, exponent);
}

double SpaceModel::norm(const CVector& v) const {
  if (v.size() != dim) throw std::invalid_argument("vector/space dim mismatch");
  return lq_norm_impl(v, exponent);
}

double domain_norm(const SpaceModel& base, const DomainScale& scale,
                   const Vector& v) {
  if (scale.op == nullptr || scale.alpha == 0.0) return base.norm(v);
  CVector y = scale.op->frac_apply(scale.alpha, CVector(v.cast<Complex>()));
  return base.norm(y);
}

double domain_norm(const SpaceModel& base, const DomainScale& scale,
                   const CVector& v) {
  if (scale.op == nullptr || scale.alpha == 0.0) return base.norm(v);
  return base.norm(scale.op->frac_apply(scale.alpha, v));
}

double pairwise_sum(const std::vector<double>& v) {
  // bottom-up tree over slot indices; order independent of call pattern
  std::vector<double> level(v);
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t a = 2 * i, b = 2 * i + 1;
      next[i] = b < level.size() ? level[a] + level[b] : level[a];
    }
    level.swap(next);
  }
  return level.empty() ? 0.0 : level[0];
}

MeanStderr batch_mean_stderr(const std::vector<double>& v, int batch) {
  MeanStderr out;
  const std::size_t n = v.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(v) / static_cast<double>(n);
  if (n < 2) return out;
  const std::size_t bs = std::min<std::size_t>(batch, n);
  const std::size_t nb = n / bs;
  if (nb < 2) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / (static_cast<double>(n) * (n - 1.0)));
    return out;
  }
  std::vector<double> means(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < bs; ++i) s += v[b * bs + i];
    means[b] = s / static_cast<double>(bs);
  }
  double mb = pairwise_sum(means) / static_cast<double>(nb);
  double ss = 0.0;
  for (double m : means) ss += (m - mb) * (m - mb);
  out.stderr_ = std::sqrt(ss / (static_cast<double>(nb) * (nb - 1.0)));
  return out;
}

}  // namespace gammalab
