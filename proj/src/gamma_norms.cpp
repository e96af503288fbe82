#include "gammalab/gamma_norms.hpp"

#include <cmath>
#include <stdexcept>

#include "gammalab/rng.hpp"

namespace gammalab {

GammaEstimate gamma_norm_hilbert(const StepFunction& f) {
  if (!f.target().is_hilbert())
    throw std::invalid_argument("exact gamma norm needs a Hilbert target");
  std::vector<double> terms(f.grid().intervals());
  for (int i = 0; i < f.grid().intervals(); ++i)
    terms[i] = f.grid().measure(i) * f.value(i).squaredNorm();
  GammaEstimate out;
  out.value = std::sqrt(pairwise_sum(terms));
  out.method = NormMethod::hilbert_exact;
  return out;
}

GammaEstimate gamma_norm_mc(const StepFunction& f, long samples,
                            std::uint64_t seed, std::uint64_t stream) {
  if (samples < 2)
    throw std::invalid_argument("monte carlo norm needs samples >= 2");
  const int ni = f.grid().intervals();
  const int m = f.noise_dim();
  std::vector<double> scale(ni);
  for (int i = 0; i < ni; ++i) scale[i] = std::sqrt(f.grid().measure(i));
  std::vector<double> sq(samples);
  const std::uint64_t k = rng::key(seed, 0x67616d6dULL, stream);
  for (long w = 0; w < samples; ++w) {
    CVector v = CVector::Zero(f.dim());
    std::uint64_t ctr = static_cast<std::uint64_t>(w) *
                        static_cast<std::uint64_t>(ni) * m;
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < m; ++j)
        v += (scale[i] * rng::gaussian(k, ctr++)) * f.value(i).col(j);
    const double n = f.target().norm(v);
    sq[w] = n * n;
  }
  const MeanStderr ms = batch_mean_stderr(sq);
  GammaEstimate out;
  out.value = std::sqrt(std::max(0.0, ms.mean));
  out.method = NormMethod::monte_carlo;
  out.samples = samples;
  out.stderr_ = out.value > 0.0 ? ms.stderr_ / (2.0 * out.value) : ms.stderr_;
  return out;
}

GammaEstimate gamma_norm_sqfn(const StepFunction& f) {
  if (f.target().exponent == kInfExponent)
    throw std::invalid_argument("square-function norm needs q < infinity");
  Vector acc = Vector::Zero(f.dim());
  for (int i = 0; i < f.grid().intervals(); ++i) {
    const double mu = f.grid().measure(i);
    for (int j = 0; j < f.noise_dim(); ++j)
      acc += mu * f.value(i).col(j).cwiseAbs2().real();
  }
  GammaEstimate out;
  out.value = f.target().norm(Vector(acc.cwiseSqrt()));
  out.method = NormMethod::square_function;
  return out;
}

GammaEstimate gamma_norm(const StepFunction& f) {
  return f.target().is_hilbert() ? gamma_norm_hilbert(f)
                                 : gamma_norm_sqfn(f);
}

StepFunction apply_multiplier(const std::vector<CMatrix>& ops,
                              const StepFunction& f) {
  if (static_cast<int>(ops.size()) != f.grid().intervals())
    throw std::invalid_argument("one operator per interval required");
  std::vector<CMatrix> vals(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) vals[i] = ops[i] * f.value(i);
  return StepFunction(f.grid(), f.target(), std::move(vals));
}

StepFunction apply_multiplier(const std::function<CMatrix(double)>& op_of_t,
                              const StepFunction& f) {
  std::vector<CMatrix> ops(f.grid().intervals());
  for (int i = 0; i < f.grid().intervals(); ++i)
    ops[i] = op_of_t(f.grid().midpoint(i));
  return apply_multiplier(ops, f);
}

StepFunction apply_scalar_multiplier(const std::function<double(double)>& m,
                                     const StepFunction& f) {
  std::vector<CMatrix> vals(f.grid().intervals());
  for (int i = 0; i < f.grid().intervals(); ++i)
    vals[i] = m(f.grid().midpoint(i)) * f.value(i);
  return StepFunction(f.grid(), f.target(), std::move(vals));
}

namespace {

// Fraction of grid interval i covered by the window union; only 0 or 1
// are allowed (windows must resolve on the grid).
bool interval_in_windows(const TimeGrid& g, int i, const IntervalSet& w) {
  const double a = g.knots[i], b = g.knots[i + 1];
  for (const auto& [wa, wb] : w) {
    if (wa <= a && b <= wb) return true;
    if (wb > a && wa < b)
      throw std::invalid_argument("window edge cuts a grid interval");
  }
  return false;
}

}  // namespace

StepFunction restrict(const StepFunction& f, const IntervalSet& windows) {
  StepFunction out = f;
  for (int i = 0; i < f.grid().intervals(); ++i)
    if (!interval_in_windows(f.grid(), i, windows)) out.value(i).setZero();
  return out;
}

CVector integrate(const StepFunction& f, const IntervalSet& windows) {
  if (f.noise_dim() != 1)
    throw std::invalid_argument("integrate expects scalar noise dimension");
  CVector acc = CVector::Zero(f.dim());
  for (int i = 0; i < f.grid().intervals(); ++i)
    if (interval_in_windows(f.grid(), i, windows))
      acc += f.grid().measure(i) * f.column(i);
  return acc;
}

CVector integrate(const StepFunction& f) {
  return integrate(f, {{f.grid().t0(), f.grid().t1()}});
}

double gamma_bound_estimate(const std::vector<Matrix>& family,
                            const SpaceModel& target, int trials,
                            std::uint64_t seed) {
  if (family.empty()) return 0.0;
  const int n = target.dim;
  for (const auto& t : family)
    if (t.rows() != n || t.cols() != n)
      throw std::invalid_argument("family member has wrong shape");
  if (target.is_hilbert()) {
    // the gamma-bound of a family on a Hilbert space is the uniform bound
    double best = 0.0;
    for (const auto& t : family)
      best = std::max(best, t.jacobiSvd().singularValues()(0));
    return best;
  }
  const std::uint64_t k = rng::key(seed, 0x67626f75ULL);
  const int kvecs = static_cast<int>(family.size());
  TimeGrid unit = TimeGrid::uniform(0.0, static_cast<double>(kvecs), kvecs);
  double best = 0.0;
  std::uint64_t ctr = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<CMatrix> xs(kvecs), txs(kvecs);
    for (int i = 0; i < kvecs; ++i) {
      Vector x(n);
      for (int r = 0; r < n; ++r) x[r] = rng::gaussian(k, ctr++);
      xs[i] = x.cast<Complex>();
      txs[i] = (family[i] * x).cast<Complex>();
    }
    StepFunction fx(unit, target, std::move(xs));
    StepFunction ftx(unit, target, std::move(txs));
    const double den = gamma_norm_mc(fx, 2048, seed, 2 * t + 1).value;
    const double num = gamma_norm_mc(ftx, 2048, seed, 2 * t + 1).value;
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

namespace {

// int_a^b s^p ds, exact.
double power_int(double a, double b, double p) {
  if (p == -1.0) return std::log(b / a);
  const double q = p + 1.0;
  const double fa = (a == 0.0 && q > 0.0) ? 0.0 : std::pow(a, q);
  return (std::pow(b, q) - fa) / q;
}

}  // namespace

HardyPair hardy_check(const StepFunction& f, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!f.target().is_hilbert())
    throw std::invalid_argument("hardy check implemented for Hilbert targets");
  if (f.noise_dim() != 1)
    throw std::invalid_argument("hardy check expects scalar noise dimension");
  if (f.grid().weight != Weight::lebesgue)
    throw std::invalid_argument("hardy check expects the Lebesgue weight");
  const TimeGrid& g = f.grid();
  const int ni = g.intervals();

  // rhs^2 = sum_i |y_i|^2 int s^{1-2a}; diverges if support touches 0 for
  // a >= 1, in which case the exact antiderivative overflows as intended.
  double rhs_sq = 0.0;
  for (int i = 0; i < ni; ++i)
    rhs_sq += f.value(i).squaredNorm() *
              power_int(g.knots[i], g.knots[i + 1], 1.0 - 2.0 * alpha);

  // lhs: G(s) = int_0^s f is piecewise linear, G(s) = c_i + y_i (s - t_i).
  double lhs_sq = 0.0;
  CVector c = CVector::Zero(f.dim());
  for (int i = 0; i < ni; ++i) {
    const double a = g.knots[i], b = g.knots[i + 1];
    const CVector y = f.column(i);
    const CVector d = c - a * y;  // G(s) = d + s y on [a, b]
    const double dd = d.squaredNorm();
    const double dy = 2.0 * d.dot(y).real();
    const double yy = y.squaredNorm();
    // skip vanishing coefficients so 0 * inf (divergent antiderivative at
    // a = 0 with G(0) = 0) stays 0
    if (dd != 0.0) lhs_sq += dd * power_int(a, b, -2.0 * alpha - 1.0);
    if (dy != 0.0) lhs_sq += dy * power_int(a, b, -2.0 * alpha);
    if (yy != 0.0) lhs_sq += yy * power_int(a, b, -2.0 * alpha + 1.0);
    c += (b - a) * y;
  }
  // tail beyond the grid: G constant
  lhs_sq += c.squaredNorm() * std::pow(g.t1(), -2.0 * alpha) / (2.0 * alpha);

  HardyPair out;
  out.lhs = std::sqrt(lhs_sq);
  out.rhs = std::sqrt(rhs_sq) / alpha;
  return out;
}

}  // namespace gammalab
