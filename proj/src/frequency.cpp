#include "gammalab/frequency.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gammalab/gamma_norms.hpp"
#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// int_a^b e^{-i s t} dt = (b-a) e^{-i s (a+b)/2} sinc(s (b-a)/2), exact and
// cancellation-free near s = 0.
Complex interval_kernel(double s, double a, double b) {
  const double half = 0.5 * (b - a);
  return (b - a) * std::polar(1.0, -s * 0.5 * (a + b)) * sinc(s * half);
}

// 16-point Gauss-Legendre on [-1, 1].
constexpr int kGL = 8;

struct GLRule {
  double x[2 * kGL];
  double w[2 * kGL];
};

GLRule gl_rule() {
  // standard 16-point abscissas/weights, symmetric
  static const double xs[kGL] = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const double ws[kGL] = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  GLRule r;
  for (int i = 0; i < kGL; ++i) {
    r.x[2 * i] = -xs[i];
    r.x[2 * i + 1] = xs[i];
    r.w[2 * i] = ws[i];
    r.w[2 * i + 1] = ws[i];
  }
  return r;
}

// Composite 16-point Gauss-Legendre of g over [a, b] with panel width <= h.
double composite_gl(const std::function<double(double)>& g, double a, double b,
                    double h) {
  static const GLRule rule = gl_rule();
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  const double dp = (b - a) / panels;
  std::vector<double> acc(panels);
  for (int p = 0; p < panels; ++p) {
    const double pa = a + p * dp;
    const double mid = pa + 0.5 * dp, rad = 0.5 * dp;
    double s = 0.0;
    for (int i = 0; i < 2 * kGL; ++i)
      s += rule.w[i] * g(mid + rad * rule.x[i]);
    acc[p] = s * rad;
  }
  return pairwise_sum(acc);
}

double oscillation_scale(const StepFunction& f) {
  return std::max(1.0, std::max(std::abs(f.grid().t0()),
                                std::abs(f.grid().t1())));
}

double min_dt(const TimeGrid& g) {
  double m = g.length(0);
  for (int i = 1; i < g.intervals(); ++i) m = std::min(m, g.length(i));
  return m;
}

double default_xi(const StepFunction& f) {
  return 8.0 * std::numbers::pi / min_dt(f.grid());
}

// int_{-inf}^{inf} g with truncation at xi and geometric extrapolation of
// the remaining tail from the two dyadic shells [xi,2xi], [2xi,4xi].
double full_line_integral(const std::function<double(double)>& g, double xi,
                          double h) {
  const double core = composite_gl(g, -xi, xi, h);
  const double shell1 =
      composite_gl(g, xi, 2 * xi, h) + composite_gl(g, -2 * xi, -xi, h);
  const double shell2 =
      composite_gl(g, 2 * xi, 4 * xi, h) + composite_gl(g, -4 * xi, -2 * xi, h);
  double rest = 0.0;
  if (shell1 > 0.0 && shell2 > 0.0 && shell2 < shell1) {
    const double r = shell2 / shell1;
    rest = shell2 * r / (1.0 - r);
  }
  return core + shell1 + shell2 + rest;
}

}  // namespace

CMatrix fourier_at(const StepFunction& f, double xi) {
  CMatrix out = CMatrix::Zero(f.dim(), f.noise_dim());
  const TimeGrid& g = f.grid();
  for (int i = 0; i < g.intervals(); ++i)
    out += interval_kernel(xi, g.knots[i], g.knots[i + 1]) * f.value(i);
  return out;
}

TimeGrid frequency_grid(double xi_max, int half_intervals) {
  if (!(xi_max > 0.0) || half_intervals < 1)
    throw std::invalid_argument("frequency grid needs xi_max > 0, n >= 1");
  return TimeGrid::uniform(-xi_max, xi_max, 2 * half_intervals);
}

StepFunction fourier(const StepFunction& f, const TimeGrid& freq_grid) {
  if (std::abs(freq_grid.t0() + freq_grid.t1()) >
      1e-12 * std::abs(freq_grid.t1()))
    throw std::invalid_argument("frequency grid must be symmetric about 0");
  std::vector<CMatrix> vals(freq_grid.intervals());
  for (int k = 0; k < freq_grid.intervals(); ++k)
    vals[k] = fourier_at(f, freq_grid.midpoint(k));
  return StepFunction(freq_grid, f.target(), std::move(vals));
}

StepFunction fourier_inverse(const StepFunction& fhat,
                             const TimeGrid& time_grid) {
  const TimeGrid& fg = fhat.grid();
  const int K = fg.intervals();
  const int N = time_grid.intervals();
  if (K < N)
    throw std::invalid_argument(
        "inverse needs at least as many frequency samples as time intervals");
  CMatrix design(K, N);
  for (int k = 0; k < K; ++k) {
    const double s = fg.midpoint(k);
    const double w = std::sqrt(fg.measure(k));
    for (int i = 0; i < N; ++i)
      design(k, i) =
          w * interval_kernel(s, time_grid.knots[i], time_grid.knots[i + 1]);
  }
  const int n = fhat.dim(), m = fhat.noise_dim();
  CMatrix rhs(K, n * m);
  for (int k = 0; k < K; ++k) {
    const double w = std::sqrt(fg.measure(k));
    for (int c = 0; c < m; ++c)
      rhs.block(k, c * n, 1, n) = w * fhat.value(k).col(c).transpose();
  }
  CMatrix sol = design.colPivHouseholderQr().solve(rhs);
  std::vector<CMatrix> vals(N);
  for (int i = 0; i < N; ++i) {
    vals[i].resize(n, m);
    for (int c = 0; c < m; ++c)
      vals[i].col(c) = sol.block(i, c * n, 1, n).transpose();
  }
  return StepFunction(time_grid, fhat.target(), std::move(vals));
}

double symbol_weighted_l2(const StepFunction& f, const Symbol& symbol,
                          double xi_max) {
  const double xi = xi_max > 0.0 ? xi_max : default_xi(f);
  const double h = 1.5 / oscillation_scale(f);
  auto g = [&](double s) {
    return (symbol(s) * fourier_at(f, s)).squaredNorm();
  };
  return std::sqrt(std::max(0.0, full_line_integral(g, xi, h) / kTwoPi));
}

double scalar_weighted_l2(const StepFunction& f,
                          const std::function<double(double)>& weight,
                          double xi_max) {
  const double xi = xi_max > 0.0 ? xi_max : default_xi(f);
  const double h = 1.5 / oscillation_scale(f);
  auto g = [&](double s) { return weight(s) * fourier_at(f, s).squaredNorm(); };
  return std::sqrt(std::max(0.0, full_line_integral(g, xi, h) / kTwoPi));
}

GammaEstimate gamma_s_norm(const StepFunction& f, double s) {
  // step samples carry no information beyond the grid Nyquist rate
  const double xi = std::numbers::pi / min_dt(f.grid());
  const double h = 1.5 / oscillation_scale(f);
  GammaEstimate out;
  if (f.target().is_hilbert()) {
    auto g = [&](double t) {
      return std::pow(1.0 + t * t, s) * fourier_at(f, t).squaredNorm();
    };
    out.value = std::sqrt(std::max(0.0, composite_gl(g, -xi, xi, h) / kTwoPi));
    out.method = NormMethod::hilbert_exact;
    return out;
  }
  const int half = std::max(8, static_cast<int>(std::ceil(xi / h)));
  TimeGrid fg = frequency_grid(xi, half);
  std::vector<CMatrix> vals(fg.intervals());
  for (int k = 0; k < fg.intervals(); ++k) {
    const double t = fg.midpoint(k);
    vals[k] = std::pow(1.0 + t * t, 0.5 * s) * fourier_at(f, t);
  }
  StepFunction weighted(fg, f.target(), std::move(vals));
  out = gamma_norm_sqfn(weighted);
  out.value /= std::sqrt(kTwoPi);
  return out;
}

}  // namespace gammalab
