#include "gammalab/see_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gammalab/maxreg.hpp"
#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

Complex phi1(Complex x) {
  if (std::abs(x) < 1e-6)
    return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  return (std::exp(x) - 1.0) / x;
}

double ou_scale(Complex lam, double d) {
  const double a = 2.0 * lam.real() * d;
  if (std::abs(a) < 1e-8) return 1.0;
  return std::sqrt(-std::expm1(-a) / a);
}

// Step-function value at time t (zero outside the support).
Vector step_value_at(const StepFunction* f, double t, int dim) {
  if (f == nullptr || f->grid().knots.empty()) return Vector::Zero(dim);
  const auto& kn = f->grid().knots;
  if (t < kn.front() || t >= kn.back()) return Vector::Zero(dim);
  const int i = static_cast<int>(
      std::upper_bound(kn.begin(), kn.end(), t) - kn.begin() - 1);
  return f->column(i).real();
}

Matrix step_matrix_at(const StepFunction* f, double t, int dim, int m) {
  if (f == nullptr || f->grid().knots.empty()) return Matrix::Zero(dim, m);
  const auto& kn = f->grid().knots;
  if (t < kn.front() || t >= kn.back()) return Matrix::Zero(dim, m);
  const int i = static_cast<int>(
      std::upper_bound(kn.begin(), kn.end(), t) - kn.begin() - 1);
  return f->value(i).real();
}

struct CoreResult {
  std::vector<std::vector<Vector>> paths;  // [sample][knot]
  IterationReport report;
};

// One Picard solve on a (sub)grid with exact linear flow per interval.
// `offset` indexes the piece's first interval inside the noise grid.
CoreResult picard_core(const SectorialOp& a, double w0,
                       const LipschitzSpec& spec, const StepFunction* f,
                       const StepFunction* b, const TimeGrid& grid, int offset,
                       const CylindricalBM& wbm,
                       const std::vector<Vector>& u0s, int max_iter,
                       double tol, double contraction_bound) {
  const int n = a.dim();
  const int m = wbm.noise_dim();
  const int ni = grid.intervals();
  const int samples = wbm.samples();
  CMatrix shifted = a.matrix();
  shifted.diagonal().array() += w0;
  const SectorialOp aw(shifted);
  if (!aw.diagonalizable())
    throw std::invalid_argument("solver needs a diagonalizable operator");
  const CVector& lam = aw.eigenvalues();
  const CMatrix& v = aw.eigenvectors();
  const CMatrix& vinv = aw.eigenvectors_inverse();
  const Matrix aw_real = shifted.real();

  CoreResult out;
  out.report.contraction_bound = contraction_bound;
  if (contraction_bound >= 1.0)
    throw SmallnessViolation(
        "Lipschitz constants violate the smallness condition: bound = " +
        std::to_string(contraction_bound));

  out.paths.assign(samples, std::vector<Vector>(ni + 1, Vector::Zero(n)));
  // start from the free evolution of the initial values
  for (int s = 0; s < samples; ++s) {
    out.paths[s][0] = u0s[s];
    CVector z = vinv * u0s[s].cast<Complex>();
    for (int i = 0; i < ni; ++i) {
      for (int k = 0; k < n; ++k) z[k] *= std::exp(-lam[k] * grid.length(i));
      out.paths[s][i + 1] = (v * z).real();
    }
  }

  int bad_streak = 0;
  double prev_update = -1.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> updates(samples);
    for (int s = 0; s < samples; ++s) {
      GridFn state(out.paths[s].begin(), out.paths[s].end());
      std::vector<Vector> fv = spec.F(grid, state);
      std::vector<Matrix> bv = spec.B(grid, state);
      if (static_cast<int>(fv.size()) != ni ||
          static_cast<int>(bv.size()) != ni)
        throw std::invalid_argument("nonlinearity returned wrong interval count");
      std::vector<Vector> next(ni + 1, Vector::Zero(n));
      next[0] = u0s[s];
      CVector z = vinv * u0s[s].cast<Complex>();
      for (int i = 0; i < ni; ++i) {
        const double d = grid.length(i);
        const double tl = grid.knots[i];
        // shift absorbed into the drift
        const Vector drift =
            fv[i] + step_value_at(f, grid.midpoint(i), n) + w0 * state[i];
        const Matrix noise = bv[i] + step_matrix_at(b, tl, n, m);
        const CVector gd = vinv * drift.cast<Complex>();
        const CVector gs =
            vinv * (noise * wbm.increment(s, offset + i)).cast<Complex>();
        for (int k = 0; k < n; ++k)
          z[k] = std::exp(-lam[k] * d) * z[k] + d * phi1(-lam[k] * d) * gd[k] +
                 ou_scale(lam[k], d) * gs[k];
        next[i + 1] = (v * z).real();
      }
      // gamma(0,T;X_1) distance, left rule
      std::vector<double> terms(ni);
      for (int i = 0; i < ni; ++i)
        terms[i] = grid.length(i) *
                   (aw_real * (next[i] - out.paths[s][i])).squaredNorm();
      updates[s] = std::sqrt(pairwise_sum(terms));
      out.paths[s].assign(next.begin(), next.end());
    }
    const double mean_update = pairwise_sum(updates) / samples;
    out.report.update_norms.push_back(mean_update);
    if (prev_update > 0.0) {
      const double ratio = mean_update / prev_update;
      out.report.contraction_ratios.push_back(ratio);
      bad_streak = ratio > 1.0 ? bad_streak + 1 : 0;
      if (bad_streak >= 3)
        throw DivergenceError("Picard iteration diverges: ratio > 1 for 3 "
                              "consecutive iterations");
    }
    out.report.iterations = iter + 1;
    prev_update = mean_update;
    if (mean_update <= tol) {
      out.report.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

LipschitzSpec LipschitzSpec::zero(int dim, int noise_dim) {
  LipschitzSpec s;
  s.F = [dim](const TimeGrid& g, const GridFn&) {
    return std::vector<Vector>(g.intervals(), Vector::Zero(dim));
  };
  s.B = [dim, noise_dim](const TimeGrid& g, const GridFn&) {
    return std::vector<Matrix>(g.intervals(), Matrix::Zero(dim, noise_dim));
  };
  return s;
}

double SEEProblem::effective_shift() const {
  if (shift != 0.0) return shift;
  if (A.invertible() && A.min_real_eig() > 0.0) return 0.0;
  return 2.0 * std::max(0.0, -A.min_real_eig()) + 1.0;
}

RegularityConstants measure_constants(const SEEProblem& problem, int trials,
                                      std::uint64_t seed) {
  const double w0 = problem.effective_shift();
  CMatrix shifted = problem.A.matrix();
  shifted.diagonal().array() += w0;
  const SectorialOp aw(shifted);
  RegularityConstants out;
  out.K_star = maxreg_constant(aw, trials, seed, 1, 32, problem.horizon);
  out.K_diamond =
      stoch_maxreg_constant(aw, trials, 128, 2.0, rng::key(seed, 41), 128,
                            problem.horizon)
          .constant;
  return out;
}

PicardResult picard_solve(const SEEProblem& problem, int samples, int max_iter,
                          double tol, std::uint64_t seed) {
  const int m = problem.b ? problem.b->noise_dim() : 1;
  const TimeGrid grid =
      TimeGrid::uniform(0.0, problem.horizon, problem.time_steps);
  const CylindricalBM w(grid, m, samples, seed);
  return picard_solve(problem, w, max_iter, tol);
}

PicardResult picard_solve(const SEEProblem& problem, const CylindricalBM& w,
                          int max_iter, double tol) {
  const RegularityConstants rc =
      measure_constants(problem, 4, rng::key(w.seed(), 0x5ee));
  const double bound =
      rc.contraction(problem.spec.L_F, problem.spec.L_B);
  const std::vector<Vector> u0s(w.samples(), problem.u0);
  const StepFunction* f =
      problem.f.grid().knots.empty() ? nullptr : &problem.f;
  const StepFunction* b = problem.b ? &*problem.b : nullptr;
  CoreResult core =
      picard_core(problem.A, problem.effective_shift(), problem.spec, f, b,
                  w.grid(), 0, w, u0s, max_iter, tol, bound);
  PicardResult out{PathEnsemble(w.grid(), problem.A.dim(), w.samples()),
                   core.report};
  for (int s = 0; s < w.samples(); ++s)
    for (std::size_t j = 0; j < core.paths[s].size(); ++j)
      out.solution.at(s, static_cast<int>(j)) = core.paths[s][j];
  return out;
}

ResidualStats mild_strong_check(const PathEnsemble& u,
                                const SEEProblem& problem,
                                const CylindricalBM& w) {
  const TimeGrid& grid = u.grid();
  const int n = problem.A.dim();
  const Matrix a = problem.A.matrix().real();
  std::vector<double> per_sample(u.samples());
  for (int s = 0; s < u.samples(); ++s) {
    GridFn state(grid.knots.size());
    for (std::size_t j = 0; j < grid.knots.size(); ++j)
      state[j] = u.at(s, static_cast<int>(j));
    const std::vector<Vector> fv = problem.spec.F(grid, state);
    const std::vector<Matrix> bv = problem.spec.B(grid, state);
    double scale = 1e-300;
    for (const auto& x : state) scale = std::max(scale, x.norm());
    Vector acc = Vector::Zero(n);  // int A U - int (F+f) - int (B+b) dW
    double worst = 0.0;
    for (int i = 0; i < grid.intervals(); ++i) {
      const double d = grid.length(i);
      acc += d * (a * state[i]);
      acc -= d * (fv[i] +
                  step_value_at(problem.f.grid().knots.empty() ? nullptr
                                                               : &problem.f,
                                grid.midpoint(i), n));
      const Matrix noise =
          bv[i] + step_matrix_at(problem.b ? &*problem.b : nullptr,
                                 grid.knots[i], n,
                                 w.noise_dim());
      acc -= noise * w.increment(s, i);
      const Vector res = state[i + 1] - problem.u0 + acc;
      worst = std::max(worst, res.norm());
    }
    per_sample[s] = worst / scale;
  }
  std::vector<double> sorted = per_sample;
  std::sort(sorted.begin(), sorted.end());
  ResidualStats out;
  out.max_rel = sorted.back();
  out.median_rel = sorted[sorted.size() / 2];
  return out;
}

NonautonomousResult solve_nonautonomous(
    const SEEProblem& problem, const std::function<Matrix(double)>& a_of_t,
    double epsilon, const CylindricalBM& w, int max_iter, double tol) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const TimeGrid& grid = w.grid();
  const int n = problem.A.dim();
  // family spread over [s, s'] measured by the uniform bound (Hilbert case)
  auto spread = [&](double s0, double s1) {
    double m = 0.0;
    std::vector<Matrix> samplesm;
    for (int j = 0; j <= 8; ++j)
      samplesm.push_back(a_of_t(s0 + (s1 - s0) * j / 8.0));
    for (std::size_t i = 0; i < samplesm.size(); ++i)
      for (std::size_t j = i + 1; j < samplesm.size(); ++j)
        m = std::max(m, (samplesm[i] - samplesm[j])
                            .jacobiSvd()
                            .singularValues()(0));
    return m;
  };

  // constants measured once with the initial frozen operator
  SEEProblem frozen0 = problem;
  frozen0.A = SectorialOp(a_of_t(grid.t0()));
  const RegularityConstants rc =
      measure_constants(frozen0, 4, rng::key(w.seed(), 0x6e6f));
  const double bound = rc.contraction(problem.spec.L_F, problem.spec.L_B);

  NonautonomousResult out{PathEnsemble(grid, n, w.samples()), {grid.t0()}};
  std::vector<Vector> u0s(w.samples(), problem.u0);
  int start = 0;  // knot index of the current piece start
  const int nk = static_cast<int>(grid.knots.size());
  while (start < nk - 1) {
    // furthest knot with spread below epsilon (greedy, left to right)
    int lo = start + 1, hi = nk - 1, end = -1;
    if (spread(grid.knots[start], grid.knots[start + 1]) >= epsilon)
      throw std::runtime_error(
          "operator family too rough for the split tolerance");
    while (lo <= hi) {
      const int mid = (lo + hi) / 2;
      if (spread(grid.knots[start], grid.knots[mid]) < epsilon) {
        end = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    TimeGrid piece;
    piece.weight = Weight::lebesgue;
    piece.knots.assign(grid.knots.begin() + start, grid.knots.begin() + end + 1);
    const double s_frozen = grid.knots[start];
    const SectorialOp am(a_of_t(s_frozen));
    // absorb A(t) - A(s_{m-1}) into the drift
    LipschitzSpec spec = problem.spec;
    auto base_f = problem.spec.F;
    spec.F = [base_f, &a_of_t, am, n](const TimeGrid& g,
                                      const GridFn& u) {
      std::vector<Vector> vals = base_f(g, u);
      const Matrix frozen = am.matrix().real();
      for (int i = 0; i < g.intervals(); ++i)
        vals[i] += (frozen - a_of_t(g.knots[i])) * u[i];
      return vals;
    };
    const StepFunction* f =
        problem.f.grid().knots.empty() ? nullptr : &problem.f;
    const StepFunction* b = problem.b ? &*problem.b : nullptr;
    SEEProblem local = problem;
    local.A = am;
    CoreResult core = picard_core(am, local.effective_shift(), spec, f, b,
                                  piece, start, w, u0s, max_iter, tol, bound);
    for (int s = 0; s < w.samples(); ++s) {
      for (std::size_t j = 0; j < core.paths[s].size(); ++j)
        out.solution.at(s, start + static_cast<int>(j)) = core.paths[s][j];
      u0s[s] = core.paths[s].back();
    }
    out.split_points.push_back(grid.knots[end]);
    start = end;
  }
  return out;
}

}  // namespace gammalab
