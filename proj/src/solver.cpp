#include "proxyvar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "internal.hpp"
#include "proxyvar/cgf.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/hfunc.hpp"

namespace proxyvar {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kGoldenMaxIters = 300;

struct GoldenResult {
  double x;
  double fx;
  long evaluations;
};

// Maximizes f on [a, b] until the bracket is narrower than tol * max(1, |x|).
template <class F>
GoldenResult golden_max(F&& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  long evals = 2;
  for (int it = 0; it < kGoldenMaxIters; ++it) {
    if (b - a <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc >= fd ? GoldenResult{c, fc, evals} : GoldenResult{d, fd, evals};
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (int i = 0; i < n; ++i) grid.push_back((lo * (n - 1 - i) + hi * i) / (n - 1));
  if (std::find(grid.begin(), grid.end(), 0.0) == grid.end()) {
    grid.insert(std::upper_bound(grid.begin(), grid.end(), 0.0), 0.0);
  }
  return grid;
}

double checked_variance(const Distribution& dist) {
  const double var = static_cast<double>(detail::summary(dist).central[2]);
  if (!(var > 0.0)) throw DegenerateError("the law is a point mass; proxy variance is undefined");
  return var;
}

// sign of h'(lambda), which is sign(lambda K' - 2K) * sign(lambda).
int h_slope_sign(const Distribution& dist, double lambda) {
  const double r = stationarity_residual(dist, lambda);
  const int s = (r > 0.0) - (r < 0.0);
  return lambda > 0.0 ? s : -s;
}

// Bisects h' = 0 in a small window around a golden-section estimate; the
// golden search alone leaves |lambda - lambda*| near sqrt(eps).
double polish_maximizer(const Distribution& dist, double x, long& evals) {
  const double delta = 1e-6 * std::max(1.0, std::abs(x));
  double lo = x - delta;
  double hi = x + delta;
  if (lo <= 0.0 && hi >= 0.0) return x;
  evals += 2;
  if (h_slope_sign(dist, lo) <= 0 || h_slope_sign(dist, hi) >= 0) return x;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++evals;
    if (h_slope_sign(dist, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct DeltaScan {
  std::vector<double> lambdas;
  std::vector<double> k;
  std::size_t zero = 0;
};

struct DeltaMin {
  bool ok = true;
  double value = INFINITY;
  double lambda = 0.0;
};

// d = lambda^2 sigma^2 / 2 - K has the sign of Delta. Rounding in d is
// bounded by a few ulps of its two terms.
double d_tolerance(double quad, double k) { return 64.0 * kEps * (std::abs(quad) + std::abs(k)); }

DeltaMin delta_minimum(const Distribution& dist, const DeltaScan& scan, double sigma_sq, long& evals) {
  DeltaMin out;
  const std::size_t n = scan.lambdas.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = scan.lambdas[i];
    const double quad = 0.5 * l * l * sigma_sq;
    d[i] = quad - scan.k[i];
    if (i == scan.zero) continue;
    if (d[i] < -d_tolerance(quad, scan.k[i])) out.ok = false;
    if (d[i] < out.value) {
      out.value = d[i];
      out.lambda = l;
    }
  }

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == scan.zero) continue;
    const bool left = i == 0 || d[i] <= d[i - 1];
    const bool right = i + 1 == n || d[i] <= d[i + 1];
    if (left && right) minima.push_back(i);
  }
  constexpr std::size_t kRefined = 4;
  if (minima.size() > kRefined) {
    std::partial_sort(minima.begin(), minima.begin() + kRefined, minima.end(),
                      [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    minima.resize(kRefined);
  }
  for (std::size_t i : minima) {
    const double a = scan.lambdas[i == 0 ? 0 : i - 1];
    const double b = scan.lambdas[std::min(i + 1, n - 1)];
    auto neg_d = [&](double l) {
      return cgf_centered(dist, l) - 0.5 * l * l * sigma_sq;
    };
    const GoldenResult g = golden_max(neg_d, a, b, 1e-12);
    evals += g.evaluations;
    if (g.x == 0.0) continue;
    const double value = -g.fx;
    const double quad = 0.5 * g.x * g.x * sigma_sq;
    if (value < -d_tolerance(quad, quad - value)) out.ok = false;
    if (value < out.value) {
      out.value = value;
      out.lambda = g.x;
    }
  }
  return out;
}

}  // namespace

void SolverOptions::validate() const {
  if (grid_points < 3) throw PreconditionError("grid_points must be >= 3");
  if (delta_grid_points < 3) throw PreconditionError("delta_grid_points must be >= 3");
  if (!(lambda_tol > 0.0)) throw PreconditionError("lambda_tol must be positive");
  if (!(sigma_rel_tol > 0.0)) throw PreconditionError("sigma_rel_tol must be positive");
  if (!(bracket_margin > 0.0)) throw PreconditionError("bracket_margin must be positive");
  if (max_bisection_iters < 1) throw PreconditionError("max_bisection_iters must be positive");
}

std::string_view to_string(Method m) { return m == Method::HMAX ? "HMAX" : "DELTA"; }

std::pair<double, double> bracket_bound(const Distribution& dist, double bracket_margin) {
  const double var = checked_variance(dist);
  const double lam = bracket_margin * 2.0 * detail::summary(dist).radius / var;
  return {-lam, lam};
}

double stationarity_residual(const Distribution& dist, double lambda) {
  if (lambda == 0.0) return 0.0;
  const CgfPoint c = cgf_point(dist, lambda);
  return lambda * c.derivative - 2.0 * c.value;
}

SolveResult solve_hmax(const Distribution& dist, const SolverOptions& opts) {
  opts.validate();
  SolveResult res;
  res.method = Method::HMAX;
  res.bracket = bracket_bound(dist, opts.bracket_margin);

  const std::vector<double> grid = uniform_grid(res.bracket.first, res.bracket.second, opts.grid_points);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = h_eval(dist, grid[i]);
  res.evaluations = static_cast<long>(grid.size());

  const std::size_t best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  const bool left_lower = best == 0 || values[best - 1] < values[best];
  const bool right_lower = best + 1 == values.size() || values[best + 1] < values[best];
  if (grid[best] == 0.0 && left_lower && right_lower) {
    res.sigma_opt_sq = values[best];
    res.lambda_star = 0.0;
    res.stationarity_residual = 0.0;
    return res;
  }

  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  const GoldenResult g = golden_max([&](double l) { return h_eval(dist, l); }, a, b, opts.lambda_tol);
  res.evaluations += g.evaluations;

  double lambda = g.fx >= values[best] ? g.x : grid[best];
  if (lambda != 0.0) lambda = polish_maximizer(dist, lambda, res.evaluations);
  if (lambda < 0.0 && detail::summary(dist).symmetric) lambda = -lambda;

  res.lambda_star = lambda;
  res.sigma_opt_sq = h_eval(dist, lambda);
  res.stationarity_residual = stationarity_residual(dist, lambda);
  res.evaluations += 2;
  return res;
}

SolveResult solve_delta(const Distribution& dist, const SolverOptions& opts) {
  opts.validate();
  SolveResult res;
  res.method = Method::DELTA;
  res.bracket = bracket_bound(dist, opts.bracket_margin);
  const double var = checked_variance(dist);
  const auto& s = detail::summary(dist);

  DeltaScan scan;
  scan.lambdas = uniform_grid(res.bracket.first, res.bracket.second, opts.delta_grid_points);
  scan.k.resize(scan.lambdas.size());
  for (std::size_t i = 0; i < scan.lambdas.size(); ++i) {
    scan.k[i] = cgf_centered(dist, scan.lambdas[i]);
    if (scan.lambdas[i] == 0.0) scan.zero = i;
  }
  res.evaluations = static_cast<long>(scan.lambdas.size());

  DeltaMin at_lo = delta_minimum(dist, scan, var, res.evaluations);
  if (at_lo.ok) {
    res.sigma_opt_sq = var;
    res.lambda_star = 0.0;
    res.stationarity_residual = 0.0;
    return res;
  }

  double lo = var;
  const double length = s.hi - s.lo;
  double hi = 0.25 * length * length;
  if (!delta_minimum(dist, scan, hi, res.evaluations).ok) {
    throw ConvergenceError("Delta predicate fails at the upper endpoint (support length)^2/4");
  }

  double lambda = at_lo.lambda;
  int iters = 0;
  while (hi - lo > opts.sigma_rel_tol * var) {
    if (++iters > opts.max_bisection_iters) {
      throw ConvergenceError("Delta bisection did not converge within " + std::to_string(opts.max_bisection_iters) +
                             " iterations (bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
    const double mid = 0.5 * (lo + hi);
    const DeltaMin m = delta_minimum(dist, scan, mid, res.evaluations);
    if (m.ok) {
      hi = mid;
    } else {
      lo = mid;
      lambda = m.lambda;
    }
  }
  if (lambda < 0.0 && s.symmetric) lambda = -lambda;
  res.sigma_opt_sq = 0.5 * (lo + hi);
  res.lambda_star = lambda;
  res.stationarity_residual = stationarity_residual(dist, lambda);
  return res;
}

}  // namespace proxyvar
