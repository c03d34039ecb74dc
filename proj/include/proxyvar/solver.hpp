#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "proxyvar/distribution.hpp"

namespace proxyvar {

struct SolverOptions {
  int grid_points = 4097;
  double lambda_tol = 1e-12;
  double sigma_rel_tol = 1e-10;
  double bracket_margin = 1.25;
  int delta_grid_points = 8193;
  int max_bisection_iters = 200;
  std::uint64_t seed = 20240611;

  // Throws PreconditionError if a tolerance is not positive or a grid is too small.
  void validate() const;
};

enum class Method { HMAX, DELTA };
std::string_view to_string(Method m);

struct SolveResult {
  double sigma_opt_sq = 0.0;
  double lambda_star = 0.0;
  Method method = Method::HMAX;
  double stationarity_residual = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  long evaluations = 0;
};

// [-L, L] with L = bracket_margin * 2B / Var. Throws DegenerateError for a point mass.
std::pair<double, double> bracket_bound(const Distribution& dist, double bracket_margin = 1.25);

// lambda K'(lambda) - 2 K(lambda)
double stationarity_residual(const Distribution& dist, double lambda);

// Global maximum of h over the bracket: grid scan, golden-section refinement.
SolveResult solve_hmax(const Distribution& dist, const SolverOptions& opts = {});

// Smallest sigma^2 with min_lambda Delta(sigma^2, lambda) >= 0, by bisection
// on [Var, (support length)^2 / 4].
SolveResult solve_delta(const Distribution& dist, const SolverOptions& opts = {});

}  // namespace proxyvar
