#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proxyvar/distribution.hpp"
#include "proxyvar/solver.hpp"

namespace proxyvar {

enum class Verdict { Strict, NotStrict, Inconclusive };
std::string_view to_string(Verdict v);

struct StrictnessVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
  double kurtosis = 0.0;
  double lambda_star = 0.0;
  double sigma_opt_sq = 0.0;
  double sigma_gap = 0.0;  // sigma_opt_sq - Var
  std::optional<int> sufficient_condition_depth;
  bool certificate = false;
  std::vector<std::string> reasons;
};

struct NecessaryConditions {
  bool kappa3_ok;  // |kappa3| <= tol B^3
  bool kappa4_ok;  // kappa4 <= tol B^4
  double kappa3;
  double kappa4;
};

NecessaryConditions necessary_conditions(const Distribution& dist, double tol = 1e-10);

struct MomentCondition {
  int holds_up_to;                  // largest j with every j' <= j verified
  std::optional<int> violated_at;   // first failing j
  bool certificate;                 // the family's full tail is known to hold
};

// E[(X-mu)^{2j}]/(2j)! <= Var^j/(2^j j!) for j = 2..j_max, in log space.
// Requires a symmetric law and j_max >= 2.
MomentCondition sufficient_moment_condition(const Distribution& dist, int j_max = 50);

// Symmetric laws whose moment inequality is known to hold for every j:
// two-point symmetric laws, symmetric triangular and symmetric beta (uniform
// included), possibly under affine maps.
bool has_moment_certificate(const Distribution& dist);

StrictnessVerdict classify(const Distribution& dist, const SolverOptions& opts = {});

// Tolerance ladder used by classify.
double gap_tolerance(double variance);
double lambda_tolerance(std::pair<double, double> bracket);

}  // namespace proxyvar
