#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "proxyvar/distribution.hpp"

namespace proxyvar {

struct HCurve {
  std::vector<double> lambdas;
  std::vector<double> values;
  std::string dist_fingerprint;
  double series_switch = 0.0;
};

// |lambda| below this uses h_series: 1e-4 * max(1, 1/B).
double series_switch(const Distribution& dist);

// h(lambda) = 2 K(lambda) / lambda^2, extended by Var at 0.
double h_eval(const Distribution& dist, double lambda);

// Var + kappa3 lambda / 3 + kappa4 lambda^2 / 12
double h_series(const Distribution& dist, double lambda);

// 2 K(lambda) / lambda^2 without the series switch. lambda != 0.
double h_direct(const Distribution& dist, double lambda);

// (2/lambda) d/dlambda [K'(lambda)/lambda], by central differences at two
// steps. Throws EvaluationError when the two estimates disagree.
double ode_rhs_second(const Distribution& dist, double lambda);

// Uniform grid on [lambda_min, lambda_max]; 0 is inserted when bracketed.
HCurve h_curve(const Distribution& dist, double lambda_min, double lambda_max, int n_points);

// "lambda,h" header, one row per point, round-trip precision.
void write_csv(const HCurve& curve, std::ostream& out);

}  // namespace proxyvar
