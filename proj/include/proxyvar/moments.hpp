#pragma once

#include <map>
#include <vector>

#include "proxyvar/distribution.hpp"

namespace proxyvar {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct MomentTable {
  double mean = 0.0;
  double variance = 0.0;
  std::map<int, double> central_moments;  // orders 2..k_max
  double kappa3 = 0.0;
  double kappa4 = 0.0;

  // E[(X-mu)^4] / Var^2; equals 3 + kappa4 / Var^2.
  double kurtosis() const;
};

double mean(const Distribution& dist);
double variance(const Distribution& dist);

// E[(X - mu)^k]. Throws RangeError when the value is not finite.
double central_moment(const Distribution& dist, int k);

// E[(X - center)^k] for k = 0..k_max, accumulated in extended precision.
// Component moments of mixtures are taken directly about the mixture center.
std::vector<long double> moments_about(const Distribution& dist, long double center, int k_max);

// Requires k_max >= 4.
MomentTable moment_table(const Distribution& dist, int k_max = 10);

Interval support(const Distribution& dist);

// B = sup over the support of |x - mu|.
double support_radius(const Distribution& dist);

// Structural test for "X and 2mu - X have the same law".
bool is_symmetric(const Distribution& dist);

// E[X^n] for a Kumaraswamy(alpha, beta) law: beta * B(1 + n/alpha, beta).
long double kumaraswamy_raw_moment(double alpha, double beta, int n);

}  // namespace proxyvar
