#pragma once

#include <span>
#include <vector>

namespace proxyvar::special {

// ln Gamma(x) - ln Gamma(x + s) for x > 0, s > 0, stable for huge x.
long double log_gamma_ratio(long double x, long double s);

// ln B(a, b)
long double log_beta(long double a, long double b);

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

// Row k of Pascal's triangle: C(k, 0..k).
std::vector<long double> binomial_row(int k);

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule, computed once per n and cached.
const GaussLegendre& gauss_legendre(int n);

// Kummer's confluent hypergeometric series M(a, b, z) = 1F1(a; b; z) for
// z >= 0, returned in log form along with d/dz log M. All terms are positive,
// so there is no cancellation. The sum stops when a term drops below
// 1e-17 of the partial sum; more than max_terms terms throws EvaluationError.
struct LogKummer {
  double log_value;
  double dlog;  // M'(z) / M(z)
  int terms;
};
LogKummer log_kummer_m(double a, double b, double z, int max_terms = 10000);

}  // namespace proxyvar::special
