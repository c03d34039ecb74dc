#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxyvar/distribution.hpp"
#include "proxyvar/strictness.hpp"

namespace proxyvar {

struct BernoulliProxy {
  double sigma_sq;
  double lambda0;  // maximizer of h
};

// sigma^2 = (1/2 - mu) / ln(1/mu - 1), lambda0 = 2 ln((1-mu)/mu);
// (1/4, 0) when |mu - 1/2| <= 1e-8.
BernoulliProxy bernoulli_proxy(double mu);

double binomial_proxy(int n, double mu);

// sum (b_i - a_i)^2 / 12
double uniform_sum_proxy(const std::vector<std::pair<double, double>>& intervals);

// (b - a)(2a + b)(2b + a) / 270
double triangular_kappa3(double a, double b);

// 1 / (beta - (beta - 1) 2^{1/beta}); throws ParameterError when the
// denominator is not positive.
double kumaraswamy_zero_skew_alpha(double beta);

// Root in alpha of the third central moment of Kumaraswamy(alpha, beta).
double kumaraswamy_exact_zero_skew_alpha(double beta);

// Atoms -1, 0, 1 with weights eta/2, 1-eta, eta/2; eta = 1 gives Rademacher.
Distribution symmetric_three_atom(double eta);

// eta Beta(a, a) + (1 - eta) Beta(b, b)
Distribution symmetric_beta_mixture(double eta, double a, double b);

// Atoms -2, -1/2, 5/4 with weights 1/13, 4/7, 32/91.
Distribution asymmetric_strict_mixture();

struct NamedCase {
  std::string name;
  Distribution dist;
  Verdict expected_verdict;
  std::optional<double> expected_sigma;
  std::string source;
};

std::vector<NamedCase> counterexample_catalog();

}  // namespace proxyvar
