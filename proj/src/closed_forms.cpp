#include "proxyvar/closed_forms.hpp"

#include <cmath>
#include <string>

#include "proxyvar/errors.hpp"
#include "proxyvar/moments.hpp"

namespace proxyvar {

namespace {

long double kumaraswamy_kappa3(double alpha, double beta) {
  const long double m1 = kumaraswamy_raw_moment(alpha, beta, 1);
  const long double m2 = kumaraswamy_raw_moment(alpha, beta, 2);
  const long double m3 = kumaraswamy_raw_moment(alpha, beta, 3);
  return m3 - 3.0L * m1 * m2 + 2.0L * m1 * m1 * m1;
}

}  // namespace

BernoulliProxy bernoulli_proxy(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw ParameterError("bernoulli_proxy: mu must lie in (0, 1)");
  if (std::abs(mu - 0.5) <= 1e-8) return {0.25, 0.0};
  const double log_odds = std::log1p((1.0 - 2.0 * mu) / mu);
  return {(0.5 - mu) / log_odds, 2.0 * log_odds};
}

double binomial_proxy(int n, double mu) {
  if (n < 1) throw ParameterError("binomial_proxy: n must be a positive integer");
  return n * bernoulli_proxy(mu).sigma_sq;
}

double uniform_sum_proxy(const std::vector<std::pair<double, double>>& intervals) {
  if (intervals.empty()) throw ParameterError("uniform_sum_proxy: empty interval list");
  double total = 0.0;
  for (const auto& [a, b] : intervals) {
    if (!(a < b)) throw ParameterError("uniform_sum_proxy: each interval needs a < b");
    total += (b - a) * (b - a) / 12.0;
  }
  return total;
}

double triangular_kappa3(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("triangular_kappa3: a and b must be positive");
  return (b - a) * (2.0 * a + b) * (2.0 * b + a) / 270.0;
}

double kumaraswamy_zero_skew_alpha(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("kumaraswamy_zero_skew_alpha: beta must be positive");
  const double denom = beta - (beta - 1.0) * std::exp2(1.0 / beta);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw ParameterError("kumaraswamy_zero_skew_alpha: beta - (beta - 1) 2^(1/beta) must be positive (beta = " +
                         std::to_string(beta) + ")");
  }
  return 1.0 / denom;
}

double kumaraswamy_exact_zero_skew_alpha(double beta) {
  if (!(beta > 0.0)) throw ParameterError("kumaraswamy_exact_zero_skew_alpha: beta must be positive");
  constexpr int kScan = 600;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  double prev_alpha = 1e-3;
  long double prev = kumaraswamy_kappa3(prev_alpha, beta);
  for (int i = 1; i <= kScan && !found; ++i) {
    const double alpha = 1e-3 * std::pow(1e6, static_cast<double>(i) / kScan);
    const long double cur = kumaraswamy_kappa3(alpha, beta);
    if (cur == 0.0L) return alpha;
    if ((prev < 0.0L) != (cur < 0.0L)) {
      lo = prev_alpha;
      hi = alpha;
      found = true;
    }
    prev_alpha = alpha;
    prev = cur;
  }
  if (!found) throw ParameterError("no zero-skewness alpha found for beta = " + std::to_string(beta));
  const bool lo_negative = kumaraswamy_kappa3(lo, beta) < 0.0L;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((kumaraswamy_kappa3(mid, beta) < 0.0L) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Distribution symmetric_three_atom(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("symmetric_three_atom: eta must lie in (0, 1]");
  if (eta == 1.0) return Distribution::rademacher();
  return Distribution::dirac_mixture({{-1.0, eta / 2.0}, {0.0, 1.0 - eta}, {1.0, eta / 2.0}});
}

Distribution symmetric_beta_mixture(double eta, double a, double b) {
  return Distribution::mixture({{eta, Distribution::beta(a, a)}, {1.0 - eta, Distribution::beta(b, b)}});
}

Distribution asymmetric_strict_mixture() {
  return Distribution::dirac_mixture({{-2.0, 1.0 / 13.0}, {-0.5, 4.0 / 7.0}, {1.25, 32.0 / 91.0}});
}

std::vector<NamedCase> counterexample_catalog() {
  std::vector<NamedCase> cases;
  cases.push_back({"sym-not-strict", symmetric_three_atom(0.25), Verdict::NotStrict, std::nullopt,
                   "symmetric atoms at -1, 0, 1 with eta = 0.25; excess kurtosis eta(1 - 3 eta) > 0"});
  cases.push_back({"sym-strict", symmetric_three_atom(0.4), Verdict::Strict, std::nullopt,
                   "symmetric atoms at -1, 0, 1 with eta = 0.4; h peaks at zero"});
  cases.push_back({"beta-mixture", symmetric_beta_mixture(0.1, 1.5, 9.0), Verdict::NotStrict, std::nullopt,
                   "0.1 Beta(1.5, 1.5) + 0.9 Beta(9, 9); symmetric with positive excess kurtosis"});
  cases.push_back({"asym-strict", asymmetric_strict_mixture(), Verdict::Strict, 1.0,
                   "atoms -2, -1/2, 5/4 with weights 1/13, 4/7, 32/91; asymmetric yet strict"});
  cases.push_back({"rademacher", Distribution::rademacher(), Verdict::Strict, 1.0, "uniform on {-1, +1}"});
  cases.push_back({"uniform-0-1", Distribution::uniform(0.0, 1.0), Verdict::Strict, 1.0 / 12.0,
                   "proxy variance equals the variance (b - a)^2 / 12"});
  cases.push_back({"bernoulli-0.1", Distribution::bernoulli(0.1), Verdict::NotStrict,
                   bernoulli_proxy(0.1).sigma_sq, "closed form (1/2 - mu) / ln(1/mu - 1)"});
  cases.push_back({"binomial-10-0.1", Distribution::binomial(10, 0.1), Verdict::NotStrict,
                   binomial_proxy(10, 0.1), "n times the Bernoulli proxy variance"});
  cases.push_back({"uniform-sum", Distribution::independent_sum({Distribution::uniform(0.0, 1.0), Distribution::uniform(0.0, 2.0)}),
                   Verdict::Strict, uniform_sum_proxy({{0.0, 1.0}, {0.0, 2.0}}),
                   "independent uniforms on (0,1) and (0,2); h is additive"});
  cases.push_back({"triangular-1-1", Distribution::triangular(1.0, 1.0), Verdict::Strict, 1.0 / 6.0,
                   "symmetric triangular on (-1, 1)"});
  cases.push_back({"kumaraswamy-zero-skew-2", Distribution::kumaraswamy(kumaraswamy_zero_skew_alpha(2.0), 2.0),
                   Verdict::NotStrict, std::nullopt,
                   "alpha = 1/(beta - (beta - 1) 2^(1/beta)) at beta = 2; maximizer of h off zero"});
  return cases;
}

}  // namespace proxyvar
