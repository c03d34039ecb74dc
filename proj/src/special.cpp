#include "proxyvar/special.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "proxyvar/errors.hpp"

namespace proxyvar::special {

namespace {

// Tail of Stirling's series for ln Gamma beyond (z - 1/2) ln z - z + ln(2 pi)/2.
long double stirling_tail(long double z) {
  const long double z2 = z * z;
  return 1.0L / (12.0L * z) - 1.0L / (360.0L * z * z2) + 1.0L / (1260.0L * z * z2 * z2);
}

}  // namespace

long double log_gamma_ratio(long double x, long double s) {
  if (x < 1000.0L) {
    return std::lgamma(x) - std::lgamma(x + s);
  }
  // Expand (x + s - 1/2) ln(x + s) as (x + s - 1/2) (ln x + log1p(s/x)) so the
  // large ln x pieces cancel analytically.
  return -s * std::log(x) - (x + s - 0.5L) * std::log1p(s / x) + s + stirling_tail(x) -
         stirling_tail(x + s);
}

long double log_beta(long double a, long double b) {
  if (a < b) std::swap(a, b);
  return std::lgamma(b) + log_gamma_ratio(a, b);
}

double log_add_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

std::vector<long double> binomial_row(int k) {
  std::vector<long double> row(static_cast<std::size_t>(k) + 1, 0.0L);
  row[0] = 1.0L;
  for (int i = 1; i <= k; ++i) {
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  }
  return row;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (slot) return *slot;

  auto rule = std::make_unique<GaussLegendre>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n in extended precision.
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule->nodes[i] = static_cast<double>(-x);
    rule->nodes[n - 1 - i] = static_cast<double>(x);
    rule->weights[i] = static_cast<double>(w);
    rule->weights[n - 1 - i] = static_cast<double>(w);
  }
  slot = std::move(rule);
  return *slot;
}

LogKummer log_kummer_m(double a, double b, double z, int max_terms) {
  if (z < 0.0) throw PreconditionError("log_kummer_m: z must be nonnegative");
  if (z == 0.0) return {0.0, a / b, 1};

  constexpr double kRescale = 1e-280;
  const double log_rescale = std::log(kRescale);
  double term = 1.0;
  double sum = 1.0;
  double dsum = 0.0;  // sum of n * t_n, divided by z at the end
  double log_offset = 0.0;
  for (int n = 1; n <= max_terms; ++n) {
    const double prev = term;
    term *= z * (a + n - 1) / ((b + n - 1) * n);
    sum += term;
    dsum += n * term;
    if (sum > 1e280) {
      term *= kRescale;
      sum *= kRescale;
      dsum *= kRescale;
      log_offset -= log_rescale;
    }
    if (term < prev && term < 1e-17 * sum) {
      return {std::log(sum) + log_offset, dsum / (z * sum), n + 1};
    }
  }
  throw EvaluationError("Kummer series did not converge within " + std::to_string(max_terms) +
                        " terms (z = " + std::to_string(z) + ")");
}

}  // namespace proxyvar::special
