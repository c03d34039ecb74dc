#include "proxyvar/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "internal.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/moments.hpp"
#include "proxyvar/special.hpp"

namespace proxyvar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// log sum_i exp(a_i) and the softmax-weighted mean of y_i.
struct LseAccumulator {
  std::vector<double> a;
  std::vector<double> y;

  void add(double log_weight, double value) {
    a.push_back(log_weight);
    y.push_back(value);
  }

  CgfPoint finish() const {
    const double m = *std::max_element(a.begin(), a.end());
    long double s = 0.0L;
    long double sy = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const long double e = std::exp(static_cast<long double>(a[i]) - m);
      s += e;
      sy += e * y[i];
    }
    return {static_cast<double>(m + std::log(s)), static_cast<double>(sy / s)};
  }
};

CgfPoint near_zero_series(const detail::Summary& s, double lambda) {
  // K = log1p(S), S = sum_{n>=2} lambda^n m_n / n!, S' = sum lambda^(n-1) m_n / (n-1)!.
  const long double l = lambda;
  long double p = l;  // lambda^(n-1) / (n-1)!
  long double sum = 0.0L;
  long double dsum = 0.0L;
  for (int n = 2; n <= detail::kCachedOrder; ++n) {
    dsum += p * s.central[n];
    p *= l / n;
    sum += p * s.central[n];
  }
  return {static_cast<double>(std::log1p(sum)), static_cast<double>(dsum / (1.0L + sum))};
}

CgfPoint bernoulli_cgf(double mu, double lambda) {
  LseAccumulator acc;
  acc.add(std::log(mu) + lambda * (1.0 - mu), 1.0 - mu);
  acc.add(std::log1p(-mu) - lambda * mu, -mu);
  return acc.finish();
}

CgfPoint uniform_cgf(double length, double lambda) {
  // X - mid has MGF sinh(x)/x with x = lambda L/2.
  const double half = 0.5 * length;
  const double x = std::abs(lambda * half);
  const double k = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
  const double coth = 1.0 / std::tanh(x);
  const double dk = half * (coth - 1.0 / x);
  return {k, lambda < 0.0 ? -dk : dk};
}

// Triangular on (-a, b), lambda > 0. The MGF is
// 2 (a expm1(lambda b) + b expm1(-lambda a)) / (a b (a+b) lambda^2);
// the bracket is factored as e^{lambda b} times a well-scaled remainder.
CgfPoint triangular_cgf_positive(double a, double b, double lambda) {
  const double t = lambda * b;
  const double s = lambda * a;
  const double inner = -a * std::expm1(-t) + b * std::exp(-t) * std::expm1(-s);
  const double log_e = t + std::log(inner) + std::log(2.0 / (a * b * (a + b))) - 2.0 * std::log(lambda);
  const double dlog_e = a * b * (-std::expm1(-t - s)) / inner - 2.0 / lambda;
  const double mu = (b - a) / 3.0;
  return {log_e - lambda * mu, dlog_e - mu};
}

CgfPoint beta_cgf(double alpha, double beta, double lambda) {
  const double mu = alpha / (alpha + beta);
  double log_e = 0.0;
  double dlog_e = 0.0;
  if (lambda >= 0.0) {
    const auto m = special::log_kummer_m(alpha, alpha + beta, lambda);
    log_e = m.log_value;
    dlog_e = m.dlog;
  } else {
    // E[e^{lambda X}] = e^lambda E[e^{-lambda (1-X)}] with 1-X ~ Beta(beta, alpha).
    const auto m = special::log_kummer_m(beta, alpha + beta, -lambda);
    log_e = lambda + m.log_value;
    dlog_e = 1.0 - m.dlog;
  }
  return {log_e - lambda * mu, dlog_e - mu};
}

CgfPoint kumaraswamy_series(double alpha, double beta, double mu, double lambda) {
  // sum_n lambda^n E[X^n] / n! and sum_n lambda^n E[X^(n+1)] / n!, all terms positive.
  constexpr int kMaxTerms = 10000;
  const long double log_lambda = std::log(static_cast<long double>(lambda));
  const long double log_norm = std::log(static_cast<long double>(beta)) + std::lgamma(static_cast<long double>(beta));
  auto log_moment = [&](int n) -> long double {
    if (n == 0) return 0.0L;
    return log_norm + special::log_gamma_ratio(1.0L + static_cast<long double>(n) / alpha, beta);
  };
  std::vector<long double> e_terms;
  std::vector<long double> d_terms;
  long double e_max = -INFINITY;
  long double d_max = -INFINITY;
  long double next_moment = log_moment(0);
  for (int n = 0;; ++n) {
    if (n >= kMaxTerms) {
      throw EvaluationError("Kumaraswamy MGF series did not converge within " + std::to_string(kMaxTerms) +
                            " terms at lambda = " + std::to_string(lambda));
    }
    const long double base = n * log_lambda - std::lgamma(n + 1.0L);
    const long double moment_n = next_moment;
    next_moment = log_moment(n + 1);
    const long double te = base + moment_n;
    const long double td = base + next_moment;
    e_terms.push_back(te);
    d_terms.push_back(td);
    e_max = std::max(e_max, te);
    d_max = std::max(d_max, td);
    if (n > lambda && te < e_max - 40.0L && td < d_max - 40.0L) break;
  }
  long double se = 0.0L;
  long double sd = 0.0L;
  for (std::size_t i = 0; i < e_terms.size(); ++i) {
    se += std::exp(e_terms[i] - e_max);
    sd += std::exp(d_terms[i] - d_max);
  }
  const long double log_e = e_max + std::log(se);
  const long double log_d = d_max + std::log(sd);
  return {static_cast<double>(log_e - lambda * static_cast<long double>(mu)),
          static_cast<double>(std::exp(log_d - log_e) - mu)};
}

CgfPoint rule_cgf(const detail::QuantileRule& rule, double mu, double lambda) {
  LseAccumulator acc;
  acc.a.reserve(rule.x.size());
  acc.y.reserve(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double y = rule.x[i] - mu;
    acc.add(std::log(rule.w[i]) + lambda * y, y);
  }
  return acc.finish();
}

CgfPoint direct_cgf(const Distribution& dist, double lambda) {
  const auto& s = detail::summary(dist);
  return std::visit(
      Overloaded{
          [&](const family::Bernoulli& b) { return bernoulli_cgf(b.mu, lambda); },
          [&](const family::Binomial& b) {
            const CgfPoint one = bernoulli_cgf(b.mu, lambda);
            return CgfPoint{b.n * one.value, b.n * one.derivative};
          },
          [&](const family::Uniform& u) { return uniform_cgf(u.b - u.a, lambda); },
          [&](const family::Triangular& t) {
            if (lambda > 0.0) return triangular_cgf_positive(t.a, t.b, lambda);
            // -X is triangular on (-b, a).
            const CgfPoint r = triangular_cgf_positive(t.b, t.a, -lambda);
            return CgfPoint{r.value, -r.derivative};
          },
          [&](const family::Beta& b) { return beta_cgf(b.alpha, b.beta, lambda); },
          [&](const family::Kumaraswamy& k) {
            if (k.alpha == 1.0) return beta_cgf(1.0, k.beta, lambda);
            if (k.beta == 1.0) return beta_cgf(k.alpha, 1.0, lambda);
            if (lambda > 0.0) return kumaraswamy_series(k.alpha, k.beta, s.mean, lambda);
            return rule_cgf(*dist.node().rule, s.mean, lambda);
          },
          [&](const family::DiracMixture& d) {
            LseAccumulator acc;
            for (const auto& atom : d.atoms) {
              const double y = atom.location - s.mean;
              acc.add(std::log(atom.weight) + lambda * y, y);
            }
            return acc.finish();
          },
          [&](const family::Mixture& m) {
            LseAccumulator acc;
            for (const auto& comp : m.components) {
              const double shift = detail::summary(comp.dist).mean - s.mean;
              const CgfPoint c = cgf_point(comp.dist, lambda);
              acc.add(std::log(comp.weight) + c.value + lambda * shift, c.derivative + shift);
            }
            return acc.finish();
          },
          [&](const family::Affine& a) {
            const CgfPoint c = cgf_point(a.inner, a.scale * lambda);
            return CgfPoint{c.value, a.scale * c.derivative};
          },
          [&](const family::IndependentSum& sum) {
            CgfPoint total{0.0, 0.0};
            for (const auto& term : sum.terms) {
              const CgfPoint c = cgf_point(term, lambda);
              total.value += c.value;
              total.derivative += c.derivative;
            }
            return total;
          },
      },
      dist.family());
}

}  // namespace

CgfPoint cgf_point(const Distribution& dist, double lambda) {
  if (!std::isfinite(lambda)) throw PreconditionError("CGF evaluated at a non-finite lambda");
  if (lambda == 0.0) return {0.0, 0.0};
  const auto& s = detail::summary(dist);
  if (std::abs(lambda) * s.radius <= 1.0) return near_zero_series(s, lambda);
  return direct_cgf(dist, lambda);
}

double cgf_centered(const Distribution& dist, double lambda) { return cgf_point(dist, lambda).value; }

double cgf_derivative(const Distribution& dist, double lambda) { return cgf_point(dist, lambda).derivative; }

double mgf_centered(const Distribution& dist, double lambda) { return std::exp(cgf_centered(dist, lambda)); }

}  // namespace proxyvar
