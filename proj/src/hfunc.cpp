#include "proxyvar/hfunc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "internal.hpp"
#include "proxyvar/cgf.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/serialize.hpp"

namespace proxyvar {

double series_switch(const Distribution& dist) {
  return 1e-4 * std::max(1.0, 1.0 / detail::summary(dist).radius);
}

double h_series(const Distribution& dist, double lambda) {
  const auto& c = detail::summary(dist).central;
  const long double var = c[2];
  const long double k3 = c[3];
  const long double k4 = c[4] - 3.0L * var * var;
  const long double l = lambda;
  return static_cast<double>(var + k3 * l / 3.0L + k4 * l * l / 12.0L);
}

double h_direct(const Distribution& dist, double lambda) {
  if (lambda == 0.0) throw PreconditionError("h_direct is undefined at lambda = 0");
  return 2.0 * cgf_centered(dist, lambda) / (lambda * lambda);
}

double h_eval(const Distribution& dist, double lambda) {
  if (!std::isfinite(lambda)) throw PreconditionError("h evaluated at a non-finite lambda");
  if (std::abs(lambda) < series_switch(dist)) return h_series(dist, lambda);
  return h_direct(dist, lambda);
}

double ode_rhs_second(const Distribution& dist, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw PreconditionError("ode_rhs_second needs a finite nonzero lambda");
  }
  const double var = static_cast<double>(detail::summary(dist).central[2]);
  auto g = [&](double x) { return x == 0.0 ? var : cgf_derivative(dist, x) / x; };
  const double scale = std::max(1.0, std::abs(lambda));
  auto diff = [&](double step) { return (g(lambda + step) - g(lambda - step)) / (2.0 * step); };
  const double d1 = diff(1e-4 * scale);
  const double d2 = diff(5e-5 * scale);
  const double floor = 1e-8 * std::abs(g(lambda)) / scale;
  if (std::abs(d1 - d2) > 1e-4 * std::max(std::abs(d1), std::abs(d2)) + floor) {
    throw EvaluationError("finite-difference estimates of (K'/lambda)' disagree at lambda = " +
                          std::to_string(lambda) + ": " + std::to_string(d1) + " vs " + std::to_string(d2));
  }
  const double richardson = (4.0 * d2 - d1) / 3.0;
  return 2.0 / lambda * richardson;
}

HCurve h_curve(const Distribution& dist, double lambda_min, double lambda_max, int n_points) {
  if (!(lambda_min < lambda_max) || !std::isfinite(lambda_min) || !std::isfinite(lambda_max)) {
    throw PreconditionError("h_curve needs finite lambda_min < lambda_max");
  }
  if (n_points < 2) throw PreconditionError("h_curve needs at least 2 points");
  HCurve curve;
  curve.series_switch = series_switch(dist);
  curve.dist_fingerprint = fingerprint(dist);
  curve.lambdas.reserve(n_points + 1);
  const double span = n_points - 1;
  for (int i = 0; i < n_points; ++i) {
    curve.lambdas.push_back((lambda_min * (n_points - 1 - i) + lambda_max * i) / span);
  }
  if (lambda_min < 0.0 && lambda_max > 0.0 &&
      std::find(curve.lambdas.begin(), curve.lambdas.end(), 0.0) == curve.lambdas.end()) {
    curve.lambdas.insert(std::upper_bound(curve.lambdas.begin(), curve.lambdas.end(), 0.0), 0.0);
  }
  curve.values.reserve(curve.lambdas.size());
  for (double l : curve.lambdas) curve.values.push_back(h_eval(dist, l));
  return curve;
}

void write_csv(const HCurve& curve, std::ostream& out) {
  out << "lambda,h\n";
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    out << format_double(curve.lambdas[i]) << ',' << format_double(curve.values[i]) << '\n';
  }
}

}  // namespace proxyvar
