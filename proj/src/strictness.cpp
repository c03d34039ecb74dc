#include "proxyvar/strictness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "internal.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/moments.hpp"

namespace proxyvar {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Strict:
      return "Strict";
    case Verdict::NotStrict:
      return "NotStrict";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

double gap_tolerance(double variance) { return std::max(1e-9, 1e-8 * variance); }

double lambda_tolerance(std::pair<double, double> bracket) { return 1e-6 * (bracket.second - bracket.first); }

NecessaryConditions necessary_conditions(const Distribution& dist, double tol) {
  const auto& s = detail::summary(dist);
  const double b = s.radius;
  const double k3 = static_cast<double>(s.central[3]);
  const double k4 = static_cast<double>(s.central[4] - 3.0L * s.central[2] * s.central[2]);
  return {std::abs(k3) <= tol * b * b * b, k4 <= tol * b * b * b * b, k3, k4};
}

bool has_moment_certificate(const Distribution& dist) {
  const Distribution* d = &dist;
  while (const auto* a = std::get_if<family::Affine>(&d->family())) d = &a->inner;
  const Family& f = d->family();
  if (const auto* m = std::get_if<family::DiracMixture>(&f)) {
    return m->atoms.size() == 2 && m->atoms[0].weight == m->atoms[1].weight &&
           m->atoms[0].location != m->atoms[1].location;
  }
  if (const auto* b = std::get_if<family::Bernoulli>(&f)) return b->mu == 0.5;
  if (const auto* b = std::get_if<family::Binomial>(&f)) return b->n == 1 && b->mu == 0.5;
  if (const auto* t = std::get_if<family::Triangular>(&f)) return t->a == t->b;
  if (const auto* b = std::get_if<family::Beta>(&f)) return b->alpha == b->beta;
  if (std::holds_alternative<family::Uniform>(f)) return true;
  if (const auto* k = std::get_if<family::Kumaraswamy>(&f)) return k->alpha == 1.0 && k->beta == 1.0;
  return false;
}

MomentCondition sufficient_moment_condition(const Distribution& dist, int j_max) {
  if (!is_symmetric(dist)) throw PreconditionError("sufficient_moment_condition requires a symmetric law");
  if (j_max < 2) throw PreconditionError("sufficient_moment_condition requires j_max >= 2");
  const auto& s = detail::summary(dist);
  const std::vector<long double> m = moments_about(dist, s.mean, 2 * j_max);
  const long double log_var = std::log(m[2]);
  MomentCondition out{1, std::nullopt, false};
  for (int j = 2; j <= j_max; ++j) {
    const long double lhs = std::log(m[2 * j]) - std::lgamma(2.0L * j + 1.0L);
    const long double rhs = j * log_var - j * std::log(2.0L) - std::lgamma(j + 1.0L);
    if (lhs > rhs + 1e-12L * std::abs(rhs)) {
      out.violated_at = j;
      break;
    }
    out.holds_up_to = j;
  }
  out.certificate = !out.violated_at && has_moment_certificate(dist);
  return out;
}

StrictnessVerdict classify(const Distribution& dist, const SolverOptions& opts) {
  StrictnessVerdict v;
  const auto& s = detail::summary(dist);
  const double var = static_cast<double>(s.central[2]);
  const NecessaryConditions nec = necessary_conditions(dist);
  v.kappa3 = nec.kappa3;
  v.kappa4 = nec.kappa4;
  v.kurtosis = static_cast<double>(s.central[4] / (s.central[2] * s.central[2]));

  const SolveResult sol = solve_hmax(dist, opts);
  v.lambda_star = sol.lambda_star;
  v.sigma_opt_sq = sol.sigma_opt_sq;
  v.sigma_gap = sol.sigma_opt_sq - var;
  const double gap_tol = gap_tolerance(var);
  const double lam_tol = lambda_tolerance(sol.bracket);

  if (!nec.kappa3_ok) v.reasons.push_back(fmt("kappa3 nonzero (%.6g)", nec.kappa3));
  if (!nec.kappa4_ok) v.reasons.push_back(fmt("kappa4 positive (%.6g)", nec.kappa4));
  const bool gap_exceeded = v.sigma_gap > gap_tol;
  if (gap_exceeded) {
    v.reasons.push_back(fmt("sigma_opt^2 exceeds Var by %.6g", v.sigma_gap) +
                        fmt(", maximum of h at lambda = %.10g", v.lambda_star));
  }

  if (!nec.kappa3_ok || !nec.kappa4_ok || gap_exceeded) {
    v.verdict = Verdict::NotStrict;
  } else if (std::abs(v.lambda_star) <= lam_tol) {
    v.verdict = Verdict::Strict;
    v.reasons.push_back("maximum of h attained at lambda = 0");
  } else {
    v.verdict = Verdict::Inconclusive;
    v.reasons.push_back(fmt("sigma gap %.6g within tolerance", v.sigma_gap) +
                        fmt(" but maximizer at lambda = %.10g", v.lambda_star));
  }

  if (s.symmetric) {
    const MomentCondition mc = sufficient_moment_condition(dist);
    v.sufficient_condition_depth = mc.holds_up_to;
    v.certificate = mc.certificate;
    std::string note = "moment condition holds up to j = " + std::to_string(mc.holds_up_to);
    if (mc.violated_at) note += ", violated at j = " + std::to_string(*mc.violated_at);
    note += mc.certificate ? " (certificate)" : " (evidence)";
    v.reasons.push_back(note);
  }
  return v;
}

}  // namespace proxyvar
