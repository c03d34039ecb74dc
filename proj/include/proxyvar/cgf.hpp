#pragma once

#include "proxyvar/distribution.hpp"

namespace proxyvar {

struct CgfPoint {
  double value;       // K(lambda)
  double derivative;  // K'(lambda)
};

// Centered CGF K(lambda) = ln E[exp(lambda (X - mu))] together with K'.
// For |lambda| * B <= 1 both come from the cached central-moment series;
// otherwise from the per-family closed form. Throws PreconditionError for a
// non-finite lambda and EvaluationError when a series fails to converge.
CgfPoint cgf_point(const Distribution& dist, double lambda);

double cgf_centered(const Distribution& dist, double lambda);
double cgf_derivative(const Distribution& dist, double lambda);

// E[exp(lambda (X - mu))]
double mgf_centered(const Distribution& dist, double lambda);

}  // namespace proxyvar
