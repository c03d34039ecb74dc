#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "proxyvar/distribution.hpp"

namespace proxyvar {

struct McEstimate {
  double value;
  double std_error;  // sample std / sqrt(n)
  long n_samples;
  std::uint64_t seed;
};

// Draws are split into fixed chunks of 65536, each with its own mt19937_64
// seeded by SplitMix64(seed, chunk index), so results depend only on
// (seed, n). Requires n >= 1000.
McEstimate mc_mgf(const Distribution& dist, double lambda, long n, std::uint64_t seed);

double sample(const Distribution& dist, std::mt19937_64& rng);

// E[(X - mu)^k] by adaptive Gauss-Legendre on the density (exact sums for
// atoms), with mu itself obtained by quadrature.
double quad_moment(const Distribution& dist, int k);
double quad_mean(const Distribution& dist);

struct InequalityCheck {
  bool ok;
  double worst_lambda;
  double worst_delta;  // Delta(sigma^2, lambda) * exp(-lambda^2 sigma^2 / 2)
};

// Checks Delta(sigma^2, lambda) >= 0 on the grid, normalized by
// exp(lambda^2 sigma^2 / 2); ok iff every normalized value is >= -1e-10.
InequalityCheck verify_inequality(const Distribution& dist, double sigma_sq, const std::vector<double>& lambda_grid);

}  // namespace proxyvar
