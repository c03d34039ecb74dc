#pragma once

#include <memory>
#include <vector>

#include "proxyvar/distribution.hpp"

namespace proxyvar::detail {

// Number of central moments precomputed at construction. They feed the
// near-zero CGF series, which only needs |lambda|*B <= 1, so 40 terms leave a
// truncation error below 1/41!.
inline constexpr int kCachedOrder = 40;

// Fixed expectation rule x_i, w_i with sum w_i = 1, built in the probability
// (quantile) variable with panels graded geometrically toward both ends.
// Used for Kumaraswamy laws where moment series would cancel.
struct QuantileRule {
  std::vector<double> x;
  std::vector<double> w;
};

struct Summary {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double radius = 0.0;  // sup |x - mean| over the support
  bool symmetric = false;
  std::vector<long double> central;  // E[(X - mean)^k], k = 0..kCachedOrder
};

struct Node {
  Family family;
  Summary summary;
  std::shared_ptr<const QuantileRule> rule;  // Kumaraswamy only
};

}  // namespace proxyvar::detail
