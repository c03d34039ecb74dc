#pragma once

#include <string>
#include <utility>
#include <vector>

#include "proxyvar/closed_forms.hpp"
#include "proxyvar/distribution.hpp"

namespace testing {

using proxyvar::Distribution;

struct Named {
  std::string name;
  Distribution dist;
};

// One or more laws from every family and combinator.
inline std::vector<Named> zoo() {
  return {
      {"bernoulli(0.3)", Distribution::bernoulli(0.3)},
      {"binomial(10,0.3)", Distribution::binomial(10, 0.3)},
      {"uniform(-1,2)", Distribution::uniform(-1.0, 2.0)},
      {"triangular(1,2)", Distribution::triangular(1.0, 2.0)},
      {"triangular(1,1)", Distribution::triangular(1.0, 1.0)},
      {"beta(2,5)", Distribution::beta(2.0, 5.0)},
      {"beta(0.5,0.5)", Distribution::beta(0.5, 0.5)},
      {"beta(1.5,9)", Distribution::beta(1.5, 9.0)},
      {"kumaraswamy(2,3)", Distribution::kumaraswamy(2.0, 3.0)},
      {"kumaraswamy(0.5,0.8)", Distribution::kumaraswamy(0.5, 0.8)},
      {"kumaraswamy zero-skew 2",
       Distribution::kumaraswamy(proxyvar::kumaraswamy_zero_skew_alpha(2.0), 2.0)},
      {"asym-strict atoms", proxyvar::asymmetric_strict_mixture()},
      {"three atoms 0.25", proxyvar::symmetric_three_atom(0.25)},
      {"beta mixture", proxyvar::symmetric_beta_mixture(0.1, 1.5, 9.0)},
      {"uniform/triangular mixture",
       Distribution::mixture({{0.3, Distribution::uniform(0.0, 1.0)}, {0.7, Distribution::triangular(1.0, 2.0)}})},
      {"affine(-2,1,beta(2,5))", Distribution::affine(-2.0, 1.0, Distribution::beta(2.0, 5.0))},
      {"uniform + bernoulli", Distribution::independent_sum({Distribution::uniform(0.0, 1.0),
                                                             Distribution::bernoulli(0.3)})},
  };
}

}  // namespace testing
