#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "proxyvar/cgf.hpp"
#include "proxyvar/closed_forms.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/moments.hpp"
#include "proxyvar/solver.hpp"
#include "proxyvar/strictness.hpp"

using namespace proxyvar;
using doctest::Approx;

TEST_CASE("Bernoulli proxy") {
  const auto p = bernoulli_proxy(0.1);
  CHECK(p.sigma_sq == Approx(0.4 / std::log(9.0)).epsilon(1e-15));
  CHECK(p.lambda0 == Approx(2 * std::log(9.0)).epsilon(1e-15));
  CHECK(p.sigma_sq == Approx(0.1820478453253675).epsilon(1e-14));
  const auto q = bernoulli_proxy(0.9);
  CHECK(q.sigma_sq == Approx(p.sigma_sq).epsilon(1e-15));
  CHECK(q.lambda0 == Approx(-p.lambda0).epsilon(1e-15));
  const auto half = bernoulli_proxy(0.5);
  CHECK(half.sigma_sq == 0.25);
  CHECK(half.lambda0 == 0.0);
  CHECK(bernoulli_proxy(0.5 + 1e-9).sigma_sq == 0.25);
  // crossover is continuous
  CHECK(bernoulli_proxy(0.5 + 2e-8).sigma_sq == Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(bernoulli_proxy(0.0), ParameterError);
  CHECK_THROWS_AS(bernoulli_proxy(1.5), ParameterError);
}

TEST_CASE("Bernoulli proxy invariants") {
  for (int i = 1; i < 100; ++i) {
    const double mu = i / 100.0;
    CAPTURE(mu);
    const auto p = bernoulli_proxy(mu);
    CHECK(p.sigma_sq == Approx(bernoulli_proxy(1 - mu).sigma_sq).epsilon(1e-13));
    if (i != 50) {
      CHECK(p.sigma_sq > mu * (1 - mu));
      const auto d = Distribution::bernoulli(mu);
      CHECK(std::abs(stationarity_residual(d, p.lambda0)) <= 1e-10);
    }
  }
}

TEST_CASE("binomial proxy") {
  CHECK(binomial_proxy(1, 0.3) == bernoulli_proxy(0.3).sigma_sq);
  CHECK(binomial_proxy(10, 0.1) == Approx(1.820478453253675).epsilon(1e-14));
  CHECK(binomial_proxy(4, 0.5) == 1.0);
  CHECK_THROWS_AS(binomial_proxy(0, 0.3), ParameterError);
}

TEST_CASE("uniform sums") {
  CHECK(uniform_sum_proxy({{0.0, 1.0}}) == Approx(1.0 / 12.0));
  CHECK(uniform_sum_proxy({{0.0, 1.0}, {0.0, 2.0}}) == Approx(5.0 / 12.0));
  CHECK(uniform_sum_proxy({{3.0, 4.0}}) == Approx(1.0 / 12.0));
}

TEST_CASE("triangular third cumulant") {
  CHECK(triangular_kappa3(1.0, 1.0) == 0.0);
  CHECK(triangular_kappa3(1.0, 2.0) == Approx(2.0 / 27.0));
  CHECK(triangular_kappa3(2.0, 1.0) == Approx(-2.0 / 27.0));
  for (double a : {0.3, 1.0, 2.5})
    for (double b : {0.7, 1.0, 4.0})
      CHECK(triangular_kappa3(a, b) == Approx(central_moment(Distribution::triangular(a, b), 3)).epsilon(1e-12));
}

TEST_CASE("triangular even moments and the closed-form MGF") {
  // E[X^{2j}] = 2 a^{2j} / ((2j+1)(2j+2)) and E[e^{lambda X}] = 2 (cosh(lambda a) - 1) / (lambda a)^2
  const auto d = Distribution::triangular(1.5, 1.5);
  for (double l : {-4.0, -0.9, 0.7, 3.0}) {
    const double x = l * 1.5;
    CHECK(mgf_centered(d, l) == Approx(2 * (std::cosh(x) - 1) / (x * x)).epsilon(1e-13));
  }
}

TEST_CASE("Kumaraswamy zero-skew alpha") {
  CHECK(kumaraswamy_zero_skew_alpha(1.0) == 1.0);
  CHECK(kumaraswamy_zero_skew_alpha(2.0) == Approx(1.7071067811865475244).epsilon(1e-15));
  CHECK(kumaraswamy_zero_skew_alpha(0.5) == Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(kumaraswamy_zero_skew_alpha(0.0), ParameterError);
  CHECK(kumaraswamy_exact_zero_skew_alpha(2.0) == Approx(1.73811875712600987322685607896).epsilon(1e-13));
  // exact root of kappa3 lies near the closed-form value
  for (double b : {0.5, 2.0, 3.0}) {
    CAPTURE(b);
    const double a = kumaraswamy_exact_zero_skew_alpha(b);
    CHECK(std::abs(central_moment(Distribution::kumaraswamy(a, b), 3)) <= 1e-12);
    CHECK(a == Approx(kumaraswamy_zero_skew_alpha(b)).epsilon(0.2));
  }
}

TEST_CASE("named laws") {
  const auto r = symmetric_three_atom(1.0);
  CHECK(variance(r) == 1.0);
  CHECK(r.family_name() == "dirac_mixture");
  CHECK_THROWS_AS(symmetric_three_atom(0.0), ParameterError);
  CHECK_THROWS_AS(symmetric_three_atom(1.5), ParameterError);
  const auto a = asymmetric_strict_mixture();
  const auto& atoms = std::get<family::DiracMixture>(a.family()).atoms;
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[0].location == -2.0);
  CHECK(atoms[1].location == -0.5);
  CHECK(atoms[2].location == 1.25);
  CHECK(atoms[0].weight == Approx(1.0 / 13.0));
  CHECK(atoms[1].weight == Approx(4.0 / 7.0));
  CHECK(atoms[2].weight == Approx(32.0 / 91.0));
}

TEST_CASE("catalog") {
  const auto cat = counterexample_catalog();
  CHECK(cat.size() >= 6);
  for (const char* name : {"sym-not-strict", "sym-strict", "beta-mixture", "asym-strict", "rademacher", "uniform-0-1"}) {
    CAPTURE(name);
    CHECK(std::any_of(cat.begin(), cat.end(), [&](const NamedCase& c) { return c.name == name; }));
  }
  for (const auto& c : cat) {
    CAPTURE(c.name);
    CHECK_FALSE(c.source.empty());
    const auto v = classify(c.dist);
    CHECK(v.verdict == c.expected_verdict);
    if (c.expected_sigma) CHECK(solve_hmax(c.dist).sigma_opt_sq == Approx(*c.expected_sigma).epsilon(1e-8));
  }
  const auto rad = std::find_if(cat.begin(), cat.end(), [](const NamedCase& c) { return c.name == "rademacher"; });
  REQUIRE(rad != cat.end());
  CHECK(*rad->expected_sigma == 1.0);
}
