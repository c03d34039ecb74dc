#include "proxyvar/distribution.hpp"

#include <cmath>
#include <string>

#include "internal.hpp"
#include "proxyvar/errors.hpp"

namespace proxyvar {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite");
}

void require_probability(double mu, const char* what) {
  require_finite(mu, what);
  if (!(mu > 0.0 && mu < 1.0)) {
    throw ParameterError(std::string(what) + " must lie in (0, 1), got " + std::to_string(mu));
  }
}

void require_positive(double v, const char* what) {
  require_finite(v, what);
  if (!(v > 0.0)) throw ParameterError(std::string(what) + " must be positive, got " + std::to_string(v));
}

template <class Range, class Weight>
void require_weights(const Range& items, Weight weight_of, const char* what) {
  long double total = 0.0L;
  for (const auto& item : items) {
    const double w = weight_of(item);
    require_finite(w, what);
    if (!(w > 0.0)) throw ParameterError(std::string(what) + " must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0L) > 1e-12L) {
    throw ParameterError(std::string(what) + " must sum to 1 (sum is " + std::to_string(static_cast<double>(total)) +
                         ")");
  }
}

constexpr int kMaxBinomialTrials = 1000000;

}  // namespace

Distribution Distribution::make(Family f) {
  auto node = std::make_shared<detail::Node>();
  if (const auto* k = std::get_if<family::Kumaraswamy>(&f)) {
    node->rule = detail::build_kumaraswamy_rule(k->alpha, k->beta);
  }
  node->summary = detail::summarize(f, node->rule.get());
  node->family = std::move(f);
  return Distribution(std::move(node));
}

Distribution Distribution::bernoulli(double mu) {
  require_probability(mu, "bernoulli.mu");
  return make(family::Bernoulli{mu});
}

Distribution Distribution::binomial(int n, double mu) {
  if (n < 1) throw ParameterError("binomial.n must be a positive integer");
  if (n > kMaxBinomialTrials) {
    throw ParameterError("binomial.n larger than " + std::to_string(kMaxBinomialTrials) + " is not supported");
  }
  require_probability(mu, "binomial.mu");
  return make(family::Binomial{n, mu});
}

Distribution Distribution::uniform(double a, double b) {
  require_finite(a, "uniform.a");
  require_finite(b, "uniform.b");
  if (!(a < b)) throw ParameterError("uniform requires a < b");
  return make(family::Uniform{a, b});
}

Distribution Distribution::triangular(double a, double b) {
  require_positive(a, "triangular.a");
  require_positive(b, "triangular.b");
  return make(family::Triangular{a, b});
}

Distribution Distribution::beta(double alpha, double beta) {
  require_positive(alpha, "beta.alpha");
  require_positive(beta, "beta.beta");
  return make(family::Beta{alpha, beta});
}

Distribution Distribution::kumaraswamy(double alpha, double beta) {
  require_positive(alpha, "kumaraswamy.alpha");
  require_positive(beta, "kumaraswamy.beta");
  return make(family::Kumaraswamy{alpha, beta});
}

Distribution Distribution::dirac_mixture(std::vector<family::Atom> atoms) {
  if (atoms.empty()) throw ParameterError("dirac_mixture needs at least one atom");
  for (const auto& atom : atoms) require_finite(atom.location, "dirac_mixture atom location");
  require_weights(atoms, [](const family::Atom& a) { return a.weight; }, "dirac_mixture weights");
  return make(family::DiracMixture{std::move(atoms)});
}

Distribution Distribution::mixture(std::vector<family::Component> components) {
  if (components.empty()) throw ParameterError("mixture needs at least one component");
  require_weights(components, [](const family::Component& c) { return c.weight; }, "mixture weights");
  return make(family::Mixture{std::move(components)});
}

Distribution Distribution::affine(double scale, double shift, Distribution inner) {
  require_finite(scale, "affine.scale");
  require_finite(shift, "affine.shift");
  if (scale == 0.0) throw ParameterError("affine.scale must be nonzero");
  return make(family::Affine{scale, shift, std::move(inner)});
}

Distribution Distribution::independent_sum(std::vector<Distribution> terms) {
  if (terms.empty()) throw ParameterError("independent_sum needs at least one term");
  return make(family::IndependentSum{std::move(terms)});
}

Distribution Distribution::rademacher() { return dirac_mixture({{-1.0, 0.5}, {1.0, 0.5}}); }

const Family& Distribution::family() const { return node_->family; }

std::string_view Distribution::family_name() const {
  static constexpr std::string_view kNames[] = {"bernoulli",     "binomial", "uniform", "triangular",
                                                "beta",          "kumaraswamy", "dirac_mixture", "mixture",
                                                "affine",        "independent_sum"};
  return kNames[node_->family.index()];
}

}  // namespace proxyvar
