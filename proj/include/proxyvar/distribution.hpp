#pragma once

#include <memory>
#include <string_view>
#include <variant>
#include <vector>

namespace proxyvar {

class Distribution;

namespace family {

struct Bernoulli {
  double mu;
};

struct Binomial {
  int n;
  double mu;
};

struct Uniform {
  double a;
  double b;
};

// Triangular law on (-a, b) with apex at 0.
struct Triangular {
  double a;
  double b;
};

struct Beta {
  double alpha;
  double beta;
};

// Density alpha*beta*x^(alpha-1)*(1-x^alpha)^(beta-1) on (0,1).
struct Kumaraswamy {
  double alpha;
  double beta;
};

struct Atom {
  double location;
  double weight;
};

struct DiracMixture {
  std::vector<Atom> atoms;
};

struct Component;
struct Mixture;
struct Affine;
struct IndependentSum;

}  // namespace family

using Family = std::variant<family::Bernoulli, family::Binomial, family::Uniform, family::Triangular,
                            family::Beta, family::Kumaraswamy, family::DiracMixture, family::Mixture,
                            family::Affine, family::IndependentSum>;

namespace detail {
struct Node;
}

// Immutable handle to a bounded-support law. Copies share the underlying node,
// so passing by value is cheap. Every factory validates its parameters and
// throws ParameterError on violation; a constructed Distribution is always valid.
class Distribution {
 public:
  static Distribution bernoulli(double mu);
  static Distribution binomial(int n, double mu);
  static Distribution uniform(double a, double b);
  static Distribution triangular(double a, double b);
  static Distribution beta(double alpha, double beta);
  static Distribution kumaraswamy(double alpha, double beta);
  static Distribution dirac_mixture(std::vector<family::Atom> atoms);
  static Distribution mixture(std::vector<family::Component> components);
  static Distribution affine(double scale, double shift, Distribution inner);
  static Distribution independent_sum(std::vector<Distribution> terms);

  // Uniform law on {-1, +1}.
  static Distribution rademacher();

  const Family& family() const;
  std::string_view family_name() const;

  const detail::Node& node() const { return *node_; }

 private:
  explicit Distribution(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  static Distribution make(Family f);

  std::shared_ptr<const detail::Node> node_;
};

namespace family {

struct Component {
  double weight;
  Distribution dist;
};

struct Mixture {
  std::vector<Component> components;
};

// scale * inner + shift
struct Affine {
  double scale;
  double shift;
  Distribution inner;
};

struct IndependentSum {
  std::vector<Distribution> terms;
};

}  // namespace family

}  // namespace proxyvar
