#include "proxyvar/moments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "internal.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/special.hpp"

namespace proxyvar {

namespace {

using detail::kCachedOrder;
using detail::QuantileRule;
using Moments = std::vector<long double>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Shift moments about m to moments about c: E[(Y + s)^k] with s = m - c.
Moments shift_moments(const Moments& about_m, long double s, int k_max) {
  Moments out(k_max + 1, 0.0L);
  for (int k = 0; k <= k_max; ++k) {
    const auto row = special::binomial_row(k);
    long double acc = 0.0L;
    long double spow = 1.0L;  // s^(k-j), walking j downward
    for (int j = k; j >= 0; --j) {
      acc += row[j] * about_m[j] * spow;
      spow *= s;
    }
    out[k] = acc;
  }
  return out;
}

Moments beta_moments_about(long double alpha, long double beta, long double c, int k_max) {
  // Integrating d/dx[(x-c)^k x(1-x) f(x)] over (0,1) gives the three-term
  // recurrence (k+a+b) M_{k+1} = k c(1-c) M_{k-1} + (k(1-2c) + a - (a+b)c) M_k.
  Moments m(k_max + 1, 0.0L);
  m[0] = 1.0L;
  if (k_max >= 1) m[1] = alpha / (alpha + beta) - c;
  for (int k = 1; k < k_max; ++k) {
    m[k + 1] = (k * c * (1.0L - c) * m[k - 1] + (k * (1.0L - 2.0L * c) + alpha - (alpha + beta) * c) * m[k]) /
               (k + alpha + beta);
  }
  return m;
}

Moments rule_moments_about(const QuantileRule& rule, long double c, int k_max) {
  Moments m(k_max + 1, 0.0L);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const long double y = rule.x[i] - c;
    long double p = rule.w[i];
    for (int k = 0; k <= k_max; ++k) {
      m[k] += p;
      p *= y;
    }
  }
  return m;
}

// Raw-moment route is kept for low orders; recentering cancellation grows
// like ((1+|c|)/B)^k, so higher orders come from the quantile rule.
constexpr int kKumaraswamyRawOrder = 20;

Moments kumaraswamy_moments_about(const family::Kumaraswamy& k, const QuantileRule* rule, long double c,
                                  int k_max) {
  if (k.alpha == 1.0) return beta_moments_about(1.0L, k.beta, c, k_max);
  if (k.beta == 1.0) return beta_moments_about(k.alpha, 1.0L, c, k_max);
  const int raw_order = std::min(k_max, kKumaraswamyRawOrder);
  Moments raw(raw_order + 1);
  for (int n = 0; n <= raw_order; ++n) raw[n] = kumaraswamy_raw_moment(k.alpha, k.beta, n);
  Moments m = shift_moments(raw, -c, raw_order);
  if (k_max > raw_order) {
    const Moments tail = rule_moments_about(*rule, c, k_max);
    m.resize(k_max + 1);
    for (int n = raw_order + 1; n <= k_max; ++n) m[n] = tail[n];
  }
  return m;
}

Moments moments_about_family(const Family& f, const QuantileRule* rule, long double c, int k_max);

Moments central_of(const Distribution& d, int k_max) {
  const auto& s = detail::summary(d);
  if (k_max <= kCachedOrder) return Moments(s.central.begin(), s.central.begin() + k_max + 1);
  return moments_about_family(d.family(), d.node().rule.get(), s.mean, k_max);
}

Moments moments_about_family(const Family& f, const QuantileRule* rule, long double c, int k_max) {
  return std::visit(
      Overloaded{
          [&](const family::Bernoulli& b) {
            Moments m(k_max + 1);
            const long double p = b.mu;
            for (int k = 0; k <= k_max; ++k) {
              m[k] = p * std::pow(1.0L - c, k) + (1.0L - p) * std::pow(-c, k);
            }
            return m;
          },
          [&](const family::Binomial& b) {
            Moments m(k_max + 1, 0.0L);
            const long double n = b.n;
            const long double log_mu = std::log(static_cast<long double>(b.mu));
            const long double log_1mmu = std::log1p(-static_cast<long double>(b.mu));
            for (int x = 0; x <= b.n; ++x) {
              const long double logp = std::lgamma(n + 1) - std::lgamma(x + 1.0L) - std::lgamma(n - x + 1) +
                                       x * log_mu + (n - x) * log_1mmu;
              long double p = std::exp(logp);
              const long double y = x - c;
              for (int k = 0; k <= k_max; ++k) {
                m[k] += p;
                p *= y;
              }
            }
            return m;
          },
          [&](const family::Uniform& u) {
            const long double half = (static_cast<long double>(u.b) - u.a) / 2.0L;
            Moments central(k_max + 1, 0.0L);
            for (int j = 0; j <= k_max; j += 2) central[j] = std::pow(half, j) / (j + 1);
            const long double mid = (static_cast<long double>(u.a) + u.b) / 2.0L;
            return shift_moments(central, mid - c, k_max);
          },
          [&](const family::Triangular& t) {
            // The density is piecewise linear, so f'' is three point masses and
            // E[(X-c)^k] = int (x-c)^(k+2)/((k+1)(k+2)) f''(x) dx.
            const long double a = t.a;
            const long double b = t.b;
            Moments m(k_max + 1);
            for (int k = 0; k <= k_max; ++k) {
              const long double left = std::pow(-a - c, k + 2) / a;
              const long double apex = (a + b) / (a * b) * std::pow(-c, k + 2);
              const long double right = std::pow(b - c, k + 2) / b;
              m[k] = 2.0L / ((k + 1.0L) * (k + 2.0L) * (a + b)) * (left - apex + right);
            }
            return m;
          },
          [&](const family::Beta& b) { return beta_moments_about(b.alpha, b.beta, c, k_max); },
          [&](const family::Kumaraswamy& k) { return kumaraswamy_moments_about(k, rule, c, k_max); },
          [&](const family::DiracMixture& d) {
            Moments m(k_max + 1, 0.0L);
            for (const auto& atom : d.atoms) {
              long double p = atom.weight;
              const long double y = atom.location - c;
              for (int k = 0; k <= k_max; ++k) {
                m[k] += p;
                p *= y;
              }
            }
            return m;
          },
          [&](const family::Mixture& mix) {
            Moments m(k_max + 1, 0.0L);
            for (const auto& comp : mix.components) {
              const Moments part = moments_about(comp.dist, c, k_max);
              for (int k = 0; k <= k_max; ++k) m[k] += comp.weight * part[k];
            }
            return m;
          },
          [&](const family::Affine& a) {
            const long double scale = a.scale;
            Moments m = moments_about(a.inner, (c - a.shift) / scale, k_max);
            long double sp = 1.0L;
            for (int k = 0; k <= k_max; ++k) {
              m[k] *= sp;
              sp *= scale;
            }
            return m;
          },
          [&](const family::IndependentSum& s) {
            // Binomial convolution of the terms' central moments, then one shift.
            Moments acc(k_max + 1, 0.0L);
            acc[0] = 1.0L;
            long double total_mean = 0.0L;
            for (const auto& term : s.terms) {
              const Moments t = central_of(term, k_max);
              Moments next(k_max + 1, 0.0L);
              for (int k = 0; k <= k_max; ++k) {
                const auto row = special::binomial_row(k);
                long double v = 0.0L;
                for (int j = 0; j <= k; ++j) v += row[j] * acc[j] * t[k - j];
                next[k] = v;
              }
              acc = std::move(next);
              total_mean += detail::summary(term).mean;
            }
            return shift_moments(acc, total_mean - c, k_max);
          },
      },
      f);
}

// ---- structural symmetry -------------------------------------------------

enum class LeafKind { Bernoulli, Binomial, Uniform, Triangular, Beta, Kumaraswamy, Dirac };

// X = loc + scale * Standard(kind, shape); Dirac atoms are stored in absolute
// coordinates with loc = 0, scale = 1.
struct LeafForm {
  LeafKind kind;
  std::vector<double> shape;
  double loc = 0.0;
  double scale = 1.0;
  std::vector<family::Atom> atoms;
};

bool close(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y))); }

void sort_atoms(std::vector<family::Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const family::Atom& l, const family::Atom& r) { return l.location < r.location; });
}

// Rewrite a negative scale as a positive one where the standard law has a
// reflected member in the same family.
void canonicalize(LeafForm& f) {
  if (f.kind == LeafKind::Dirac) {
    for (auto& atom : f.atoms) atom.location = f.loc + f.scale * atom.location;
    f.loc = 0.0;
    f.scale = 1.0;
    sort_atoms(f.atoms);
    return;
  }
  if (f.scale > 0.0) return;
  switch (f.kind) {
    case LeafKind::Bernoulli:
      f.shape[0] = 1.0 - f.shape[0];
      f.loc += f.scale;
      break;
    case LeafKind::Binomial:
      f.shape[1] = 1.0 - f.shape[1];
      f.loc += f.scale * f.shape[0];
      break;
    case LeafKind::Uniform:
      f.loc += f.scale;
      break;
    case LeafKind::Triangular:
      f.shape[0] = 1.0 - f.shape[0];
      f.loc += f.scale;
      break;
    case LeafKind::Beta:
      std::swap(f.shape[0], f.shape[1]);
      f.loc += f.scale;
      break;
    case LeafKind::Kumaraswamy:
    case LeafKind::Dirac:
      return;
  }
  f.scale = -f.scale;
}

LeafForm leaf(LeafKind kind, std::vector<double> shape, double loc = 0.0, double scale = 1.0) {
  LeafForm f;
  f.kind = kind;
  f.shape = std::move(shape);
  f.loc = loc;
  f.scale = scale;
  return f;
}

std::optional<LeafForm> leaf_form(const Distribution& d) {
  std::optional<LeafForm> out = std::visit(
      Overloaded{
          [](const family::Bernoulli& b) -> std::optional<LeafForm> {
            return leaf(LeafKind::Bernoulli, {b.mu});
          },
          [](const family::Binomial& b) -> std::optional<LeafForm> {
            return leaf(LeafKind::Binomial, {static_cast<double>(b.n), b.mu});
          },
          [](const family::Uniform& u) -> std::optional<LeafForm> {
            return leaf(LeafKind::Uniform, {}, u.a, u.b - u.a);
          },
          [](const family::Triangular& t) -> std::optional<LeafForm> {
            return leaf(LeafKind::Triangular, {t.a / (t.a + t.b)}, -t.a, t.a + t.b);
          },
          [](const family::Beta& b) -> std::optional<LeafForm> {
            return leaf(LeafKind::Beta, {b.alpha, b.beta});
          },
          [](const family::Kumaraswamy& k) -> std::optional<LeafForm> {
            if (k.alpha == 1.0 && k.beta == 1.0) return leaf(LeafKind::Uniform, {}, 0.0, 1.0);
            return leaf(LeafKind::Kumaraswamy, {k.alpha, k.beta});
          },
          [](const family::DiracMixture& m) -> std::optional<LeafForm> {
            LeafForm f = leaf(LeafKind::Dirac, {});
            f.atoms = m.atoms;
            return f;
          },
          [](const family::Mixture&) -> std::optional<LeafForm> { return std::nullopt; },
          [](const family::Affine& a) -> std::optional<LeafForm> {
            auto inner = leaf_form(a.inner);
            if (!inner) return std::nullopt;
            inner->loc = a.scale * inner->loc + a.shift;
            inner->scale = a.scale * inner->scale;
            return inner;
          },
          [](const family::IndependentSum&) -> std::optional<LeafForm> { return std::nullopt; },
      },
      d.family());
  if (out) canonicalize(*out);
  return out;
}

LeafForm reflect(LeafForm f, double center) {
  if (f.kind == LeafKind::Dirac) {
    for (auto& atom : f.atoms) atom.location = 2.0 * center - atom.location;
  } else {
    f.loc = 2.0 * center - f.loc;
    f.scale = -f.scale;
  }
  canonicalize(f);
  return f;
}

bool same_form(const LeafForm& x, const LeafForm& y) {
  if (x.kind != y.kind || x.shape.size() != y.shape.size() || x.atoms.size() != y.atoms.size()) return false;
  for (std::size_t i = 0; i < x.shape.size(); ++i) {
    if (!close(x.shape[i], y.shape[i])) return false;
  }
  for (std::size_t i = 0; i < x.atoms.size(); ++i) {
    if (!close(x.atoms[i].location, y.atoms[i].location) || !close(x.atoms[i].weight, y.atoms[i].weight)) {
      return false;
    }
  }
  return close(x.loc, y.loc) && close(x.scale, y.scale);
}

bool dirac_symmetric(const std::vector<family::Atom>& atoms, double center, double radius) {
  const double tol = 1e-12 * std::max(1.0, radius);
  for (const auto& atom : atoms) {
    const double mirror = 2.0 * center - atom.location;
    const bool found = std::any_of(atoms.begin(), atoms.end(), [&](const family::Atom& other) {
      return std::abs(other.location - mirror) <= tol && std::abs(other.weight - atom.weight) <= 1e-12;
    });
    if (!found) return false;
  }
  return true;
}

bool mixture_symmetric(const family::Mixture& mix, double center, double radius) {
  const double tol = 1e-12 * std::max(1.0, radius);
  const bool all_centered = std::all_of(mix.components.begin(), mix.components.end(), [&](const auto& comp) {
    const auto& s = detail::summary(comp.dist);
    return s.symmetric && std::abs(s.mean - center) <= tol;
  });
  if (all_centered) return true;

  // Reflection-invariant component multiset.
  std::vector<LeafForm> forms;
  for (const auto& comp : mix.components) {
    auto f = leaf_form(comp.dist);
    if (!f) return false;
    forms.push_back(std::move(*f));
  }
  std::vector<bool> used(forms.size(), false);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const LeafForm mirrored = reflect(forms[i], center);
    bool matched = false;
    for (std::size_t j = 0; j < forms.size() && !matched; ++j) {
      if (used[j] || std::abs(mix.components[i].weight - mix.components[j].weight) > 1e-12) continue;
      if (same_form(mirrored, forms[j])) {
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

double family_mean(const Family& f, const QuantileRule* rule) {
  (void)rule;
  return std::visit(
      Overloaded{
          [](const family::Bernoulli& b) { return b.mu; },
          [](const family::Binomial& b) { return b.n * b.mu; },
          [](const family::Uniform& u) { return 0.5 * (u.a + u.b); },
          [](const family::Triangular& t) { return (t.b - t.a) / 3.0; },
          [](const family::Beta& b) { return b.alpha / (b.alpha + b.beta); },
          [](const family::Kumaraswamy& k) {
            return static_cast<double>(kumaraswamy_raw_moment(k.alpha, k.beta, 1));
          },
          [](const family::DiracMixture& d) {
            long double acc = 0.0L;
            for (const auto& atom : d.atoms) acc += static_cast<long double>(atom.weight) * atom.location;
            return static_cast<double>(acc);
          },
          [](const family::Mixture& m) {
            long double acc = 0.0L;
            for (const auto& c : m.components) acc += static_cast<long double>(c.weight) * detail::summary(c.dist).mean;
            return static_cast<double>(acc);
          },
          [](const family::Affine& a) { return a.scale * detail::summary(a.inner).mean + a.shift; },
          [](const family::IndependentSum& s) {
            long double acc = 0.0L;
            for (const auto& t : s.terms) acc += detail::summary(t).mean;
            return static_cast<double>(acc);
          },
      },
      f);
}

Interval family_support(const Family& f) {
  return std::visit(
      Overloaded{
          [](const family::Bernoulli&) { return Interval{0.0, 1.0}; },
          [](const family::Binomial& b) { return Interval{0.0, static_cast<double>(b.n)}; },
          [](const family::Uniform& u) { return Interval{u.a, u.b}; },
          [](const family::Triangular& t) { return Interval{-t.a, t.b}; },
          [](const family::Beta&) { return Interval{0.0, 1.0}; },
          [](const family::Kumaraswamy&) { return Interval{0.0, 1.0}; },
          [](const family::DiracMixture& d) {
            Interval iv{d.atoms.front().location, d.atoms.front().location};
            for (const auto& atom : d.atoms) {
              iv.lo = std::min(iv.lo, atom.location);
              iv.hi = std::max(iv.hi, atom.location);
            }
            return iv;
          },
          [](const family::Mixture& m) {
            Interval iv{INFINITY, -INFINITY};
            for (const auto& c : m.components) {
              const auto& s = detail::summary(c.dist);
              iv.lo = std::min(iv.lo, s.lo);
              iv.hi = std::max(iv.hi, s.hi);
            }
            return iv;
          },
          [](const family::Affine& a) {
            const auto& s = detail::summary(a.inner);
            const double x = a.scale * s.lo + a.shift;
            const double y = a.scale * s.hi + a.shift;
            return Interval{std::min(x, y), std::max(x, y)};
          },
          [](const family::IndependentSum& s) {
            Interval iv{0.0, 0.0};
            for (const auto& t : s.terms) {
              iv.lo += detail::summary(t).lo;
              iv.hi += detail::summary(t).hi;
            }
            return iv;
          },
      },
      f);
}

bool family_symmetric(const Family& f, double center, double radius) {
  return std::visit(
      Overloaded{
          [](const family::Bernoulli& b) { return b.mu == 0.5; },
          [](const family::Binomial& b) { return b.mu == 0.5; },
          [](const family::Uniform&) { return true; },
          [](const family::Triangular& t) { return t.a == t.b; },
          [](const family::Beta& b) { return b.alpha == b.beta; },
          [](const family::Kumaraswamy& k) { return k.alpha == 1.0 && k.beta == 1.0; },
          [&](const family::DiracMixture& d) { return dirac_symmetric(d.atoms, center, radius); },
          [&](const family::Mixture& m) { return mixture_symmetric(m, center, radius); },
          [](const family::Affine& a) { return detail::summary(a.inner).symmetric; },
          [](const family::IndependentSum& s) {
            return std::all_of(s.terms.begin(), s.terms.end(),
                               [](const Distribution& t) { return detail::summary(t).symmetric; });
          },
      },
      f);
}

}  // namespace

long double kumaraswamy_raw_moment(double alpha, double beta, int n) {
  if (n == 0) return 1.0L;
  const long double x = 1.0L + static_cast<long double>(n) / alpha;
  // beta * B(x, beta) = beta * Gamma(beta) * Gamma(x) / Gamma(x + beta)
  return std::exp(std::log(static_cast<long double>(beta)) + std::lgamma(static_cast<long double>(beta)) +
                  special::log_gamma_ratio(x, beta));
}

namespace detail {

Summary summarize(const Family& family, const QuantileRule* rule) {
  Summary s;
  s.mean = family_mean(family, rule);
  const Interval iv = family_support(family);
  s.lo = iv.lo;
  s.hi = iv.hi;
  s.radius = std::max(s.hi - s.mean, s.mean - s.lo);
  s.central = moments_about_family(family, rule, s.mean, kCachedOrder);
  s.central[1] = 0.0L;
  s.symmetric = family_symmetric(family, s.mean, s.radius);
  return s;
}

std::shared_ptr<const QuantileRule> build_kumaraswamy_rule(double alpha, double beta) {
  constexpr int kOrder = 20;
  constexpr int kLevels = 60;
  const auto& gl = special::gauss_legendre(kOrder);
  auto rule = std::make_shared<QuantileRule>();

  // Panels on t in (0, 1/2]: [0, 2^-61], then [2^-(k+1), 2^-k], with the two
  // widest ones split further. t is u on the left half and 1-u on the right.
  std::vector<std::pair<double, double>> panels;
  panels.emplace_back(0.0, std::ldexp(1.0, -(kLevels + 1)));
  for (int k = kLevels; k >= 1; --k) {
    const double lo = std::ldexp(1.0, -(k + 1));
    const double hi = std::ldexp(1.0, -k);
    const int pieces = k == 1 ? 4 : (k == 2 ? 2 : 1);
    for (int p = 0; p < pieces; ++p) {
      panels.emplace_back(lo + (hi - lo) * p / pieces, lo + (hi - lo) * (p + 1) / pieces);
    }
  }

  const double inv_alpha = 1.0 / alpha;
  const double inv_beta = 1.0 / beta;
  for (int side = 0; side < 2; ++side) {
    for (const auto& [lo, hi] : panels) {
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (int i = 0; i < kOrder; ++i) {
        const double t = mid + half * gl.nodes[i];
        // F(x) = 1 - (1 - x^alpha)^beta inverted at u = t (left) or u = 1 - t (right).
        const double x_alpha = side == 0 ? -std::expm1(std::log1p(-t) * inv_beta) : -std::expm1(std::log(t) * inv_beta);
        rule->x.push_back(std::exp(std::log(x_alpha) * inv_alpha));
        rule->w.push_back(half * gl.weights[i]);
      }
    }
  }
  return rule;
}

}  // namespace detail

double mean(const Distribution& dist) { return detail::summary(dist).mean; }

double variance(const Distribution& dist) { return static_cast<double>(detail::summary(dist).central[2]); }

std::vector<long double> moments_about(const Distribution& dist, long double center, int k_max) {
  if (k_max < 0) throw PreconditionError("moments_about: k_max must be nonnegative");
  return moments_about_family(dist.family(), dist.node().rule.get(), center, k_max);
}

double central_moment(const Distribution& dist, int k) {
  if (k < 1) throw PreconditionError("central_moment: order must be >= 1, got " + std::to_string(k));
  if (k == 1) return 0.0;
  const auto& s = detail::summary(dist);
  const long double v = k <= kCachedOrder ? s.central[k] : moments_about(dist, s.mean, k)[k];
  const double out = static_cast<double>(v);
  if (!std::isfinite(out)) {
    throw RangeError("central moment of order " + std::to_string(k) + " is not representable");
  }
  return out;
}

double MomentTable::kurtosis() const { return central_moments.at(4) / (variance * variance); }

MomentTable moment_table(const Distribution& dist, int k_max) {
  if (k_max < 4) throw PreconditionError("moment_table: k_max must be >= 4");
  MomentTable t;
  t.mean = mean(dist);
  for (int k = 2; k <= k_max; ++k) t.central_moments[k] = central_moment(dist, k);
  t.variance = t.central_moments[2];
  t.kappa3 = t.central_moments[3];
  const auto& c = detail::summary(dist).central;
  t.kappa4 = static_cast<double>(c[4] - 3.0L * c[2] * c[2]);
  return t;
}

Interval support(const Distribution& dist) {
  const auto& s = detail::summary(dist);
  return {s.lo, s.hi};
}

double support_radius(const Distribution& dist) { return detail::summary(dist).radius; }

bool is_symmetric(const Distribution& dist) { return detail::summary(dist).symmetric; }

}  // namespace proxyvar
