#include "proxyvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "internal.hpp"
#include "proxyvar/cgf.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/moments.hpp"
#include "proxyvar/special.hpp"

namespace proxyvar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr long kChunk = 65536;
constexpr int kMaxDepth = 120;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// ---- adaptive Gauss-Legendre -------------------------------------------

using Integrand = std::function<double(double)>;

struct Panel {
  double value;
  double magnitude;  // integral of |f|
};

Panel gl15(const Integrand& f, double a, double b) {
  const auto& rule = special::gauss_legendre(15);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]) * rule.weights[i];
    sum += v;
    mag += std::abs(v);
  }
  return {sum * half, mag * std::abs(half)};
}

double adapt(const Integrand& f, double a, double b, const Panel& whole, double tol_density, int depth) {
  const double m = 0.5 * (a + b);
  const Panel left = gl15(f, a, m);
  const Panel right = gl15(f, m, b);
  const double refined = left.value + right.value;
  const double allowed =
      std::max(tol_density * (b - a), 64.0 * std::numeric_limits<double>::epsilon() * (left.magnitude + right.magnitude));
  if (std::abs(refined - whole.value) <= allowed) return refined;
  if (depth >= kMaxDepth) {
    throw EvaluationError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                          "]");
  }
  return adapt(f, a, m, left, tol_density, depth + 1) + adapt(f, m, b, right, tol_density, depth + 1);
}

double integrate(const Integrand& f, double a, double b) {
  if (a == b) return 0.0;
  constexpr int kCoarse = 8;
  double magnitude = 0.0;
  std::vector<Panel> panels;
  for (int i = 0; i < kCoarse; ++i) {
    const double lo = a + (b - a) * i / kCoarse;
    const double hi = a + (b - a) * (i + 1) / kCoarse;
    panels.push_back(gl15(f, lo, hi));
    magnitude += panels.back().magnitude;
  }
  const double tol_density = 1e-14 * magnitude / (b - a);
  double total = 0.0;
  for (int i = 0; i < kCoarse; ++i) {
    const double lo = a + (b - a) * i / kCoarse;
    const double hi = a + (b - a) * (i + 1) / kCoarse;
    total += adapt(f, lo, hi, panels[i], tol_density, 0);
  }
  return total;
}

// Geometric panels [L 2^-(k+1), L 2^-k] toward an endpoint singularity at 0;
// each panel sees a function that is smooth on its own scale.
double integrate_graded(const Integrand& f, double length) {
  constexpr int kLevels = 60;
  std::vector<Panel> panels;
  double magnitude = 0.0;
  for (int k = 0; k < kLevels; ++k) {
    panels.push_back(gl15(f, std::ldexp(length, -(k + 1)), std::ldexp(length, -k)));
    magnitude += panels.back().magnitude;
  }
  const Panel tail = gl15(f, 0.0, std::ldexp(length, -kLevels));
  const double tol_density = 1e-14 * (magnitude + tail.magnitude) / length;
  double total = tail.value;
  for (int k = kLevels - 1; k >= 0; --k) {
    total += adapt(f, std::ldexp(length, -(k + 1)), std::ldexp(length, -k), panels[k], tol_density, 0);
  }
  return total;
}

// ---- moments about c -------------------------------------------------

std::vector<double> density_moments(const std::function<double(const Integrand&)>& expect, double c, int k_max) {
  std::vector<double> out(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    out[k] = expect([&](double x) { return std::pow(x - c, k); });
  }
  return out;
}

std::vector<double> atom_moments(const std::vector<std::pair<double, double>>& atoms, double c, int k_max) {
  std::vector<double> out(k_max + 1, 0.0);
  for (const auto& [x, p] : atoms) {
    for (int k = 0; k <= k_max; ++k) out[k] += p * std::pow(x - c, k);
  }
  return out;
}

std::vector<double> quad_moments_about(const Distribution& dist, double c, int k_max);

std::vector<double> sum_moments_about(const std::vector<Distribution>& terms, std::size_t first, double c, int k_max) {
  if (first + 1 == terms.size()) return quad_moments_about(terms[first], c, k_max);
  const double m = quad_moments_about(terms[first], 0.0, 1)[1];
  const std::vector<double> head = quad_moments_about(terms[first], m, k_max);
  const std::vector<double> rest = sum_moments_about(terms, first + 1, c - m, k_max);
  std::vector<double> out(k_max + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    const auto row = special::binomial_row(k);
    for (int i = 0; i <= k; ++i) out[k] += static_cast<double>(row[i]) * head[i] * rest[k - i];
  }
  return out;
}

std::vector<double> quad_moments_about(const Distribution& dist, double c, int k_max) {
  return std::visit(
      Overloaded{
          [&](const family::Bernoulli& b) { return atom_moments({{0.0, 1.0 - b.mu}, {1.0, b.mu}}, c, k_max); },
          [&](const family::Binomial& b) {
            std::vector<std::pair<double, double>> atoms;
            for (int x = 0; x <= b.n; ++x) {
              const double logp = std::lgamma(b.n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(b.n - x + 1.0) +
                                  x * std::log(b.mu) + (b.n - x) * std::log1p(-b.mu);
              atoms.emplace_back(x, std::exp(logp));
            }
            return atom_moments(atoms, c, k_max);
          },
          [&](const family::Uniform& u) {
            return density_moments(
                [&](const Integrand& g) { return integrate(g, u.a, u.b) / (u.b - u.a); }, c, k_max);
          },
          [&](const family::Triangular& t) {
            const double a = t.a;
            const double b = t.b;
            return density_moments(
                [&](const Integrand& g) {
                  const double left =
                      integrate([&](double x) { return g(x) * 2.0 * (x + a) / (a * (a + b)); }, -a, 0.0);
                  const double right =
                      integrate([&](double x) { return g(x) * 2.0 * (b - x) / (b * (a + b)); }, 0.0, b);
                  return left + right;
                },
                c, k_max);
          },
          [&](const family::Beta& bt) {
            const double al = bt.alpha;
            const double be = bt.beta;
            const double log_b = std::lgamma(al) + std::lgamma(be) - std::lgamma(al + be);
            return density_moments(
                [&](const Integrand& g) {
                  // x = u^{1/alpha} on (0, 1/2] and 1 - x = v^{1/beta} on [1/2, 1)
                  // absorb the endpoint powers of the density.
                  const double left = integrate_graded(
                      [&](double u) {
                        const double x = std::pow(u, 1.0 / al);
                        return g(x) * std::pow(1.0 - x, be - 1.0);
                      },
                      std::pow(0.5, al));
                  const double right = integrate_graded(
                      [&](double v) {
                        const double y = std::pow(v, 1.0 / be);
                        return g(1.0 - y) * std::pow(1.0 - y, al - 1.0);
                      },
                      std::pow(0.5, be));
                  return std::exp(-log_b) * (left / al + right / be);
                },
                c, k_max);
          },
          [&](const family::Kumaraswamy& k) {
            const double al = k.alpha;
            const double be = k.beta;
            return density_moments(
                [&](const Integrand& g) {
                  // y = x^alpha has density beta (1-y)^{beta-1}; 1 - y = v^{1/beta} on the right half.
                  const double left = integrate_graded(
                      [&](double y) { return g(std::pow(y, 1.0 / al)) * be * std::pow(1.0 - y, be - 1.0); }, 0.5);
                  const double right = integrate_graded(
                      [&](double v) { return g(std::pow(1.0 - std::pow(v, 1.0 / be), 1.0 / al)); }, std::pow(0.5, be));
                  return left + right;
                },
                c, k_max);
          },
          [&](const family::DiracMixture& d) {
            std::vector<std::pair<double, double>> atoms;
            for (const auto& a : d.atoms) atoms.emplace_back(a.location, a.weight);
            return atom_moments(atoms, c, k_max);
          },
          [&](const family::Mixture& m) {
            std::vector<double> out(k_max + 1, 0.0);
            for (const auto& comp : m.components) {
              const auto part = quad_moments_about(comp.dist, c, k_max);
              for (int k = 0; k <= k_max; ++k) out[k] += comp.weight * part[k];
            }
            return out;
          },
          [&](const family::Affine& a) {
            auto out = quad_moments_about(a.inner, (c - a.shift) / a.scale, k_max);
            for (int k = 0; k <= k_max; ++k) out[k] *= std::pow(a.scale, k);
            return out;
          },
          [&](const family::IndependentSum& s) { return sum_moments_about(s.terms, 0, c, k_max); },
      },
      dist.family());
}

}  // namespace

double sample(const Distribution& dist, std::mt19937_64& rng) {
  return std::visit(
      Overloaded{
          [&](const family::Bernoulli& b) { return uniform01(rng) < b.mu ? 1.0 : 0.0; },
          [&](const family::Binomial& b) {
            return static_cast<double>(std::binomial_distribution<int>(b.n, b.mu)(rng));
          },
          [&](const family::Uniform& u) { return u.a + (u.b - u.a) * uniform01(rng); },
          [&](const family::Triangular& t) {
            const double u = uniform01(rng);
            const double total = t.a + t.b;
            if (u < t.a / total) return -t.a + std::sqrt(u * t.a * total);
            return t.b - std::sqrt((1.0 - u) * t.b * total);
          },
          [&](const family::Beta& b) {
            std::gamma_distribution<double> ga(b.alpha, 1.0);
            std::gamma_distribution<double> gb(b.beta, 1.0);
            for (;;) {
              const double x = ga(rng);
              const double y = gb(rng);
              if (x + y > 0.0) return x / (x + y);
            }
          },
          [&](const family::Kumaraswamy& k) {
            const double u = uniform01(rng);
            return std::pow(1.0 - std::pow(1.0 - u, 1.0 / k.beta), 1.0 / k.alpha);
          },
          [&](const family::DiracMixture& d) {
            const double u = uniform01(rng);
            double acc = 0.0;
            for (const auto& atom : d.atoms) {
              acc += atom.weight;
              if (u < acc) return atom.location;
            }
            return d.atoms.back().location;
          },
          [&](const family::Mixture& m) {
            const double u = uniform01(rng);
            double acc = 0.0;
            for (const auto& comp : m.components) {
              acc += comp.weight;
              if (u < acc) return sample(comp.dist, rng);
            }
            return sample(m.components.back().dist, rng);
          },
          [&](const family::Affine& a) { return a.scale * sample(a.inner, rng) + a.shift; },
          [&](const family::IndependentSum& s) {
            double total = 0.0;
            for (const auto& term : s.terms) total += sample(term, rng);
            return total;
          },
      },
      dist.family());
}

McEstimate mc_mgf(const Distribution& dist, double lambda, long n, std::uint64_t seed) {
  if (n < 1000) throw PreconditionError("mc_mgf needs at least 1000 samples");
  const double mu = mean(dist);
  long count = 0;
  double avg = 0.0;
  double m2 = 0.0;
  for (long start = 0, chunk = 0; start < n; start += kChunk, ++chunk) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(chunk))));
    const long len = std::min(kChunk, n - start);
    long c_count = 0;
    double c_avg = 0.0;
    double c_m2 = 0.0;
    for (long i = 0; i < len; ++i) {
      const double v = std::exp(lambda * (sample(dist, rng) - mu));
      ++c_count;
      const double d = v - c_avg;
      c_avg += d / c_count;
      c_m2 += d * (v - c_avg);
    }
    const long total = count + c_count;
    const double delta = c_avg - avg;
    avg += delta * c_count / total;
    m2 += c_m2 + delta * delta * static_cast<double>(count) * c_count / total;
    count = total;
  }
  const double var = m2 / (count - 1);
  return {avg, std::sqrt(var / count), count, seed};
}

double quad_mean(const Distribution& dist) { return quad_moments_about(dist, 0.0, 1)[1]; }

double quad_moment(const Distribution& dist, int k) {
  if (k < 1) throw PreconditionError("quad_moment: order must be >= 1");
  return quad_moments_about(dist, quad_mean(dist), k)[k];
}

InequalityCheck verify_inequality(const Distribution& dist, double sigma_sq, const std::vector<double>& lambda_grid) {
  if (!(sigma_sq > 0.0)) throw PreconditionError("verify_inequality: sigma_sq must be positive");
  if (lambda_grid.empty()) throw PreconditionError("verify_inequality: empty lambda grid");
  InequalityCheck out{true, lambda_grid.front(), INFINITY};
  for (double l : lambda_grid) {
    const double d = 0.5 * l * l * sigma_sq - cgf_centered(dist, l);
    const double normalized = -std::expm1(-d);
    if (normalized < out.worst_delta) {
      out.worst_delta = normalized;
      out.worst_lambda = l;
    }
  }
  out.ok = out.worst_delta >= -1e-10;
  return out;
}

}  // namespace proxyvar
