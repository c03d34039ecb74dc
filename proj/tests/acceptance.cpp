// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "proxyvar/cgf.hpp"
#include "proxyvar/cli.hpp"
#include "proxyvar/closed_forms.hpp"
#include "proxyvar/moments.hpp"
#include "proxyvar/oracle.hpp"
#include "proxyvar/serialize.hpp"
#include "proxyvar/solver.hpp"
#include "proxyvar/strictness.hpp"

using namespace proxyvar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string num(double v) { return fmt("%.12g", v); }

struct Labeled {
  std::string label;
  Distribution dist;
};

// Parameter sweeps of h curves, each with the values where the law is symmetric.
struct CurveSweep {
  std::string name;
  std::string spec;
  std::string sweep;
  std::function<bool(double)> symmetric_at;
};

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

std::vector<CurveSweep> curve_sweeps() {
  return {
      {"bernoulli", R"({"family":"bernoulli","mu":"mu"})", "mu=0.05:0.95:19", [](double v) { return near(v, 0.5); }},
      {"triangular-1-a", R"({"family":"triangular","a":1,"b":"a"})", "a=0.1:2:20", [](double v) { return near(v, 1.0); }},
      {"triangular-a-a", R"({"family":"triangular","a":"a","b":"a"})", "a=0.1:2:20", [](double) { return true; }},
      {"kumaraswamy-zero-skew", R"js({"family":"kumaraswamy","alpha":"kuma_zero_skew_alpha(b)","beta":"b"})js",
       "b=0.25:5:20", [](double v) { return near(v, 1.0); }},
      {"beta-a-a", R"({"family":"beta","alpha":"a","beta":"a"})", "a=0.2:1.8:17", [](double) { return true; }},
      {"beta-a-2-a", R"({"family":"beta","alpha":"a","beta":"2-a"})", "a=0.2:1.8:17", [](double v) { return near(v, 1.0); }},
  };
}

std::vector<Labeled> sweep_distributions() {
  std::vector<Labeled> out;
  for (const auto& f : curve_sweeps()) {
    const auto sweep = cli::parse_family_sweep(f.sweep);
    const Json spec = Json::parse(f.spec);
    for (double v : sweep.values) {
      out.push_back({f.name + " " + sweep.name + "=" + num(v), distribution_from_json(spec, {{sweep.name, v}})});
    }
  }
  const std::vector<Labeled> fixed = {
      {"beta(2,5)", Distribution::beta(2.0, 5.0)},
      {"triangular(1,2)", Distribution::triangular(1.0, 2.0)},
      {"bernoulli(0.3)", Distribution::bernoulli(0.3)},
      {"kumaraswamy(2,3)", Distribution::kumaraswamy(2.0, 3.0)},
      {"binomial(10,0.3)", Distribution::binomial(10, 0.3)},
      {"uniform(0,1)+uniform(0,2)",
       Distribution::independent_sum({Distribution::uniform(0.0, 1.0), Distribution::uniform(0.0, 2.0)})},
  };
  out.insert(out.end(), fixed.begin(), fixed.end());
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    out.push_back({"beta(" + num(a) + "," + num(a) + ")", Distribution::beta(a, a)});
    out.push_back({"triangular(" + num(a) + "," + num(a) + ")", Distribution::triangular(a, a)});
  }
  for (double eta : {0.1, 0.3, 0.4}) out.push_back({"three-atom " + num(eta), symmetric_three_atom(eta)});
  return out;
}

std::vector<Labeled> catalog_and_sweeps() {
  std::vector<Labeled> out;
  for (const auto& c : counterexample_catalog()) out.push_back({"catalog " + c.name, c.dist});
  const auto s = sweep_distributions();
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

// One law per family and combinator, for the oracle criterion.
std::vector<Labeled> family_representatives() {
  return {
      {"bernoulli(0.3)", Distribution::bernoulli(0.3)},
      {"binomial(10,0.3)", Distribution::binomial(10, 0.3)},
      {"uniform(-1,2)", Distribution::uniform(-1.0, 2.0)},
      {"triangular(1,2)", Distribution::triangular(1.0, 2.0)},
      {"beta(2,5)", Distribution::beta(2.0, 5.0)},
      {"beta(0.5,0.5)", Distribution::beta(0.5, 0.5)},
      {"kumaraswamy(2,3)", Distribution::kumaraswamy(2.0, 3.0)},
      {"kumaraswamy(0.5,0.8)", Distribution::kumaraswamy(0.5, 0.8)},
      {"dirac_mixture asym-strict", asymmetric_strict_mixture()},
      {"mixture beta", symmetric_beta_mixture(0.1, 1.5, 9.0)},
      {"affine(-2,1,beta(2,5))", Distribution::affine(-2.0, 1.0, Distribution::beta(2.0, 5.0))},
      {"uniform+bernoulli", Distribution::independent_sum({Distribution::uniform(0.0, 1.0), Distribution::bernoulli(0.3)})},
  };
}

std::vector<double> bracket_grid(const SolveResult& r, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(r.bracket.first + (r.bracket.second - r.bracket.first) * i / (n - 1));
  g.push_back(r.lambda_star);
  return g;
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 1; i <= 19; ++i) {
    if (i == 10) continue;
    const double mu = 0.05 * i;
    const auto r = solve_hmax(Distribution::bernoulli(mu));
    const double sigma = (0.5 - mu) / std::log(1 / mu - 1);
    const double lam = 2 * std::log((1 - mu) / mu);
    o.require(std::abs(r.sigma_opt_sq - sigma) <= 1e-8 * sigma, "mu=" + num(mu) + " sigma " + num(r.sigma_opt_sq));
    o.require(std::abs(r.lambda_star - lam) <= 1e-6, "mu=" + num(mu) + " lambda* " + num(r.lambda_star));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 5.0, "runtime " + num(secs) + " s");
  o.notes.push_back("runtime " + fmt("%.3f", secs) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const double one = solve_hmax(Distribution::bernoulli(0.3)).sigma_opt_sq;
  const double ten = solve_hmax(Distribution::binomial(10, 0.3)).sigma_opt_sq;
  o.require(std::abs(ten - 10 * one) <= 1e-8 * 10 * one, "binomial " + num(ten) + " vs " + num(10 * one));
  o.notes.push_back("relative difference " + fmt("%.3g", std::abs(ten - 10 * one) / (10 * one)));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto u = classify(Distribution::uniform(0.0, 1.0));
  o.require(u.verdict == Verdict::Strict, "uniform verdict " + std::string(to_string(u.verdict)));
  o.require(std::abs(u.sigma_opt_sq - 1.0 / 12.0) <= 1e-9, "uniform sigma " + num(u.sigma_opt_sq));
  const auto s =
      classify(Distribution::independent_sum({Distribution::uniform(0.0, 1.0), Distribution::uniform(0.0, 2.0)}));
  o.require(s.verdict == Verdict::Strict, "sum verdict " + std::string(to_string(s.verdict)));
  o.require(std::abs(s.sigma_opt_sq - 5.0 / 12.0) <= 1e-8 * 5.0 / 12.0, "sum sigma " + num(s.sigma_opt_sq));
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::vector<std::pair<Labeled, Verdict>> cases;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    cases.push_back({{"beta(" + num(a) + "," + num(a) + ")", Distribution::beta(a, a)}, Verdict::Strict});
    cases.push_back({{"triangular(" + num(a) + "," + num(a) + ")", Distribution::triangular(a, a)}, Verdict::Strict});
  }
  cases.push_back({{"beta(2,5)", Distribution::beta(2.0, 5.0)}, Verdict::NotStrict});
  cases.push_back({{"triangular(1,2)", Distribution::triangular(1.0, 2.0)}, Verdict::NotStrict});
  cases.push_back({{"bernoulli(0.3)", Distribution::bernoulli(0.3)}, Verdict::NotStrict});
  cases.push_back({{"kumaraswamy(2,3)", Distribution::kumaraswamy(2.0, 3.0)}, Verdict::NotStrict});
  int agree = 0;
  for (const auto& [c, want] : cases) {
    const Verdict got = classify(c.dist).verdict;
    agree += got == want;
    o.require(got == want, c.label + " gave " + std::string(to_string(got)));
  }
  o.notes.push_back(std::to_string(agree) + "/" + std::to_string(cases.size()) + " verdicts agree");
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (double eta : {0.1, 0.25, 0.3, 0.4, 1.0}) {
    const auto d = symmetric_three_atom(eta);
    const auto v = classify(d);
    const Verdict want = eta < 1.0 / 3.0 ? Verdict::NotStrict : Verdict::Strict;
    o.require(v.verdict == want, "eta=" + num(eta) + " verdict " + std::string(to_string(v.verdict)));
    if (eta < 1.0 / 3.0) {
      const double k4 = moment_table(d).kappa4;
      o.require(std::abs(k4 - eta * (1 - 3 * eta)) <= 1e-14, "eta=" + num(eta) + " kappa4 " + num(k4));
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto d = asymmetric_strict_mixture();
  const auto t = moment_table(d);
  o.require(std::abs(t.mean) <= 1e-12, "mean " + num(t.mean));
  o.require(std::abs(t.variance - 1.0) <= 1e-12, "variance " + num(t.variance));
  o.require(std::abs(t.kappa3) <= 1e-12, "kappa3 " + num(t.kappa3));
  o.require(std::abs(t.kappa4 + 7.0 / 8.0) <= 1e-12, "kappa4 " + num(t.kappa4));
  const auto v = classify(d);
  o.require(v.verdict == Verdict::Strict, "verdict " + std::string(to_string(v.verdict)));
  o.require(v.sigma_opt_sq - 1.0 <= 1e-9, "sigma_opt^2 - 1 = " + num(v.sigma_opt_sq - 1.0));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto d = symmetric_beta_mixture(0.1, 1.5, 9.0);
  const auto v = classify(d);
  o.require(v.kappa4 > 0.0, "kappa4 " + num(v.kappa4));
  o.require(v.verdict == Verdict::NotStrict, "verdict " + std::string(to_string(v.verdict)));
  const double q2 = quad_moment(d, 2);
  const double qk4 = quad_moment(d, 4) - 3 * q2 * q2;
  o.notes.push_back("kappa4 exact " + num(v.kappa4) + ", quadrature " + num(qk4));
  o.require(qk4 > 0.0 && std::abs(qk4 - v.kappa4) <= 1e-8 * std::abs(v.kappa4), "quadrature kappa4 " + num(qk4));
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (double b : {0.5, 2.0, 3.0}) {
    const double a = kumaraswamy_zero_skew_alpha(b);
    const auto d = Distribution::kumaraswamy(a, b);
    const double r = support_radius(d);
    const auto v = classify(d);
    const std::string at = "beta=" + num(b) + " (alpha=" + num(a) + ")";
    o.require(std::abs(v.kappa3) <= 1e-9 * r * r * r,
              at + " |kappa3| = " + fmt("%.4g", std::abs(v.kappa3)) + " > 1e-9 B^3 = " + fmt("%.3g", 1e-9 * r * r * r));
    o.require(v.kappa4 < 0.0, at + " kappa4 " + num(v.kappa4));
    o.require(v.verdict == Verdict::NotStrict, at + " verdict " + std::string(to_string(v.verdict)));
  }
  const auto u = classify(Distribution::kumaraswamy(kumaraswamy_zero_skew_alpha(1.0), 1.0));
  o.require(u.verdict == Verdict::Strict, "beta=1 verdict " + std::string(to_string(u.verdict)));
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst = 0.0;
  std::string worst_label;
  for (const auto& c : catalog_and_sweeps()) {
    const double h = solve_hmax(c.dist).sigma_opt_sq;
    const double d = solve_delta(c.dist).sigma_opt_sq;
    const double rel = std::abs(h - d) / h;
    if (rel > worst) {
      worst = rel;
      worst_label = c.label;
    }
    o.require(rel <= 1e-6, c.label + " HMAX " + num(h) + " DELTA " + num(d));
  }
  o.notes.push_back("worst relative difference " + fmt("%.3g", worst) + " (" + worst_label + ")");
  return o;
}

Outcome criterion10() {
  Outcome o;
  int interior = 0;
  for (const auto& c : catalog_and_sweeps()) {
    const auto r = solve_hmax(c.dist);
    if (r.lambda_star == 0.0) continue;
    ++interior;
    const double k = cgf_centered(c.dist, r.lambda_star);
    const double res = stationarity_residual(c.dist, r.lambda_star);
    o.require(std::abs(res) <= 1e-8 * (1 + std::abs(k)), c.label + " residual " + num(res));
  }
  o.notes.push_back(std::to_string(interior) + " interior maximizers checked");
  return o;
}

Outcome criterion11() {
  Outcome o;
  for (const auto& c : counterexample_catalog()) {
    const auto r = solve_hmax(c.dist);
    const auto g = bracket_grid(r, 4001);
    const double var = variance(c.dist);
    const auto above = verify_inequality(c.dist, r.sigma_opt_sq * (1 + 1e-6), g);
    const auto below = verify_inequality(c.dist, r.sigma_opt_sq - 1e-4 * var, g);
    o.require(above.ok, c.name + " fails above the optimum at lambda " + num(above.worst_lambda));
    o.require(!below.ok, c.name + " passes below the optimum");
  }
  return o;
}

Outcome criterion12() {
  Outcome o;
  double worst_z = 0.0;
  for (const auto& c : family_representatives()) {
    for (double l : {-2.0, -0.5, 0.5, 2.0}) {
      const auto mc = mc_mgf(c.dist, l, 1000000, SolverOptions{}.seed);
      const double exact = mgf_centered(c.dist, l);
      const double z = std::abs(mc.value - exact) / mc.std_error;
      worst_z = std::max(worst_z, z);
      o.require(z <= 4.0, c.label + " lambda " + num(l) + " z = " + num(z));
    }
    for (int k = 2; k <= 10; ++k) {
      const double exact = central_moment(c.dist, k);
      const double q = quad_moment(c.dist, k);
      // odd moments of symmetric laws are zero; compare on the B^k scale there
      const double scale = std::abs(exact) > 1e-13 * std::pow(support_radius(c.dist), k)
                               ? std::abs(exact)
                               : std::pow(support_radius(c.dist), k) * 1e-5;
      o.require(std::abs(q - exact) <= 1e-8 * scale, c.label + " k=" + std::to_string(k) + " quad " + num(q) +
                                                         " exact " + num(exact));
    }
  }
  o.notes.push_back("worst |z| " + fmt("%.3f", worst_z));
  return o;
}

Outcome criterion13() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "proxyvar_acceptance_sweeps";
  fs::remove_all(root);
  for (const auto& f : curve_sweeps()) {
    cli::CurveArgs args;
    args.dist = f.spec;
    args.family_sweep = f.sweep;
    args.out = (root / f.name).string();
    std::ostringstream out, err;
    const int code = cli::cmd_curve(args, SolverOptions{}, out, err);
    o.require(code == cli::kOk, f.name + " exit " + std::to_string(code) + ": " + err.str());
    if (code != cli::kOk) continue;
    std::ifstream in(root / f.name / "maxima.csv");
    std::string line;
    std::getline(in, line);
    o.require(line == "param,lambda_star,sigma_opt_sq", f.name + " header " + line);
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      const auto a = line.find(','), b = line.find(',', a + 1);
      const double param = std::stod(line.substr(0, a));
      const double lam = std::stod(line.substr(a + 1, b - a - 1));
      const bool zero = std::abs(lam) <= 1e-6;
      o.require(zero == f.symmetric_at(param),
                f.name + " param " + num(param) + " lambda* " + num(lam));
    }
    o.require(rows == static_cast<int>(cli::parse_family_sweep(f.sweep).values.size()), f.name + " row count");
  }
  fs::remove_all(root);
  return o;
}

const char* const kTitles[] = {
    "",
    "Bernoulli closed form",
    "binomial additivity",
    "uniform strictness and uniform sums",
    "symmetric versus asymmetric verdict sweep",
    "symmetric three-atom law",
    "asymmetric strict three-atom law",
    "symmetric beta mixture with positive excess kurtosis",
    "Kumaraswamy zero-skewness curve",
    "HMAX and DELTA agreement",
    "stationarity at interior maximizers",
    "minimality of the optimal proxy variance",
    "Monte-Carlo and quadrature oracles",
    "curve sweeps put lambda* at zero exactly at symmetric parameters",
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "1..13; 0 runs all")->check(CLI::Range(0, 13));
  CLI11_PARSE(app, argc, argv);

  const std::function<Outcome()> runners[] = {
      nullptr,     criterion1,  criterion2, criterion3,  criterion4,  criterion5,  criterion6,
      criterion7,  criterion8,  criterion9, criterion10, criterion11, criterion12, criterion13,
  };
  bool all = true;
  for (int n = 1; n <= 13; ++n) {
    if (criterion != 0 && n != criterion) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = runners[n]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << kTitles[n] << " ("
              << fmt("%.2f", secs) << " s)\n";
    for (const auto& note : o.notes) std::cout << "      " << note << '\n';
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
