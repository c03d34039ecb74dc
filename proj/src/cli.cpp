#include "proxyvar/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "proxyvar/cgf.hpp"
#include "proxyvar/closed_forms.hpp"
#include "proxyvar/expr.hpp"
#include "proxyvar/hfunc.hpp"
#include "proxyvar/moments.hpp"
#include "proxyvar/oracle.hpp"

namespace proxyvar::cli {

namespace {

namespace fs = std::filesystem;

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw WriteError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw WriteError("failed writing " + path);
}

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::vector<double> grid_of(const LambdaRange& r) {
  std::vector<double> g;
  for (int i = 0; i < r.n; ++i) g.push_back((r.min * (r.n - 1 - i) + r.max * i) / (r.n - 1));
  return g;
}

LambdaRange default_range(const Distribution& dist, const SolverOptions& opts, int n) {
  const auto [lo, hi] = bracket_bound(dist, opts.bracket_margin);
  return {lo, hi, n};
}

// Runs a command body and maps exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    err << "error: invalid distribution spec: " << e.what() << '\n';
    return kInvalidSpec;
  } catch (const ExpressionError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidSpec;
  } catch (const WriteError& e) {
    err << "error: " << e.what() << '\n';
    return kUnwritablePath;
  } catch (const Error& e) {
    err << "error: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

Json to_json(const SolverOptions& opts) {
  Json j;
  j["grid_points"] = opts.grid_points;
  j["lambda_tol"] = opts.lambda_tol;
  j["sigma_rel_tol"] = opts.sigma_rel_tol;
  j["bracket_margin"] = opts.bracket_margin;
  j["delta_grid_points"] = opts.delta_grid_points;
  j["max_bisection_iters"] = opts.max_bisection_iters;
  j["seed"] = opts.seed;
  return j;
}

Json to_json(const SolveResult& res) {
  Json j;
  j["method"] = std::string(to_string(res.method));
  j["sigma_opt_sq"] = res.sigma_opt_sq;
  j["lambda_star"] = res.lambda_star;
  j["stationarity_residual"] = res.stationarity_residual;
  j["bracket"] = {res.bracket.first, res.bracket.second};
  j["evaluations"] = res.evaluations;
  return j;
}

Json to_json(const StrictnessVerdict& v) {
  Json j;
  j["verdict"] = std::string(to_string(v.verdict));
  j["kappa3"] = v.kappa3;
  j["kappa4"] = v.kappa4;
  j["kurtosis"] = v.kurtosis;
  j["lambda_star"] = v.lambda_star;
  j["sigma_gap"] = v.sigma_gap;
  j["sufficient_condition_depth"] = v.sufficient_condition_depth ? Json(*v.sufficient_condition_depth) : Json();
  j["certificate"] = v.certificate;
  j["reasons"] = v.reasons;
  return j;
}

Json analysis_report(const Distribution& dist, const SolverOptions& opts, bool cross_check, long timing_ms) {
  const MomentTable t = moment_table(dist);
  const SolveResult h = solve_hmax(dist, opts);
  const StrictnessVerdict v = classify(dist, opts);
  Json r;
  r["tool_version"] = kToolVersion;
  r["distribution"] = proxyvar::to_json(dist);
  r["fingerprint"] = fingerprint(dist);
  r["mean"] = t.mean;
  r["variance"] = t.variance;
  r["kappa3"] = t.kappa3;
  r["kappa4"] = t.kappa4;
  r["kurtosis"] = t.kurtosis();
  r["sigma_opt_sq"] = h.sigma_opt_sq;
  r["lambda_star"] = h.lambda_star;
  r["verdict"] = to_json(v);
  Json methods;
  methods["HMAX"] = to_json(h);
  if (cross_check) {
    const SolveResult d = solve_delta(dist, opts);
    methods["DELTA"] = to_json(d);
    r["method_relative_difference"] = std::abs(h.sigma_opt_sq - d.sigma_opt_sq) / h.sigma_opt_sq;
  }
  r["methods"] = std::move(methods);
  r["options"] = to_json(opts);
  r["timing_ms"] = timing_ms;
  return r;
}

LambdaRange parse_lambda_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw SpecError("--lambda-range", "expected min:max:n");
  LambdaRange r{};
  try {
    r.min = evaluate_expression(text.substr(0, a));
    r.max = evaluate_expression(text.substr(a + 1, b - a - 1));
    const double n = evaluate_expression(text.substr(b + 1));
    if (n != std::floor(n) || n < 2 || n > 1e7) throw SpecError("--lambda-range", "n must be an integer >= 2");
    r.n = static_cast<int>(n);
  } catch (const ExpressionError& e) {
    throw SpecError("--lambda-range", e.what());
  }
  if (!(r.min < r.max)) throw SpecError("--lambda-range", "min must be below max");
  return r;
}

Sweep parse_family_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw SpecError("--family-sweep", "expected name=start:stop:steps");
  Sweep s;
  s.name = text.substr(0, eq);
  const LambdaRange r = [&] {
    try {
      return parse_lambda_range(text.substr(eq + 1));
    } catch (const SpecError& e) {
      throw SpecError("--family-sweep", e.what());
    }
  }();
  for (double v : grid_of(r)) s.values.push_back(round12(v));
  return s;
}

Json load_spec(const std::string& source) {
  std::string text = source;
  if (!source.empty() && source.front() == '@') {
    std::ifstream f(source.substr(1), std::ios::binary);
    if (!f) throw SpecError("--dist", "cannot read " + source.substr(1));
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError("--dist", std::string("malformed JSON: ") + e.what());
  }
}

int cmd_analyze(const AnalyzeArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Distribution dist = distribution_from_json(load_spec(args.dist));
    const auto start = std::chrono::steady_clock::now();
    Json report = analysis_report(dist, opts, args.cross_check, 0);
    if (args.timing) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    write_text(args.out, dump(report), out);
    return static_cast<int>(kOk);
  });
}

int cmd_curve(const CurveArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json spec = load_spec(args.dist);
    const std::optional<LambdaRange> range =
        args.lambda_range.empty() ? std::nullopt : std::optional<LambdaRange>(parse_lambda_range(args.lambda_range));
    auto curve_csv = [&](const Distribution& dist) {
      const LambdaRange r = range ? *range : default_range(dist, opts, 1001);
      std::ostringstream csv;
      write_csv(h_curve(dist, r.min, r.max, r.n), csv);
      return csv.str();
    };

    if (args.family_sweep.empty()) {
      write_text(args.out, curve_csv(distribution_from_json(spec)), out);
      return static_cast<int>(kOk);
    }

    const Sweep sweep = parse_family_sweep(args.family_sweep);
    if (args.out.empty()) throw SpecError("--out", "a sweep needs an output directory");
    std::error_code ec;
    fs::create_directories(args.out, ec);
    if (ec || !fs::is_directory(args.out)) throw WriteError("cannot create directory " + args.out);
    struct Point {
      std::string csv;
      SolveResult res;
    };
    std::vector<std::future<Point>> jobs;
    for (double v : sweep.values) {
      const Distribution dist = distribution_from_json(spec, {{sweep.name, v}});
      jobs.push_back(std::async(std::launch::async, [&, dist] { return Point{curve_csv(dist), solve_hmax(dist, opts)}; }));
    }
    std::string maxima = "param,lambda_star,sigma_opt_sq\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Point p = jobs[i].get();
      const std::string label = format_double(sweep.values[i]);
      write_text((fs::path(args.out) / (sweep.name + "_" + label + ".csv")).string(), p.csv, out);
      maxima += label + "," + format_double(p.res.lambda_star) + "," + format_double(p.res.sigma_opt_sq) + "\n";
    }
    write_text((fs::path(args.out) / "maxima.csv").string(), maxima, out);
    err << "wrote " << sweep.values.size() << " curves and maxima.csv to " << args.out << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_catalog(const CatalogArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<NamedCase> cases = counterexample_catalog();
    if (!args.only.empty()) {
      std::erase_if(cases, [&](const NamedCase& c) { return c.name != args.only; });
      if (cases.empty()) throw SpecError("--only", "no catalog case named '" + args.only + "'");
    }
    Json report;
    report["tool_version"] = kToolVersion;
    Json rows = Json::array();
    std::vector<std::string> failing;
    for (const auto& c : cases) {
      const StrictnessVerdict v = classify(c.dist, opts);
      bool pass = v.verdict == c.expected_verdict;
      if (c.expected_sigma) pass = pass && std::abs(v.sigma_opt_sq - *c.expected_sigma) <= 1e-8 * *c.expected_sigma;
      Json row;
      row["name"] = c.name;
      row["source"] = c.source;
      row["distribution"] = proxyvar::to_json(c.dist);
      row["expected_verdict"] = std::string(to_string(c.expected_verdict));
      row["expected_sigma"] = c.expected_sigma ? Json(*c.expected_sigma) : Json();
      row["verdict"] = to_json(v);
      row["sigma_opt_sq"] = v.sigma_opt_sq;
      row["pass"] = pass;
      rows.push_back(std::move(row));
      err << (pass ? "PASS  " : "FAIL  ") << c.name << "  expected " << to_string(c.expected_verdict) << ", got "
          << to_string(v.verdict) << '\n';
      if (!pass) failing.push_back(c.name);
    }
    report["cases"] = std::move(rows);
    report["all_pass"] = failing.empty();
    write_text(args.out, dump(report), out);
    if (!failing.empty()) {
      err << "catalog mismatch:";
      for (const auto& n : failing) err << ' ' << n;
      err << '\n';
      return static_cast<int>(kCatalogMismatch);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Distribution dist = distribution_from_json(load_spec(args.dist));
    double sigma_sq = 0.0;
    if (args.sigma_sq.empty()) {
      sigma_sq = solve_hmax(dist, opts).sigma_opt_sq;
    } else {
      try {
        sigma_sq = evaluate_expression(args.sigma_sq);
      } catch (const ExpressionError& e) {
        throw SpecError("--sigma-sq", e.what());
      }
      if (!(sigma_sq > 0.0)) throw SpecError("--sigma-sq", "must be positive");
    }
    const LambdaRange r =
        args.lambda_range.empty() ? default_range(dist, opts, 2001) : parse_lambda_range(args.lambda_range);
    const InequalityCheck chk = verify_inequality(dist, sigma_sq, grid_of(r));

    Json report;
    report["tool_version"] = kToolVersion;
    report["distribution"] = proxyvar::to_json(dist);
    report["sigma_sq"] = sigma_sq;
    report["inequality"] = {{"ok", chk.ok}, {"worst_lambda", chk.worst_lambda}, {"worst_delta", chk.worst_delta}};
    bool mc_ok = true;
    Json mc = Json::array();
    if (args.mc_samples > 0) {
      for (double l : {-2.0, -0.5, 0.5, 2.0}) {
        const McEstimate est = mc_mgf(dist, l, args.mc_samples, opts.seed);
        const double exact = mgf_centered(dist, l);
        const double z = est.std_error > 0.0 ? (est.value - exact) / est.std_error : 0.0;
        mc_ok = mc_ok && std::abs(z) <= 4.0;
        mc.push_back({{"lambda", l},
                      {"estimate", est.value},
                      {"std_error", est.std_error},
                      {"analytic", exact},
                      {"z", z},
                      {"n_samples", est.n_samples},
                      {"seed", est.seed}});
      }
    }
    report["monte_carlo"] = std::move(mc);
    report["ok"] = chk.ok && mc_ok;
    write_text(args.out, dump(report), out);
    return static_cast<int>(chk.ok && mc_ok ? kOk : kCheckFailed);
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Optimal sub-Gaussian proxy variance and strict sub-Gaussianity of bounded laws", "proxyvar"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "INI/TOML file supplying option defaults")->envname("PROXYVAR_CONFIG");
  app.fallthrough();
  app.require_subcommand(1);

  SolverOptions opts;
  app.add_option("--grid", opts.grid_points, "h-scan grid points")->capture_default_str();
  app.add_option("--delta-grid", opts.delta_grid_points, "Delta-scan grid points")->capture_default_str();
  app.add_option("--tol", opts.sigma_rel_tol, "relative tolerance on sigma^2 (Delta bisection)")->capture_default_str();
  app.add_option("--lambda-tol", opts.lambda_tol, "golden-section tolerance on lambda")->capture_default_str();
  app.add_option("--bracket-margin", opts.bracket_margin, "bracket margin over 2B/Var")->capture_default_str();
  app.add_option("--max-iters", opts.max_bisection_iters, "Delta bisection iteration cap")->capture_default_str();
  app.add_option("--seed", opts.seed, "Monte-Carlo seed")->capture_default_str();

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "moments, proxy variance and strictness verdict as JSON");
  a->add_option("--dist", analyze.dist, "distribution JSON or @file")->required();
  a->add_option("--out", analyze.out, "write the report here instead of stdout");
  a->add_flag("--cross-check", analyze.cross_check, "also solve by Delta bisection");
  a->add_flag("--timing", analyze.timing, "record wall time in timing_ms");

  CurveArgs curve;
  auto* c = app.add_subcommand("curve", "h(lambda) on a grid as lambda,h CSV");
  c->add_option("--dist", curve.dist, "distribution JSON or @file")->required();
  c->add_option("--out", curve.out, "CSV path, or output directory for a sweep");
  c->add_option("--lambda-range", curve.lambda_range, "min:max:n");
  c->add_option("--family-sweep", curve.family_sweep, "name=start:stop:steps; name is a variable in --dist");

  CatalogArgs catalog;
  auto* k = app.add_subcommand("catalog", "classify the named counterexample catalog");
  k->add_option("--only", catalog.only, "run a single case");
  k->add_option("--out", catalog.out, "write the JSON report here instead of stdout");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check the sub-Gaussian inequality and Monte-Carlo MGFs");
  v->add_option("--dist", verify.dist, "distribution JSON or @file")->required();
  v->add_option("--sigma-sq", verify.sigma_sq, "proxy variance to test (default: the optimum)");
  v->add_option("--lambda-range", verify.lambda_range, "min:max:n");
  v->add_option("--mc-samples", verify.mc_samples, "Monte-Carlo draws per lambda; 0 skips")->capture_default_str();
  v->add_option("--out", verify.out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
    opts.validate();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidSpec;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidSpec;
  }

  if (*a) return cmd_analyze(analyze, opts, std::cout, std::cerr);
  if (*c) return cmd_curve(curve, opts, std::cout, std::cerr);
  if (*k) return cmd_catalog(catalog, opts, std::cout, std::cerr);
  return cmd_verify(verify, opts, std::cout, std::cerr);
}

}  // namespace proxyvar::cli
