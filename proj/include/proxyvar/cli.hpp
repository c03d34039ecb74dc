#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "proxyvar/serialize.hpp"
#include "proxyvar/solver.hpp"
#include "proxyvar/strictness.hpp"

namespace proxyvar::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidSpec = 2,
  kSolverFailure = 3,
  kUnwritablePath = 4,
  kCatalogMismatch = 5,
};

struct AnalyzeArgs {
  std::string dist;  // inline JSON or @path
  std::string out;
  bool cross_check = false;
  bool timing = false;
};

struct CurveArgs {
  std::string dist;
  std::string out;           // CSV file, or a directory when sweeping
  std::string lambda_range;  // "min:max:n"; default is the bracket with 1001 points
  std::string family_sweep;  // "name=start:stop:steps"
};

struct CatalogArgs {
  std::string only;
  std::string out;
};

struct VerifyArgs {
  std::string dist;
  std::string sigma_sq;      // expression; default is the h-maximum
  std::string lambda_range;  // default is the bracket with 2001 points
  long mc_samples = 1000000;
  std::string out;
};

Json to_json(const SolverOptions& opts);
Json to_json(const SolveResult& res);
Json to_json(const StrictnessVerdict& v);

Json analysis_report(const Distribution& dist, const SolverOptions& opts, bool cross_check, long timing_ms);

// "min:max:n"
struct LambdaRange {
  double min;
  double max;
  int n;
};
LambdaRange parse_lambda_range(const std::string& text);

struct Sweep {
  std::string name;
  std::vector<double> values;  // rounded to 12 significant digits
};
Sweep parse_family_sweep(const std::string& text);

// Reads "@path" files or takes the argument as inline JSON.
Json load_spec(const std::string& source);

// Each command writes its primary output to `out` unless a path is given,
// and diagnostics to `err`. Return values are ExitCode values.
int cmd_analyze(const AnalyzeArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err);
int cmd_curve(const CurveArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err);
int cmd_catalog(const CatalogArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, const SolverOptions& opts, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace proxyvar::cli
