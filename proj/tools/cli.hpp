#pragma once

#include "engel/maxwell.hpp"
#include "engel/vertical.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace engel::cli {

enum ExitCode : int { kOk = 0, kParseError = 1, kDomainError = 2, kValidateFailure = 3 };

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  Family causal = Family::Timelike;
  double theta = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  int branch = 1;
  double t_end = 1.0;
  int samples = 101;
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  std::string out;  ///< empty writes to stdout
  std::string only;
  std::optional<double> tolerance;

  Covector covector() const { return {causal, theta, c, alpha, branch}; }
};

/// One output row: t, x1, x2, y, z, theta, c, H, E.
struct TraceRow {
  double t = 0.0;
  GroupPoint q;
  double theta = 0.0;
  double c = 0.0;
  double H = 0.0;
  double E = 0.0;
};

inline const char* kTraceHeader = "t,x1,x2,y,z,theta,c,H,E";

/// Rows on a uniform grid of config.samples points over [0, t_end]. Lightlike
/// rows carry NaN in the costate columns. Throws DomainError for
/// t_end >= t_supr or samples < 2.
std::vector<TraceRow> trace_rows(const RunConfig& config);

std::string format_csv(const std::vector<TraceRow>& rows);
std::string format_json(const std::vector<TraceRow>& rows);

/// Inverse of format_csv; throws Error on a malformed header or row.
std::vector<TraceRow> parse_csv(const std::string& text);

/// Field-wise equality with NaN equal to NaN.
bool rows_equal(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b);

std::string classify_json(const Covector& lambda);
std::string maxwell_json(const MaxwellReport& rep);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
};

inline const std::vector<std::string> kSuites = {"elliptic", "group",    "oracle", "conservation",
                                                 "symmetry", "positivity", "maxwell"};

/// Runs the named suites (all when `only` is empty). A tolerance override
/// replaces every numeric tolerance, which is how faults are injected.
std::vector<SuiteResult> run_validation(const std::string& only, std::uint64_t seed,
                                        std::optional<double> tolerance);

std::string validation_json(const std::vector<SuiteResult>& suites, std::uint64_t seed);

/// Parses argv and dispatches. Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace engel::cli
