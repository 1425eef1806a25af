#pragma once

// Command-line front end: run configuration, verification reports, figure
// data and the command dispatcher used by the lerchkit binary.

#include "lerchkit/identities.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace lerchkit::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kIo = 3, kEvalDomain = 4 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int digits = 50;
  std::string tolerance = "1e-40";  // kept as text so the report echoes it verbatim
  int samples_per_identity = 25;
  std::uint64_t seed = 1;
  std::vector<std::string> identity_filter{"*"};
  std::string output_dir = "lerchkit-report";
  std::vector<std::string> formats{"json", "markdown", "csv"};
  int truncation = 12;
  int jobs = 1;
};

/// Throws ConfigError naming the violated requirement.
void validate(const RunConfig& cfg);

/// Applies a flat key=value file (keys: digits, tol, samples, seed, only, out,
/// format, truncation, jobs; '#' starts a comment). Lists are comma-separated.
void apply_config_file(const std::string& path, RunConfig& cfg);
void apply_config_text(const std::string& text, RunConfig& cfg, const std::string& origin = "config");

std::vector<std::string> split_list(const std::string& text);

/// Identities matching any of the globs, in registry order.
std::vector<const ident::Identity*> select(const std::vector<std::string>& globs);

struct IdentityReport {
  const ident::Identity* identity = nullptr;
  ident::IdentityRun run;
  int holds = 0;
  int fails = 0;
  int discrepancies = 0;
  int eval_errors = 0;
};

struct Totals {
  int identities = 0;
  int checks = 0;
  int holds = 0;
  int fails = 0;
  int discrepancies = 0;
  int eval_errors = 0;
};

struct VerificationReport {
  RunConfig config;
  std::vector<IdentityReport> identities;
  Totals totals;

  [[nodiscard]] int exit_code() const { return totals.fails + totals.eval_errors == 0 ? kOk : kFailed; }
  /// Versioned, flat per-check records; no timings, so equal inputs give
  /// equal bytes.
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_markdown() const;
  [[nodiscard]] std::string to_csv() const;
};

/// Validates `cfg` and runs every selected identity.
VerificationReport run_suite(const RunConfig& cfg);

/// Writes report.{json,md,csv} into cfg.output_dir. Throws IoError.
std::vector<std::string> write_report(const VerificationReport& report);

std::string csv_field(const std::string& text);
std::string version_stamp();

// --- figure data ---

struct FigureInfo {
  std::string id;
  std::string formula;
  bool complex_domain = false;
  double lo = 0, hi = 1;        // abscissa (or real part) range
  double im_lo = 0, im_hi = 0;  // imaginary range for complex domains
  int points = 200;
  long n = 2;                   // order parameter; 0 when the curve has none
  double r = 0.5;               // second real parameter (sec-cos-power)
};

const std::vector<FigureInfo>& figures();
const FigureInfo* find_figure(const std::string& id);

/// CSV with header x,re,im,abs (real domains) or x,y,re,im,abs (complex
/// grids, `points` per axis). Rows at or next to a singularity keep the
/// abscissa and leave the value fields empty. Throws ConfigError on an
/// unknown id or malformed range.
std::string figure_csv(const FigureInfo& request);

// --- commands ---

/// Full command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lerchkit::cli
