#pragma once

// Registry of closed-form sum/product identities, each an executable pair of
// evaluators with a sampled parameter domain, and the checking machinery.

#include "lerchkit/mpcore.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lerchkit::ident {

enum class Tier { Core, Product, Constant, Functional, Limit };
enum class Verdict { Holds, Fails, SuspectedPaperDiscrepancy, EvalError };
enum class Side { Lhs, Rhs };
enum class Relation { Equal, LessThan };

const char* tier_name(Tier t);
const char* verdict_name(Verdict v);

struct ParamSpec {
  std::string name;
  std::string domain;  // human-readable descriptor, e.g. "real, (0.2, 3)"
};

struct ParamSample {
  std::map<std::string, Complex> values;
  std::uint64_t seed = 0;

  [[nodiscard]] const Complex& at(const std::string& name) const;
  [[nodiscard]] long integer(const std::string& name) const;
  void set(const std::string& name, const Complex& v) { values[name] = v; }
  /// "name=value" pairs in key order, values rendered with 15 digits.
  [[nodiscard]] std::string describe() const;
};

/// Deterministic generator used by the samplers. Uniform draws are built from
/// raw mt19937_64 output so they do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi);
  long integer(long lo, long hi);  // inclusive
  /// Uniform draw rounded to 10 significant digits, as an exact decimal.
  Complex real(double lo, double hi);

 private:
  std::mt19937_64 eng_;
};

using SideFn = std::function<Complex(const ParamSample&, const PrecisionContext&)>;
using PartialsFn = std::function<std::vector<Complex>(const ParamSample&, int, const PrecisionContext&)>;

struct Reading {
  std::string description;
  SideFn lhs;
  SideFn rhs;
};

/// Infinite sum/product: partials(sample, N) returns P_1..P_N, `limit` is the
/// closed form, `ratio` the expected geometric contraction of the increments.
struct LimitSpec {
  PartialsFn partials;
  SideFn limit;
  double ratio = 1.0 / 3.0;
};

struct Identity {
  std::string id;
  std::string title;
  std::string anchor;  // short signature of the encoded formula
  Tier tier = Tier::Core;
  std::vector<ParamSpec> params;
  SideFn lhs;
  SideFn rhs;
  Relation relation = Relation::Equal;
  /// Draws one candidate sample; `index` is the position within the batch.
  std::function<ParamSample(Rng&, int index)> sampler;
  /// Rejects candidates too close to poles or outside the domain.
  std::function<bool(const ParamSample&)> admissible;
  /// Discrete-only domains enumerate these instead of drawing.
  std::vector<ParamSample> grid;
  std::optional<Reading> alternate;
  std::optional<LimitSpec> limit;
  std::string notes;
};

/// While alive, finite sums and products over p on this thread run from
/// n-1 down to 0 instead of upwards.
class ReverseSummation {
 public:
  ReverseSummation();
  ~ReverseSummation();
  ReverseSummation(const ReverseSummation&) = delete;
  ReverseSummation& operator=(const ReverseSummation&) = delete;

 private:
  bool saved_;
};

const std::vector<Identity>& registry();
const Identity* lookup(const std::string& id);

/// Shell-style match supporting '*' and '?'.
bool glob_match(const std::string& pattern, const std::string& text);

Complex eval_side(const Identity& id, Side side, const ParamSample& sample, const PrecisionContext& ctx);

/// Deterministic in (id, count, seed). Throws DomainError when the
/// admissibility predicate rejects 1000 consecutive candidates.
std::vector<ParamSample> sample_domain(const Identity& id, int count, std::uint64_t seed);
std::vector<ParamSample> sample_domain(const std::string& id, int count, std::uint64_t seed);

struct CheckResult {
  std::string identity_id;
  ParamSample sample;
  Complex lhs_value;
  Complex rhs_value;
  Real abs_residual;
  Real rel_residual;
  /// The quantity compared with the tolerance: rel_residual, or abs_residual
  /// when both sides are below 10^(-digits/2); |P_N - L| / |L| for limits;
  /// the relative excess for strict inequalities (0 when satisfied).
  Real residual;
  Verdict verdict = Verdict::EvalError;
  std::string route_notes;
  int digits_used = 0;
  int truncation = 0;  // N for limit checks
  Real tail_bound;     // limit checks only
};

/// Componentwise relative residual: per component
/// |l - r| / max(|l|, |r|, 1e-10 * max(|L|, |R|)), maximised.
Real relative_residual(const Complex& l, const Complex& r);

/// Evaluates both sides and assigns a verdict; a failing comparison is
/// repeated at digits + 20 before it is reported as a failure. Requires
/// tol >= 10^(-digits + 10). Never throws for evaluation problems.
CheckResult check(const Identity& id, const ParamSample& sample, const Real& tol, const PrecisionContext& ctx);
CheckResult check(const std::string& id, const ParamSample& sample, const Real& tol, const PrecisionContext& ctx);

/// Compares the N-th partial sum/product with the limit, widening the
/// tolerance by a geometric tail estimate built from the last increments.
CheckResult check_infinite(const Identity& id, int truncation, const ParamSample& sample, const Real& tol,
                           const PrecisionContext& ctx);

/// Evaluates `reading` in place of the registered sides.
CheckResult check_reading(const Identity& id, const Reading& reading, const ParamSample& sample, const Real& tol,
                          const PrecisionContext& ctx);

struct RunOptions {
  int samples = 25;
  std::uint64_t seed = 1;
  Real tol;
  int truncation = 12;
  /// Minimum number of failing samples that counts as systematic.
  int systematic_threshold = 10;
};

struct IdentityRun {
  std::string id;
  std::vector<CheckResult> results;
  bool systematic_failure = false;
  bool alternate_tested = false;
  int alternate_holds = 0;
  int alternate_total = 0;
  std::string alternate_description;
  std::string discrepancy_note;
  double seconds = 0;
  /// Worst residual over the holds/fails results.
  Real worst_residual;
};

/// Runs every sample and applies the discrepancy protocol: when at least
/// `systematic_threshold` samples fail, the alternate reading is evaluated on
/// the same samples. If it holds, the failures become
/// suspected-paper-discrepancy; otherwise core identities keep `fails` and
/// others are marked as discrepancies that fail under both readings.
IdentityRun run_identity(const Identity& id, const RunOptions& opt, const PrecisionContext& ctx);

}  // namespace lerchkit::ident
