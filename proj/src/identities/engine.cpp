#include "common.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace lerchkit::ident {

// ---------------------------------------------------------------- helpers

namespace detail {

C p3(long e) {
  Real r = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= 3;
  return e < 0 ? C(Real(1) / r) : C(r);
}

C p3(const C& e) { return exp(e * C(log(Real(3)))); }

std::set<std::string>*& route_log() {
  thread_local std::set<std::string>* log = nullptr;
  return log;
}

C phi(const C& z, const C& s, const C& v) {
  PhiValue pv = lerch_phi({z, s, v}, current_context());
  if (auto* log = route_log()) log->insert(route_name(pv.route));
  return pv.value;
}

C dphi(const C& z, const C& s, const C& v) {
  if (auto* log = route_log()) log->insert("phi-sderiv");
  return lerch_phi_sderiv({z, s, v}, current_context());
}

C gam(const C& z) { return gamma(z, current_context()); }
C tri(const C& z) { return polygamma(1, z, current_context()); }

const Constants& K() {
  thread_local Constants cached;
  thread_local int cached_digits = -1;
  const PrecisionContext& ctx = current_context();
  if (cached_digits != ctx.working_digits()) {
    cached = constants(ctx);
    cached_digits = ctx.working_digits();
  }
  return cached;
}

bool& reverse_flag() {
  thread_local bool flag = false;
  return flag;
}

namespace {

std::pair<C, Real> sum_terms(long n, const TermFn& term) {
  CompensatedSum acc;
  Real big = 0;
  auto add = [&](long p) {
    C t = term(p);
    big = std::max(big, abs(t));
    acc.add(t);
  };
  if (reverse_flag()) {
    for (long p = n - 1; p >= 0; --p) add(p);
  } else {
    for (long p = 0; p < n; ++p) add(p);
  }
  return {acc.value(), big};
}

}  // namespace

C psum(long n, const TermFn& term) {
  auto [sum, big] = sum_terms(n, term);
  // Terms cancelling far below their own size eat into the guard digits;
  // re-evaluate them with the lost digits added back.
  const PrecisionContext& ctx = current_context();
  if (big == 0) return sum;
  const Real mag = abs(sum);
  int lost = ctx.digits;
  if (mag > 0) lost = static_cast<int>(std::ceil(boost::multiprecision::log10(big / mag).convert_to<double>()));
  if (lost <= ctx.guard_digits / 2) return sum;
  PrecisionScope wide(ctx.escalated(std::min(lost, ctx.digits)));
  return sum_terms(n, term).first;
}

C pprod(long n, const TermFn& factor) {
  C acc = R(1);
  if (reverse_flag()) {
    for (long p = n - 1; p >= 0; --p) acc *= factor(p);
  } else {
    for (long p = 0; p < n; ++p) acc *= factor(p);
  }
  return acc;
}

std::vector<C> partial_products(int N, const TermFn& factor) {
  std::vector<C> out;
  C acc = R(1);
  for (long p = 0; p < N; ++p) {
    acc *= factor(p);
    out.push_back(acc);
  }
  return out;
}

C decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return Complex::parse(buf);
}

ParamSample make(std::initializer_list<std::pair<const char*, C>> kv) {
  ParamSample s;
  for (const auto& [k, v] : kv) s.values[k] = v;
  return s;
}

C disk(Rng& rng, double r) {
  double rho = r * std::sqrt(rng.uniform(0, 1));
  double th = rng.uniform(-M_PI, M_PI);
  return {decimal(rho * std::cos(th)).re(), decimal(rho * std::sin(th)).re()};
}

}  // namespace detail

using namespace detail;

ReverseSummation::ReverseSummation() : saved_(reverse_flag()) { reverse_flag() = true; }
ReverseSummation::~ReverseSummation() { reverse_flag() = saved_; }

const char* tier_name(Tier t) {
  switch (t) {
    case Tier::Core: return "core";
    case Tier::Product: return "product";
    case Tier::Constant: return "constant";
    case Tier::Functional: return "functional";
    case Tier::Limit: return "limit";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::SuspectedPaperDiscrepancy: return "suspected-paper-discrepancy";
    case Verdict::EvalError: return "eval-error";
  }
  return "?";
}

const Complex& ParamSample::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw DomainError("missing parameter '" + name + "'");
  return it->second;
}

long ParamSample::integer(const std::string& name) const {
  return boost::multiprecision::round(at(name).re()).convert_to<long>();
}

std::string ParamSample::describe() const {
  std::string out;
  for (const auto& [k, v] : values) {
    if (!out.empty()) out += ' ';
    out += k + "=" + format_complex(v, 15);
  }
  return out;
}

double Rng::uniform(double lo, double hi) {
  double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

long Rng::integer(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(eng_() % span);
}

Complex Rng::real(double lo, double hi) {
  // keep the rounded value strictly inside the open interval
  for (;;) {
    C v = decimal(uniform(lo, hi));
    double x = d(v);
    if (x > lo && x < hi) return v;
  }
}

// ---------------------------------------------------------------- registry

const std::vector<Identity>& registry() {
  static const std::vector<Identity> reg = [] {
    std::vector<Identity> v;
    add_theorems(v);
    add_products(v);
    add_constants(v);
    return v;
  }();
  return reg;
}

const Identity* lookup(const std::string& id) {
  for (const auto& i : registry())
    if (i.id == id) return &i;
  return nullptr;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

const Identity& require(const std::string& id) {
  const Identity* i = lookup(id);
  if (!i) throw std::invalid_argument("unknown identity '" + id + "'");
  return *i;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ParamSample lifted(const ParamSample& s) {
  ParamSample out = s;
  for (auto& [k, v] : out.values) v = lift(v);
  return out;
}

constexpr int kDefaultTruncation = 12;

// Evaluates a pair of sides; failures are captured as text.
struct Pair {
  C lhs, rhs;
  std::string routes;
  std::string error;
};

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return out;
}

struct RouteCapture {
  std::set<std::string> routes;
  std::set<std::string>* saved;
  RouteCapture() : saved(route_log()) { route_log() = &routes; }
  ~RouteCapture() { route_log() = saved; }
};

template <class Fn>
void guarded(Pair& out, Fn&& fn) {
  try {
    fn();
    if (!out.lhs.is_finite() || !out.rhs.is_finite()) out.error = "non-finite value";
  } catch (const DomainError& e) {
    out.error = std::string("domain error: ") + e.what();
  } catch (const ConvergenceError& e) {
    out.error = std::string("convergence error: ") + e.what();
  } catch (const std::exception& e) {
    out.error = std::string("error: ") + e.what();
  }
}

Pair evaluate(const SideFn& lhs, const SideFn& rhs, const ParamSample& sample, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Pair out;
  RouteCapture cap;
  guarded(out, [&] {
    ParamSample s = lifted(sample);
    out.lhs = lhs(s, ctx);
    out.rhs = rhs(s, ctx);
  });
  out.routes = join(cap.routes);
  return out;
}

bool small(const C& z, int digits) { return abs(z) < pow10(-digits / 2); }

void judge(CheckResult& r, Relation rel, const Real& tol, int digits) {
  r.abs_residual = abs(r.lhs_value - r.rhs_value);
  r.rel_residual = relative_residual(r.lhs_value, r.rhs_value);
  bool holds;
  if (rel == Relation::LessThan) {
    Real im_tol = pow10(-digits / 2);
    holds = abs(C(r.lhs_value.im())) <= im_tol * std::max(Real(1), abs(r.lhs_value)) &&
            abs(C(r.rhs_value.im())) <= im_tol * std::max(Real(1), abs(r.rhs_value)) &&
            r.lhs_value.re() < r.rhs_value.re();
    Real excess = r.lhs_value.re() - r.rhs_value.re();
    r.residual = excess > 0 ? Real(excess / std::max(abs(r.rhs_value), pow10(-digits))) : Real(0);
  } else {
    bool tiny = small(r.lhs_value, digits) && small(r.rhs_value, digits);
    r.residual = tiny ? std::min(r.rel_residual, r.abs_residual) : r.rel_residual;
    holds = r.residual <= tol;
  }
  r.verdict = holds ? Verdict::Holds : Verdict::Fails;
}

CheckResult check_pair(const std::string& id, Relation rel, const SideFn& lhs, const SideFn& rhs,
                       const ParamSample& sample, const Real& tol, const PrecisionContext& ctx) {
  CheckResult r;
  r.identity_id = id;
  r.sample = sample;
  PrecisionContext cur = ctx;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Pair p = evaluate(lhs, rhs, sample, cur);
    r.digits_used = cur.digits;
    if (!p.error.empty()) {
      r.verdict = Verdict::EvalError;
      r.route_notes = p.error;
      r.lhs_value = C();
      r.rhs_value = C();
      r.abs_residual = 0;
      r.rel_residual = 0;
      r.residual = 0;
      return r;
    }
    {
      PrecisionScope scope(cur);
      r.lhs_value = p.lhs;
      r.rhs_value = p.rhs;
      judge(r, rel, tol, cur.digits);
    }
    r.route_notes = p.routes;
    if (r.verdict == Verdict::Holds) break;
    cur = ctx.escalated(20);
  }
  if (r.digits_used != ctx.digits)
    r.route_notes += std::string(r.route_notes.empty() ? "" : "; ") + "re-run at " + std::to_string(r.digits_used) +
                     " digits";
  return r;
}

void validate_tol(const Real& tol, const PrecisionContext& ctx) {
  if (tol < pow10(-ctx.digits + 10))
    throw std::invalid_argument("tolerance below 10^(-digits+10) for digits=" + std::to_string(ctx.digits));
}

}  // namespace

Complex eval_side(const Identity& id, Side side, const ParamSample& sample, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  ParamSample s = lifted(sample);
  if (id.limit && !id.lhs) {
    if (side == Side::Rhs) return id.limit->limit(s, ctx);
    return id.limit->partials(s, kDefaultTruncation, ctx).back();
  }
  return side == Side::Lhs ? id.lhs(s, ctx) : id.rhs(s, ctx);
}

std::vector<ParamSample> sample_domain(const Identity& id, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_domain: count must be >= 1");
  std::vector<ParamSample> out;
  if (!id.grid.empty()) {
    for (size_t i = 0; i < id.grid.size() && static_cast<int>(i) < count; ++i) {
      out.push_back(id.grid[i]);
      out.back().seed = seed;
    }
    return out;
  }
  // Decimal samples are parsed well above any working precision in use.
  PrecisionScope scope(ctx_new(140));
  Rng rng(seed ^ fnv1a(id.id));
  for (int i = 0; i < count; ++i) {
    int tries = 0;
    for (;;) {
      ParamSample s = id.sampler(rng, i);
      if (id.admissible(s)) {
        s.seed = seed;
        out.push_back(std::move(s));
        break;
      }
      if (++tries >= 1000) throw DomainError("sample_domain: domain of " + id.id + " is unsatisfiable");
    }
  }
  return out;
}

std::vector<ParamSample> sample_domain(const std::string& id, int count, std::uint64_t seed) {
  return sample_domain(require(id), count, seed);
}

Real relative_residual(const Complex& l, const Complex& r) {
  Real scale = std::max(abs(l), abs(r));
  if (scale == 0) return Real(0);
  Real floor = scale * pow10(-10);
  auto comp = [&](const Real& a, const Real& b) {
    Real den = std::max({boost::multiprecision::abs(a), boost::multiprecision::abs(b), floor});
    return boost::multiprecision::abs(a - b) / den;
  };
  return std::max(comp(l.re(), r.re()), comp(l.im(), r.im()));
}

CheckResult check(const Identity& id, const ParamSample& sample, const Real& tol, const PrecisionContext& ctx) {
  validate_tol(tol, ctx);
  if (id.limit && !id.lhs) return check_infinite(id, kDefaultTruncation, sample, tol, ctx);
  return check_pair(id.id, id.relation, id.lhs, id.rhs, sample, tol, ctx);
}

CheckResult check(const std::string& id, const ParamSample& sample, const Real& tol, const PrecisionContext& ctx) {
  return check(require(id), sample, tol, ctx);
}

CheckResult check_reading(const Identity& id, const Reading& reading, const ParamSample& sample, const Real& tol,
                          const PrecisionContext& ctx) {
  validate_tol(tol, ctx);
  return check_pair(id.id, id.relation, reading.lhs, reading.rhs, sample, tol, ctx);
}

CheckResult check_infinite(const Identity& id, int truncation, const ParamSample& sample, const Real& tol,
                           const PrecisionContext& ctx) {
  if (!id.limit) throw std::invalid_argument(id.id + " has no limit form");
  if (truncation < 4) throw std::invalid_argument("check_infinite: truncation must be >= 4");
  validate_tol(tol, ctx);
  const LimitSpec& spec = *id.limit;

  CheckResult r;
  r.identity_id = id.id;
  r.sample = sample;
  r.truncation = truncation;
  PrecisionContext cur = ctx;
  for (int attempt = 0; attempt < 2; ++attempt) {
    PrecisionScope scope(cur);
    r.digits_used = cur.digits;
    std::vector<C> P;
    Pair p;
    RouteCapture cap;
    guarded(p, [&] {
      ParamSample s = lifted(sample);
      P = spec.partials(s, truncation, cur);
      p.lhs = P.back();
      p.rhs = spec.limit(s, cur);
    });
    if (!p.error.empty()) {
      r.verdict = Verdict::EvalError;
      r.route_notes = p.error;
      return r;
    }
    r.lhs_value = p.lhs;
    r.rhs_value = p.rhs;
    r.abs_residual = abs(p.lhs - p.rhs);
    r.rel_residual = relative_residual(p.lhs, p.rhs);

    const int N = truncation;
    auto delta = [&](int j) { return abs(P[j - 1] - (j >= 2 ? P[j - 2] : C(1))); };  // P_0 = 1
    Real dN = delta(N), dN1 = delta(N - 1), dN2 = delta(N - 2), dN3 = delta(N - 3);
    Real ratio(spec.ratio);
    Real est = std::max({dN, ratio * dN1, ratio * ratio * dN2}) * ratio / (Real(1) - ratio);
    Real mag = std::max(abs(p.rhs), pow10(-cur.digits));
    r.tail_bound = Real(4) * est + tol * mag;
    r.route_notes = join(cap.routes);
    r.residual = r.abs_residual / mag;
    // Single increments fluctuate when a factor happens to sit near 1, so the
    // trend is judged on pairs.
    if (dN > tol * mag && std::max(dN, dN1) >= std::max(dN2, dN3)) {
      r.verdict = Verdict::EvalError;
      r.route_notes = "non-converged: tail estimate not decreasing at N=" + std::to_string(N);
      return r;
    }
    r.verdict = r.abs_residual <= r.tail_bound ? Verdict::Holds : Verdict::Fails;
    if (r.verdict == Verdict::Holds) break;
    cur = ctx.escalated(20);
  }
  if (r.digits_used != ctx.digits)
    r.route_notes += std::string(r.route_notes.empty() ? "" : "; ") + "re-run at " + std::to_string(r.digits_used) +
                     " digits";
  return r;
}

IdentityRun run_identity(const Identity& id, const RunOptions& opt, const PrecisionContext& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  IdentityRun run;
  run.id = id.id;
  std::vector<ParamSample> samples;
  try {
    samples = sample_domain(id, opt.samples, opt.seed);
  } catch (const std::exception& e) {
    CheckResult r;
    r.identity_id = id.id;
    r.verdict = Verdict::EvalError;
    r.route_notes = e.what();
    run.results.push_back(r);
  }
  for (const auto& s : samples) {
    if (id.limit && !id.lhs)
      run.results.push_back(check_infinite(id, opt.truncation, s, opt.tol, ctx));
    else
      run.results.push_back(check(id, s, opt.tol, ctx));
  }

  int failed = 0;
  for (const auto& r : run.results) failed += r.verdict == Verdict::Fails;
  const int total = static_cast<int>(run.results.size());
  if (failed >= opt.systematic_threshold) {
    run.systematic_failure = true;
    std::string head = "as written: " + std::to_string(failed) + "/" + std::to_string(total) + " samples fail at " +
                       std::to_string(ctx.digits) + " and " + std::to_string(ctx.digits + 20) + " digits";
    bool alternate_ok = false;
    if (id.alternate) {
      run.alternate_tested = true;
      run.alternate_description = id.alternate->description;
      for (const auto& s : samples) {
        CheckResult a = check_reading(id, *id.alternate, s, opt.tol, ctx);
        ++run.alternate_total;
        run.alternate_holds += a.verdict == Verdict::Holds;
      }
      alternate_ok = run.alternate_holds == run.alternate_total;
      run.discrepancy_note = head + "; alternate reading (" + id.alternate->description + ") holds on " +
                             std::to_string(run.alternate_holds) + "/" + std::to_string(run.alternate_total) +
                             " samples";
    } else {
      run.discrepancy_note = head + "; no alternate reading registered";
    }
    // core identities that fail under every reading stay failures
    bool relabel = alternate_ok || id.tier != Tier::Core;
    if (!alternate_ok && relabel) run.discrepancy_note += "; fails under both readings";
    if (relabel)
      for (auto& r : run.results)
        if (r.verdict == Verdict::Fails) r.verdict = Verdict::SuspectedPaperDiscrepancy;
  }

  run.worst_residual = 0;
  for (const auto& r : run.results)
    if (r.verdict != Verdict::EvalError && r.residual > run.worst_residual) run.worst_residual = r.residual;
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace lerchkit::ident
