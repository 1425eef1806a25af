#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lerchkit/identities.hpp"
#include "lerchkit/lerch.hpp"

#include <set>

using namespace lerchkit;
using namespace lerchkit::ident;

namespace {

PrecisionContext ctx50() { return ctx_new(50); }

Complex C(const char* re, const char* im = "0") { return Complex::parse(std::string(re) + "," + im); }

ParamSample S(std::initializer_list<std::pair<const char*, Complex>> kv) {
  ParamSample s;
  for (const auto& [k, v] : kv) s.values[k] = v;
  return s;
}

Real tol40() { return pow10(-40); }

}  // namespace

TEST_CASE("registry contents") {
  PrecisionScope scope(ctx50());
  const auto& reg = registry();
  CHECK(reg.size() >= 38);
  std::set<std::string> ids;
  for (const auto& id : reg) {
    CHECK_MESSAGE(!id.anchor.empty(), id.id);
    CHECK_MESSAGE(!id.title.empty(), id.id);
    CHECK_MESSAGE(ids.insert(id.id).second, "duplicate " << id.id);
    CHECK_MESSAGE(((id.lhs && id.rhs) || id.limit.has_value()), id.id);
  }
  for (const char* want :
       {"DEG-SS", "DEG-CC", "DEG-SS1", "THM-SS", "THM-CC", "THM-SS1", "FE-9A", "FE-3", "FE-9B", "GP-SS",
        "GP-SS-INF", "CP-SS", "CP-SS-INF", "QG-SS", "QG-SS-INF", "CJ-SS", "CJ-SS-INF", "ELL", "GP-CC", "GP-CC-INF",
        "TH-CC", "TH-CC-INF", "QG-CC1", "QG-CC1-BOUND", "CC-COSCOS", "CC-COSCOS-INF", "PHI-PROD-1", "PHI-PROD-2",
        "GK-CC", "AP-CC", "CAT-CC-1", "CAT-CC-2", "CAT-CC-3", "CAT-SS", "GK-SS", "AP-SS", "CAT-SS-2", "GP-SS1-A",
        "GP-SS1-B", "CH-SS1-A", "CH-SS1-B", "POLY", "POLY-INF", "POLY-BINOM", "CAT-SS1-A", "CAT-SS1-B", "GK-SS1",
        "AP-SS1"})
    CHECK_MESSAGE(lookup(want) != nullptr, want);
  REQUIRE(lookup("THM-SS"));
  CHECK(lookup("THM-SS")->tier == Tier::Core);
  CHECK(lookup("NOPE") == nullptr);
}

TEST_CASE("glob matching") {
  CHECK(glob_match("*", "THM-SS"));
  CHECK(glob_match("THM-*", "THM-SS1"));
  CHECK(glob_match("DEG-S?", "DEG-SS"));
  CHECK_FALSE(glob_match("DEG-S?", "DEG-SS1"));
  CHECK_FALSE(glob_match("ZZZ", "THM-SS"));
  CHECK(glob_match("*-INF", "GP-SS-INF"));
}

TEST_CASE("sample_domain") {
  SUBCASE("THM-SS keeps Im m > 0 and forces integer k") {
    auto s = sample_domain("THM-SS", 5, 42);
    REQUIRE(s.size() == 5);
    PrecisionScope scope(ctx50());
    const long forced[] = {0, 1, 2, -1, -2};
    for (int i = 0; i < 5; ++i) {
      CHECK(s[i].at("m").im() > 0);
      CHECK(s[i].at("k").re() == forced[i]);
      CHECK(s[i].at("k").im() == 0);
      long n = s[i].integer("n");
      CHECK((n >= 1 && n <= 4));
    }
  }
  SUBCASE("GP-SS avoids the pole set") {
    auto s = sample_domain("GP-SS", 3, 7);
    REQUIRE(s.size() == 3);
    for (const auto& x : s) {
      double a = x.at("a").re().convert_to<double>();
      CHECK(a > 0.2);
      CHECK(a < 3);
      for (double bad : {1.0, 2.0, 3.0}) CHECK(std::fabs(a - bad) > 0.01);
    }
  }
  SUBCASE("deterministic") {
    for (const char* id : {"THM-CC", "FE-9A", "POLY", "PHI-PROD-2"}) {
      auto a = sample_domain(id, 6, 99), b = sample_domain(id, 6, 99), c = sample_domain(id, 6, 100);
      for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].describe() == b[i].describe());
      CHECK(a[0].describe() != c[0].describe());
    }
  }
  SUBCASE("discrete domains enumerate n") {
    auto s = sample_domain("CAT-SS", 25, 1);
    REQUIRE(s.size() == 5);
    CHECK(s[0].integer("n") == 1);
    CHECK(s[4].integer("n") == 5);
  }
  CHECK_THROWS_AS(sample_domain("DEG-SS", 0, 1), std::invalid_argument);
}

TEST_CASE("check examples") {
  auto ctx = ctx50();
  PrecisionScope scope(ctx);
  SUBCASE("DEG-CC holds") {
    auto r = check("DEG-CC", S({{"m", C("1.1")}, {"n", Complex(4)}}), tol40(), ctx);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.residual <= tol40());
  }
  SUBCASE("DEG-SS at a secant pole is an eval-error") {
    auto r = check("DEG-SS", S({{"m", Complex(real_pi() / 6)}, {"n", Complex(1)}}), tol40(), ctx);
    CHECK(r.verdict == Verdict::EvalError);
    CHECK(r.route_notes.find("domain") != std::string::npos);
  }
  SUBCASE("AP-SS ignores an extra n") {
    auto r = check("AP-SS", S({{"n", Complex(3)}}), tol40(), ctx);
    CHECK(r.verdict == Verdict::Holds);
    Real p = real_pi();
    Real expect = Real(14) * Real("1.202056903159594285399738161511449990764986292340498881792271555341838") /
                  (Real(9) * p * p);
    CHECK(abs(r.rhs_value - Complex(expect)) < pow10(-55));
  }
  SUBCASE("DEG-SS sides agree to 50 digits") {
    auto s = S({{"m", C("0.7")}, {"n", Complex(3)}});
    const Identity& id = *lookup("DEG-SS");
    Complex l = eval_side(id, Side::Lhs, s, ctx), r = eval_side(id, Side::Rhs, s, ctx);
    CHECK(relative_residual(l, r) < pow10(-50));
  }
  SUBCASE("THM-CC at k = 0 is i times the DEG-CC sum") {
    Complex m = C("0.4", "0.3");
    Complex thm = eval_side(*lookup("THM-CC"), Side::Lhs,
                            S({{"k", Complex(0)}, {"a", Complex(1)}, {"m", m}, {"n", Complex(2)}}), ctx);
    Complex deg = eval_side(*lookup("DEG-CC"), Side::Lhs, S({{"m", m}, {"n", Complex(2)}}), ctx);
    CHECK(relative_residual(thm, Complex::i() * deg) < pow10(-50));
  }
  SUBCASE("FE-3 left side is Phi itself") {
    Complex z = C("0.3", "0.2"), s = C("1.7", "-0.4"), a = C("0.9");
    Complex l = eval_side(*lookup("FE-3"), Side::Lhs, S({{"z", z}, {"s", s}, {"a", a}}), ctx);
    CHECK(relative_residual(l, lerch_phi({z, s, a}, ctx).value) < pow10(-55));
  }
  SUBCASE("missing parameters never throw") {
    auto r = check("DEG-SS", S({{"m", C("0.3")}}), tol40(), ctx);
    CHECK(r.verdict == Verdict::EvalError);
  }
  SUBCASE("tolerance floor") {
    CHECK_THROWS_AS(check("THM-SS", S({}), pow10(-50), ctx_new(30)), std::invalid_argument);
  }
}

TEST_CASE("check_infinite examples") {
  auto ctx = ctx50();
  PrecisionScope scope(ctx);
  auto cp = check_infinite(*lookup("CP-SS-INF"), 12, S({{"m", C("0.3")}, {"r", C("0.5")}}), tol40(), ctx);
  CHECK(cp.verdict == Verdict::Holds);
  CHECK(cp.abs_residual <= cp.tail_bound);
  auto gp = check_infinite(*lookup("GP-SS-INF"), 12, S({{"a", C("1.3")}}), tol40(), ctx);
  CHECK(gp.verdict == Verdict::Holds);
  auto poly = check_infinite(*lookup("POLY-INF"), 12, S({{"z", C("0.4")}}), tol40(), ctx);
  CHECK(poly.verdict == Verdict::Holds);
  CHECK(poly.rhs_value.re() == 1);
  CHECK_THROWS_AS(check_infinite(*lookup("POLY-INF"), 3, S({{"z", C("0.4")}}), tol40(), ctx),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_infinite(*lookup("DEG-SS"), 12, S({}), tol40(), ctx), std::invalid_argument);
}

TEST_CASE("k = 0 reduction on the main theorems") {
  auto ctx = ctx50();
  for (const char* id : {"THM-SS", "THM-CC", "THM-SS1"}) {
    auto samples = sample_domain(id, 1, 5);  // index 0 carries k = 0
    PrecisionScope scope(ctx);
    REQUIRE(samples[0].at("k").is_zero());
    auto r = check(id, samples[0], tol40(), ctx);
    CHECK_MESSAGE(r.verdict == Verdict::Holds, id);
  }
}

TEST_CASE("precision escalation shrinks residuals") {
  auto c50 = ctx50();
  auto c70 = c50.escalated(20);
  for (const char* id : {"DEG-SS", "DEG-SS1", "THM-SS", "THM-CC", "THM-SS1", "FE-9B", "GP-SS", "CJ-SS", "CAT-CC-1",
                         "GK-SS1", "PHI-PROD-1"}) {
    for (const auto& s : sample_domain(id, 4, 11)) {
      auto r50 = check(id, s, tol40(), c50);
      auto r70 = check(id, s, tol40(), c70);
      REQUIRE_MESSAGE(r50.verdict == Verdict::Holds, id << " " << s.describe());
      REQUIRE_MESSAGE(r70.verdict == Verdict::Holds, id << " " << s.describe());
      PrecisionScope scope(c70);
      Real base = std::max(r50.residual, pow10(-50));
      CHECK_MESSAGE(r70.residual <= base * pow10(-10),
                    id << " " << format_residual(r50.residual) << " -> " << format_residual(r70.residual));
    }
  }
}

TEST_CASE("summation order does not matter") {
  auto ctx = ctx50();
  for (const char* id : {"DEG-SS", "DEG-CC", "THM-SS", "THM-SS1", "CAT-SS", "CAT-SS-2", "GP-SS", "POLY"}) {
    for (const auto& s : sample_domain(id, 3, 3)) {
      const Identity& ident = *lookup(id);
      Complex fwd = eval_side(ident, Side::Lhs, s, ctx);
      Complex rev;
      {
        ReverseSummation guard;
        rev = eval_side(ident, Side::Lhs, s, ctx);
      }
      PrecisionScope scope(ctx);
      CHECK_MESSAGE(abs(fwd - rev) <= pow10(-ctx.digits + 5) * std::max(Real(1), abs(fwd)), id);
    }
  }
}

TEST_CASE("POLY-BINOM matches the product form") {
  auto ctx = ctx50();
  RunOptions opt;
  {
    PrecisionScope scope(ctx);
    opt.tol = tol40();
  }
  opt.samples = 20;
  auto run = run_identity(*lookup("POLY-BINOM"), opt, ctx);
  REQUIRE(run.results.size() == 20);
  for (const auto& r : run.results) CHECK(r.verdict == Verdict::Holds);
}

TEST_CASE("strict inequality") {
  auto ctx = ctx50();
  PrecisionScope scope(ctx);
  const Identity& id = *lookup("QG-CC1-BOUND");
  CHECK(id.relation == Relation::LessThan);
  for (long n = 1; n <= 10; ++n) {
    auto r = check(id, S({{"a", C("1.7")}, {"n", Complex(n)}}), tol40(), ctx);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.residual == 0);
  }
}

TEST_CASE("residual definition") {
  PrecisionScope scope(ctx50());
  // componentwise: a 1e-30 imaginary part against an exactly real value
  Real rr = relative_residual(Complex(Real(1), pow10(-30)), Complex(1));
  CHECK(abs(Complex(rr - pow10(-20))) < pow10(-35));
  CHECK(relative_residual(Complex(2), Complex(2)) == 0);
  CHECK(relative_residual(Complex(0), Complex(0)) == 0);
}

namespace {

Identity synthetic(Tier tier, bool with_alternate) {
  Identity id;
  id.id = "SYN";
  id.title = "synthetic";
  id.anchor = "1 = 2";
  id.tier = tier;
  id.params = {{"x", "real"}};
  id.lhs = [](const ParamSample& s, const PrecisionContext&) { return s.at("x"); };
  id.rhs = [](const ParamSample& s, const PrecisionContext&) { return s.at("x") * Real(2); };
  id.sampler = [](Rng& rng, int) {
    ParamSample s;
    s.set("x", rng.real(1, 2));
    return s;
  };
  id.admissible = [](const ParamSample&) { return true; };
  if (with_alternate)
    id.alternate = Reading{"double the left side",
                           [](const ParamSample& s, const PrecisionContext&) { return s.at("x") * Real(2); },
                           [](const ParamSample& s, const PrecisionContext&) { return s.at("x") * Real(2); }};
  return id;
}

}  // namespace

TEST_CASE("discrepancy protocol") {
  auto ctx = ctx50();
  RunOptions opt;
  {
    PrecisionScope scope(ctx);
    opt.tol = tol40();
  }
  auto count = [](const IdentityRun& run, Verdict v) {
    int c = 0;
    for (const auto& r : run.results) c += r.verdict == v;
    return c;
  };
  SUBCASE("CC-COSCOS as written is flagged and the alternate reading holds") {
    auto run = run_identity(*lookup("CC-COSCOS"), opt, ctx);
    CHECK(run.systematic_failure);
    CHECK(run.alternate_tested);
    CHECK(run.alternate_total == 25);
    CHECK(run.alternate_holds == 25);
    CHECK(count(run, Verdict::SuspectedPaperDiscrepancy) >= 10);
    CHECK(count(run, Verdict::Fails) == 0);
    CHECK(run.discrepancy_note.find("alternate reading") != std::string::npos);
  }
  SUBCASE("core identity failing under both readings stays a failure") {
    auto run = run_identity(synthetic(Tier::Core, false), opt, ctx);
    CHECK(run.systematic_failure);
    CHECK(count(run, Verdict::Fails) == 25);
  }
  SUBCASE("non-core identity failing under both readings is a discrepancy") {
    auto run = run_identity(synthetic(Tier::Product, false), opt, ctx);
    CHECK(count(run, Verdict::SuspectedPaperDiscrepancy) == 25);
    CHECK(run.discrepancy_note.find("both readings") != std::string::npos);
  }
  SUBCASE("core identity rescued by its alternate reading") {
    auto run = run_identity(synthetic(Tier::Core, true), opt, ctx);
    CHECK(run.alternate_holds == 25);
    CHECK(count(run, Verdict::SuspectedPaperDiscrepancy) == 25);
  }
  SUBCASE("fewer than ten failures are not systematic") {
    opt.samples = 9;
    auto run = run_identity(synthetic(Tier::Product, true), opt, ctx);
    CHECK_FALSE(run.systematic_failure);
    CHECK(count(run, Verdict::Fails) == 9);
  }
}

TEST_CASE("cancelling sums are re-evaluated at higher precision") {
  // the summands are O(1) while the sum is near 1e-38
  auto ctx = ctx50();
  PrecisionScope scope(ctx);
  auto s = S({{"a", C("2.779102998")},
              {"k", C("-2.624088439", "-1.32686226")},
              {"m", C("0.962869014", "0.4800301261")},
              {"n", Complex(4)}});
  auto r = check("THM-SS1", s, tol40(), ctx);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(abs(r.lhs_value) < pow10(-30));
  CHECK(r.rel_residual < pow10(-45));
}
