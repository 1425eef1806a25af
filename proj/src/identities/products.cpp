// Finite and infinite products (gamma quotients, trigonometric and
// hyperbolic quotients, polynomial products, exponentials of Phi sums).

#include "common.hpp"

namespace lerchkit::ident {

using namespace detail;

namespace {

using FactorFn = std::function<C(const ParamSample&, long)>;
using Admit = std::function<bool(const ParamSample&, long top)>;

constexpr long kInfTop = 12;  // factors screened for poles in the *-INF samplers
constexpr double kMargin = 1e-3;

SideFn prod_side(FactorFn f) {
  return [f](const ParamSample& s, const PrecisionContext&) {
    return pprod(s.integer("n"), [&](long p) { return f(s, p); });
  };
}

LimitSpec limit_of(FactorFn f, SideFn lim, double ratio) {
  LimitSpec spec;
  spec.partials = [f](const ParamSample& s, int N, const PrecisionContext&) {
    return partial_products(N, [&](long p) { return f(s, p); });
  };
  spec.limit = std::move(lim);
  spec.ratio = ratio;
  return spec;
}

struct ProductDef {
  std::string id, title, anchor;
  std::vector<ParamSpec> params;  // without n
  std::function<ParamSample(Rng&)> draw;
  long n_max = 5;
  FactorFn factor;
  SideFn rhs;
  Admit admit;
};

struct LimitDef {
  std::string id, title, anchor;
  FactorFn factor;  // may differ from the finite factor (exponent rescaling)
  SideFn limit;
  double ratio = 1.0 / 3.0;
};

// Finite product with n plus optional infinite companion.
void add_product(std::vector<Identity>& out, const ProductDef& def, const LimitDef* inf) {
  Identity id;
  id.id = def.id;
  id.title = def.title;
  id.anchor = def.anchor;
  id.tier = Tier::Product;
  id.params = def.params;
  id.params.push_back({"n", "integer, 1.." + std::to_string(def.n_max)});
  id.lhs = prod_side(def.factor);
  id.rhs = def.rhs;
  auto draw = def.draw;
  long n_max = def.n_max;
  id.sampler = [draw, n_max](Rng& rng, int) {
    ParamSample s = draw(rng);
    s.set("n", C(rng.integer(1, n_max)));
    return s;
  };
  auto admit = def.admit;
  id.admissible = [admit](const ParamSample& s) { return admit(s, s.integer("n")); };
  out.push_back(std::move(id));

  if (!inf) return;
  Identity lim;
  lim.id = inf->id;
  lim.title = inf->title;
  lim.anchor = inf->anchor;
  lim.tier = Tier::Limit;
  lim.params = def.params;
  lim.sampler = [draw](Rng& rng, int) { return draw(rng); };
  lim.admissible = [admit](const ParamSample& s) { return admit(s, kInfTop); };
  lim.limit = limit_of(inf->factor, inf->limit, inf->ratio);
  out.push_back(std::move(lim));
}

bool off(double x, double bad, double margin = 0.02) { return std::fabs(x - bad) > margin; }

// Gamma-product samplers keep a a little away from the integer pole set.
bool a_off_3p(double a, long top, bool twice) {
  for (long p = 0; p < top; ++p) {
    if (!off(a, p3d(p))) return false;
    if (twice && !off(a, 2 * p3d(p))) return false;
  }
  return true;
}

ParamSample draw_a(Rng& rng, double lo, double hi) { return make({{"a", rng.real(lo, hi)}}); }

// --- coscos factor shared by the finite and infinite forms ---
C coscos_factor(const C& x, long p) {
  C s3 = sqrt(R(3));
  C t0 = tanh(p3(p) * x / Real(2)), t1 = tanh(p3(p + 1) * x / Real(2));
  C e = p3(-p - 1);
  C f = pow((s3 + I() * t0) * (s3 - R(3) * I() * t1) / ((s3 - R(3) * I() * t0) * (s3 + I() * t1)), e);
  f *= pow(t1 * coth(p3(p) * x / Real(2)), R(2) * e);
  C dd = atanh((R(1) - I() * s3 * t0) / Real(2)) - atanh((R(1) - I() * s3 * t1) / Real(2));
  f *= sinh(R(2) * e * dd) + cosh(R(2) * e * dd);
  return f;
}

C coscos_rhs(const C& x, long n) {
  C c = cos(x / Real(3));
  return (R(2) * c + R(1)) * pow(tan(p3(n - 1) * x / Real(2)) * cot(p3(n) * x / Real(2)), p3(-n)) /
         (R(2) * c - R(1));
}

// --- POLY factor ---
C poly_factor(const C& z, long p) {
  C w = p == 0 ? pow(z, R(1, 3)) : pow(z, static_cast<long>(p3d(p - 1)));
  C zq = pow(z, static_cast<long>(p3d(p)));
  return pow(zq + R(1), p3(-2 * p - 1)) *
         pow(sqrt((w - R(1)) * w + R(1)) / (w + R(1)), p3(-2 * p) * (p3(p) - R(1)));
}

C poly_exponent(long n) { return p3(1 - 2 * n) * (p3(n) - R(1)) / Real(2); }

}  // namespace

void add_products(std::vector<Identity>& out) {
  // GP-SS
  {
    ProductDef def;
    def.id = "GP-SS";
    def.title = "Finite product of gamma quotients";
    def.anchor =
        "prod_{p<n} (G(a/3q+1/2)/G(a/3q+1))^(2/3q) (9^(p+1) G(a/3q+1/6) G(a/3q+5/6)"
        " / ((q-a)(2q-a) G((a/q-2)/3) G((a/q-1)/3)))^(1/q), q=3^p"
        " = 3^(3/4 (1-3^-n)) G(a+1/2) (G(a/3^n+1)/G(a/3^n+1/2))^(3^-n) / G(a+1)";
    def.params = {{"a", "real, (0.2, 3), off {3^p, 2*3^p}"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.2, 3); };
    def.factor = [](const ParamSample& s, long p) {
      C a = s.at("a"), q = p3(p);
      C u = a / (R(3) * q);
      C f1 = pow(gam(u + R(1, 2)) / gam(u + R(1)), R(2) / (R(3) * q));
      C f2 = pow(pow(R(9), p + 1) * gam(u + R(1, 6)) * gam(u + R(5, 6)) /
                     ((q - a) * (R(2) * q - a) * gam((a / q - R(2)) / Real(3)) * gam((a / q - R(1)) / Real(3))),
                 R(1) / q);
      return f1 * f2;
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      C Qi = p3(-n);
      return p3(R(3, 4) * (R(1) - Qi)) * gam(a + R(1, 2)) *
             pow(gam(a * Qi + R(1)) / gam(a * Qi + R(1, 2)), Qi) / gam(a + R(1));
    };
    def.admit = [](const ParamSample& s, long top) { return a_off_3p(d(s.at("a")), top, true); };
    LimitDef inf{"GP-SS-INF", "Infinite product of gamma quotients",
                 "prod_{p>=0} (same factors) = 3^(3/4) G(a+1/2) / G(a+1)", def.factor,
                 [](const ParamSample& s, const PrecisionContext&) {
                   C a = s.at("a");
                   return p3(R(3, 4)) * gam(a + R(1, 2)) / gam(a + R(1));
                 },
                 1.0 / 3.0};
    add_product(out, def, &inf);
  }

  // CP-SS
  {
    ProductDef def;
    def.id = "CP-SS";
    def.title = "Finite product of roots of cosine quotients";
    def.anchor =
        "prod_{p<n} ((cos(qm)/cos(qr))^16 (1-2cos(2qr))^2 / (1-2cos(2qm))^2)^(9^-p), q=3^p"
        " = (cos m/cos r)^18 ((cos(3^n r)/cos(3^n m))^2)^(3^(2-2n))";
    def.params = {{"m", "real, (-1.5, 1.5)"}, {"r", "real, (-1.5, 1.5)"}};
    def.draw = [](Rng& rng) { return make({{"m", rng.real(-1.5, 1.5)}, {"r", rng.real(-1.5, 1.5)}}); };
    auto base = [](const ParamSample& s, long p) {
      C m = s.at("m"), r = s.at("r"), q = p3(p);
      C a = R(1) - R(2) * cos(R(2) * q * r), b = R(1) - R(2) * cos(R(2) * q * m);
      if (abs(b) < pow10(-current_context().digits)) throw DomainError("CP-SS: 1 - 2cos(2qm) = 0");
      return pow(cos(q * m) * sec(q * r), 16L) * a * a / (b * b);
    };
    def.factor = [base](const ParamSample& s, long p) { return pow(base(s, p), p3(-2 * p)); };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m"), r = s.at("r");
      long n = s.integer("n");
      C Q = p3(n);
      return pow(cos(m) * sec(r), 18L) * pow(pow(cos(Q * r) * sec(Q * m), 2L), p3(2 - 2 * n));
    };
    def.admit = [](const ParamSample& s, long top) {
      double m = d(s.at("m")), r = d(s.at("r"));
      for (long j = 0; j <= top; ++j) {
        double q = p3d(j);
        if (std::fabs(std::cos(q * m)) < kMargin || std::fabs(std::cos(q * r)) < kMargin) return false;
        if (j < top && (std::fabs(1 - 2 * std::cos(2 * q * m)) < kMargin || std::fabs(1 - 2 * std::cos(2 * q * r)) < kMargin))
          return false;
      }
      return true;
    };
    LimitDef inf{"CP-SS-INF", "Infinite product of roots of cosine quotients",
                 "prod_{p>=0} ((cos(qm)/cos(qr))^16 (1-2cos(2qr))^2 / (1-2cos(2qm))^2)^(9^-p/18) = cos m / cos r",
                 [base](const ParamSample& s, long p) { return pow(base(s, p), p3(-2 * p) / Real(18)); },
                 [](const ParamSample& s, const PrecisionContext&) { return cos(s.at("m")) / cos(s.at("r")); },
                 1.0 / 9.0};
    add_product(out, def, &inf);
  }

  // QG-SS
  {
    ProductDef def;
    def.id = "QG-SS";
    def.title = "Finite product of quotient gamma functions with powers of 3";
    def.anchor =
        "prod_{p<n} (3^(a/q+2p) G(a/3q-1) / ((a^2-3aq+2q^2) G(a/3q+1)^(2/3) G(a/q-3)))^(1/q), q=3^p"
        " = 3^(9^-n (9a(9^n-1) + 8*3^n(3^(n+1)-n-3))/8) a^(3^-n) G(a/3^n)^(3^-n) / G(a+1)";
    def.params = {{"a", "real, (0.2, 3), off {3^p, 2*3^p}"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.2, 3); };
    def.factor = [](const ParamSample& s, long p) {
      C a = s.at("a"), q = p3(p);
      C num = p3(a / q + R(2 * p)) * gam(a / (R(3) * q) - R(1));
      C den = (a * a - R(3) * a * q + R(2) * q * q) * pow(gam(a / (R(3) * q) + R(1)), R(2, 3)) * gam(a / q - R(3));
      return pow(num / den, R(1) / q);
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      C Q = p3(n), Qi = p3(-n);
      C ex = pow(R(9), -n) * (R(9) * a * (pow(R(9), n) - R(1)) + R(8) * Q * (R(-n) + R(3) * Q - R(3))) / Real(8);
      return p3(ex) * pow(a, Qi) * pow(gam(a * Qi), Qi) / gam(a + R(1));
    };
    def.admit = [](const ParamSample& s, long top) {
      double a = d(s.at("a"));
      return a_off_3p(a, top + 1, true);
    };
    LimitDef inf{"QG-SS-INF", "Infinite product of quotient gamma functions with powers of 3",
                 "prod_{p>=0} (same factors) = 3^(9a/8+3) / G(a+1)", def.factor,
                 [](const ParamSample& s, const PrecisionContext&) {
                   C a = s.at("a");
                   return p3(R(9) * a / Real(8) + R(3)) / gam(a + R(1));
                 },
                 1.0 / 3.0};
    add_product(out, def, &inf);
  }

  // CJ-SS
  {
    ProductDef def;
    def.id = "CJ-SS";
    def.title = "Finite product involving cosh and exponentials";
    def.anchor =
        "prod_{p<n} ((e^(-6qm)+1)^(2/3) cosh^2(qm) / (2cosh(2qm)-1))^(9^-p), q=3^p"
        " = 2^(3/4 (1+3^(1-2n))) cosh^3 m / (e^(3m) (1+e^(-2 3^n m))^(3^(1-2n)))";
    def.params = {{"m", "real, (0.05, 2)"}};
    def.draw = [](Rng& rng) { return make({{"m", rng.real(0.05, 2)}}); };
    auto base = [](const ParamSample& s, long p) {
      C m = s.at("m"), q = p3(p);
      C ch = cosh(q * m);
      return pow(exp(-R(6) * q * m) + R(1), R(2, 3)) * ch * ch / (R(2) * cosh(R(2) * q * m) - R(1));
    };
    def.factor = [base](const ParamSample& s, long p) { return pow(base(s, p), p3(-2 * p)); };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      C ch = cosh(m);
      return pow(R(2), R(3, 4) * (R(1) + p3(1 - 2 * n))) * ch * ch * ch /
             (exp(R(3) * m) * pow(R(1) + exp(-R(2) * p3(n) * m), p3(1 - 2 * n)));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    LimitDef inf{"CJ-SS-INF", "Infinite product involving cosh and exponentials",
                 "prod_{p>=0} ((e^(-6qm)+1)^(2/3) cosh^2(qm) / (2cosh(2qm)-1))^(3^(-2p-1)) = (e^(-2m)+1) / 2^(3/4)",
                 [base](const ParamSample& s, long p) { return pow(base(s, p), p3(-2 * p - 1)); },
                 [](const ParamSample& s, const PrecisionContext&) {
                   return (exp(-R(2) * s.at("m")) + R(1)) / pow(R(2), R(3, 4));
                 },
                 1.0 / 9.0};
    add_product(out, def, &inf);
  }

  // ELL: infinite only
  {
    Identity id;
    id.id = "ELL";
    id.title = "Infinite product with elliptic-type arguments";
    id.anchor =
        "prod_{p>=0} (cos^16(qx) (1-2cos(2qy))^2 sec^16(qy) / (1-2cos(2qx))^2)^(3^(-2-2p)/2),"
        " x=k sin a, y=k sin b, q=3^p = cos(k sin a) / cos(k sin b)";
    id.tier = Tier::Limit;
    id.params = {{"k", "real, (0.1, 1)"}, {"a", "real, (-1.5, 1.5)"}, {"b", "real, (-1.5, 1.5)"}};
    id.sampler = [](Rng& rng, int) {
      return make({{"k", rng.real(0.1, 1)}, {"a", rng.real(-1.5, 1.5)}, {"b", rng.real(-1.5, 1.5)}});
    };
    id.admissible = [](const ParamSample& s) {
      double k = d(s.at("k"));
      double x = k * std::sin(d(s.at("a"))), y = k * std::sin(d(s.at("b")));
      for (long j = 0; j < kInfTop; ++j) {
        double q = p3d(j);
        if (std::fabs(std::cos(q * y)) < kMargin || std::fabs(std::cos(q * x)) < kMargin) return false;
        if (std::fabs(1 - 2 * std::cos(2 * q * x)) < kMargin) return false;
      }
      return true;
    };
    FactorFn factor = [](const ParamSample& s, long p) {
      C k = s.at("k");
      C x = k * sin(s.at("a")), y = k * sin(s.at("b"));
      C q = p3(p);
      C a = R(1) - R(2) * cos(R(2) * q * y), b = R(1) - R(2) * cos(R(2) * q * x);
      C base = pow(cos(q * x) * sec(q * y), 16L) * a * a / (b * b);
      return pow(base, p3(-2 - 2 * p) / Real(2));
    };
    id.limit = limit_of(
        factor,
        [](const ParamSample& s, const PrecisionContext&) {
          C k = s.at("k");
          return cos(k * sin(s.at("a"))) / cos(k * sin(s.at("b")));
        },
        1.0 / 9.0);
    id.notes = "checked in the product-versus-cosine-ratio form only";
    out.push_back(std::move(id));
  }

  // GP-CC
  {
    ProductDef def;
    def.id = "GP-CC";
    def.title = "Finite product of gamma functions";
    def.anchor =
        "prod_{p<n} G((a/q+1)/6) G((a/q+5)/6) / (2 pi), q=3^p"
        " = 3^(-a 3^(1-n) (3^n-1)/4) G((a+1)/2) / G((a/3^n+1)/2)";
    def.params = {{"a", "real, (0.1, 5)"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.1, 5); };
    def.factor = [](const ParamSample& s, long p) {
      C u = s.at("a") / p3(p);
      return gam((u + R(1)) / Real(6)) * gam((u + R(5)) / Real(6)) / (R(2) * pi());
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      return p3(-a * p3(1 - n) * (p3(n) - R(1)) / Real(4)) * gam((a + R(1)) / Real(2)) /
             gam((a * p3(-n) + R(1)) / Real(2));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    LimitDef inf{"GP-CC-INF", "Infinite product of gamma functions",
                 "prod_{p>=0} G((a/q+1)/6) G((a/q+5)/6) / (2 pi) = 3^(-3a/4) G((a+1)/2) / sqrt(pi)", def.factor,
                 [](const ParamSample& s, const PrecisionContext&) {
                   C a = s.at("a");
                   return p3(-R(3) * a / Real(4)) * gam((a + R(1)) / Real(2)) / sqrt(C(pi()));
                 },
                 1.0 / 3.0};
    add_product(out, def, &inf);
  }

  // TH-CC
  {
    ProductDef def;
    def.id = "TH-CC";
    def.title = "Finite product of quotient hyperbolic tangents";
    def.anchor =
        "prod_{p<n} ((1+2cosh(2qm))(2cosh(2qr)-1) / ((2cosh(2qm)-1)(1+2cosh(2qr))))^(1/q) (tanh(qr)/tanh(qm))^(2/q), q=3^p"
        " = (tanh(3^n m)/tanh(3^n r))^(3^(1-n)) (tanh r/tanh m)^3";
    def.params = {{"m", "real, (0.05, 2)"}, {"r", "real, (0.05, 2)"}};
    def.draw = [](Rng& rng) { return make({{"m", rng.real(0.05, 2)}, {"r", rng.real(0.05, 2)}}); };
    def.factor = [](const ParamSample& s, long p) {
      C m = s.at("m"), r = s.at("r"), q = p3(p);
      C cm = cosh(R(2) * q * m), cr = cosh(R(2) * q * r);
      C ratio = (R(1) + R(2) * cm) * (R(2) * cr - R(1)) / ((R(2) * cm - R(1)) * (R(1) + R(2) * cr));
      return pow(ratio, R(1) / q) * pow(tanh(q * r) / tanh(q * m), R(2) / q);
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m"), r = s.at("r");
      long n = s.integer("n");
      C Q = p3(n);
      return pow(tanh(Q * m) / tanh(Q * r), p3(1 - n)) * pow(tanh(r) / tanh(m), 3L);
    };
    def.admit = [](const ParamSample&, long) { return true; };
    LimitDef inf{"TH-CC-INF", "Infinite product of quotient hyperbolic tangents",
                 "prod_{p>=0} (same factors) = (tanh r / tanh m)^3", def.factor,
                 [](const ParamSample& s, const PrecisionContext&) {
                   return pow(tanh(s.at("r")) / tanh(s.at("m")), 3L);
                 },
                 1.0 / 9.0};
    add_product(out, def, &inf);
  }

  // QG-CC1 and its bound
  {
    FactorFn factor = [](const ParamSample& s, long p) {
      C u = s.at("a") / p3(p);
      C f = gam((u + R(7)) / Real(12)) * gam((u + R(11)) / Real(12)) /
            (gam((u + R(1)) / Real(12)) * gam((u + R(5)) / Real(12)));
      return p % 2 ? R(1) / f : f;
    };
    ProductDef def;
    def.id = "QG-CC1";
    def.title = "Finite alternating product of gamma quotients";
    def.anchor =
        "prod_{p<n} (G((a/q+7)/12) G((a/q+11)/12) / (G((a/q+1)/12) G((a/q+5)/12)))^((-1)^p), q=3^p"
        " = 3^(((-1)^n-1)/4) G((a+3)/4) (G((a/3^n+1)/4)/G((a/3^n+3)/4))^((-1)^n) / G((a+1)/4)";
    def.params = {{"a", "real, (0.1, 5)"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.1, 5); };
    def.factor = factor;
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      C u = a * p3(-n);
      C g = gam((u + R(1)) / Real(4)) / gam((u + R(3)) / Real(4));
      if (n % 2) g = R(1) / g;
      C pre = n % 2 ? p3(R(-1, 2)) : R(1);
      return pre * gam((a + R(3)) / Real(4)) * g / gam((a + R(1)) / Real(4));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    add_product(out, def, nullptr);

    Identity bound;
    bound.id = "QG-CC1-BOUND";
    bound.title = "Upper bound for the alternating gamma product";
    bound.anchor = "prod_{p<n} (same factors) < G(1/4) G((a+3)/4) / (G(3/4) G((a+1)/4))";
    bound.tier = Tier::Limit;
    bound.relation = Relation::LessThan;
    bound.params = {{"a", "real, (0.1, 5)"}, {"n", "integer, 1..10"}};
    bound.lhs = prod_side(factor);
    bound.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      return gam(R(1, 4)) * gam((a + R(3)) / Real(4)) / (gam(R(3, 4)) * gam((a + R(1)) / Real(4)));
    };
    bound.sampler = [](Rng& rng, int) { return make({{"a", rng.real(0.1, 5)}, {"n", C(rng.integer(1, 10))}}); };
    bound.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(bound));
  }

  // CC-COSCOS
  {
    Identity id;
    id.id = "CC-COSCOS";
    id.title = "Product of tanh and atanh quotients against a cosine ratio";
    id.anchor =
        "prod_{p=0}^{n} ((sqrt3 + i t_p)(sqrt3 - 3i t_{p+1}) / ((sqrt3 - 3i t_p)(sqrt3 + i t_{p+1})))^(3^(-p-1))"
        " (t_{p+1} coth(3^p x/2))^(2 3^(-p-1)) exp(2 3^(-p-1) (atanh((1 - i sqrt3 t_p)/2) - atanh((1 - i sqrt3 t_{p+1})/2))),"
        " t_p = tanh(3^p x/2) = (2cos(x/3)+1) (tan(3^(n-1) x/2) cot(3^n x/2))^(3^-n) / (2cos(x/3)-1)";
    id.tier = Tier::Product;
    id.params = {{"x", "real, (0.1, 2)"}, {"n", "integer, 1..5"}};
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C x = s.at("x");
      return pprod(s.integer("n") + 1, [&](long p) { return coscos_factor(x, p); });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) { return coscos_rhs(s.at("x"), s.integer("n")); };
    id.sampler = [](Rng& rng, int) { return make({{"x", rng.real(0.1, 2)}, {"n", C(rng.integer(1, 5))}}); };
    id.admissible = [](const ParamSample& s) {
      double x = d(s.at("x"));
      long n = s.integer("n");
      return std::fabs(std::sin(p3d(n) * x / 2)) > kMargin && std::fabs(std::cos(p3d(n - 1) * x / 2)) > kMargin &&
             std::fabs(2 * std::cos(x / 3) - 1) > kMargin;
    };
    id.alternate = Reading{
        "product over p = 0..n-1 with the right-hand side taken at 3ix in place of x",
        [](const ParamSample& s, const PrecisionContext&) {
          C x = s.at("x");
          return pprod(s.integer("n"), [&](long p) { return coscos_factor(x, p); });
        },
        [](const ParamSample& s, const PrecisionContext&) {
          return coscos_rhs(R(3) * I() * s.at("x"), s.integer("n"));
        }};
    out.push_back(std::move(id));

    Identity inf;
    inf.id = "CC-COSCOS-INF";
    inf.title = "Infinite product of tanh and atanh quotients";
    inf.anchor = "prod_{p>=0} (same factors) = (2cosh x + 1) / (2cosh x - 1)";
    inf.tier = Tier::Limit;
    inf.params = {{"x", "real, (0.1, 2)"}};
    inf.sampler = [](Rng& rng, int) { return make({{"x", rng.real(0.1, 2)}}); };
    inf.admissible = [](const ParamSample&) { return true; };
    inf.limit = limit_of([](const ParamSample& s, long p) { return coscos_factor(s.at("x"), p); },
                         [](const ParamSample& s, const PrecisionContext&) {
                           C c = cosh(s.at("x"));
                           return (R(2) * c + R(1)) / (R(2) * c - R(1));
                         },
                         1.0 / 9.0);
    out.push_back(std::move(inf));
  }

  // PHI-PROD-1
  {
    Identity id;
    id.id = "PHI-PROD-1";
    id.title = "Exponential of a Phi sum, real exponentials";
    id.anchor =
        "exp(sum_{p<n} 3^-p e^(-5mq) (e^(4mq) Phi(e^(-6qm),1,(1+3^-p)/6) + Phi(e^(-6qm),1,(5+3^-p)/6))), q=3^p"
        " = 2^(-3e^m) (coth m + 1)^(3e^m) exp(-3^(1-n) e^(-m 3^n) Phi(e^(-2 3^n m),1,(1+3^-n)/2))";
    id.tier = Tier::Product;
    id.params = {{"m", "real, (0.1, 2)"}, {"n", "integer, 1..5"}};
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      return exp(psum(s.integer("n"), [&](long p) {
        C q = p3(p), qi = p3(-p);
        C z = exp(-R(6) * q * m);
        return qi * exp(-R(5) * m * q) *
               (exp(R(4) * m * q) * phi(z, R(1), (R(1) + qi) / Real(6)) + phi(z, R(1), (R(5) + qi) / Real(6)));
      }));
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      C Q = p3(n);
      C em = exp(m);
      return pow(R(2), -R(3) * em) * pow(coth(m) + R(1), R(3) * em) *
             exp(-p3(1 - n) * exp(-m * Q) * phi(exp(-R(2) * Q * m), R(1), (R(1) + p3(-n)) / Real(2)));
    };
    id.sampler = [](Rng& rng, int) { return make({{"m", rng.real(0.1, 2)}, {"n", C(rng.integer(1, 5))}}); };
    id.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(id));
  }

  // PHI-PROD-2
  {
    Identity id;
    id.id = "PHI-PROD-2";
    id.title = "Exponential of a Phi sum, unit-circle arguments";
    id.anchor =
        "exp(sum_{p<n} 3^-p e^(imq) (Phi(e^(6iqm),1,(1+3^(n-p))/6) + e^(4imq) Phi(e^(6iqm),1,(5+3^(n-p))/6))), q=3^p"
        " = (1 - e^(2im 3^n))^(3^(1-n) e^(-im 3^n)) exp(3 e^(im) Phi(e^(2im),1,(1+3^n)/2))";
    id.tier = Tier::Product;
    id.params = {{"m", "complex, Re in (-1.5, 1.5), Im = 0 or in (0.02, 0.3)"}, {"n", "integer, 1..5"}};
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      return exp(psum(n, [&](long p) {
        C q = p3(p);
        C z = exp(R(6) * I() * q * m);
        C e1 = exp(I() * m * q);
        C sh = p3(n - p);
        return p3(-p) * e1 *
               (phi(z, R(1), (R(1) + sh) / Real(6)) + pow(e1, 4L) * phi(z, R(1), (R(5) + sh) / Real(6)));
      }));
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      C Q = p3(n);
      // (1 - w)^e through log1p: w can be ~e^-80 while |e| ~ 1e15
      C w = exp(R(2) * I() * m * Q);
      return exp(p3(1 - n) * exp(-I() * m * Q) * log1p(-w)) *
             exp(R(3) * exp(I() * m) * phi(exp(R(2) * I() * m), R(1), (R(1) + Q) / Real(2)));
    };
    id.sampler = [](Rng& rng, int index) {
      C u = rng.real(-1.5, 1.5);
      C w = index % 2 ? rng.real(0.02, 0.3) : C(0);
      return make({{"m", C(u.re(), w.re())}, {"n", C(rng.integer(1, 5))}});
    };
    id.admissible = [](const ParamSample& s) {
      double m = d(s.at("m"));
      long n = s.integer("n");
      if (std::fabs(std::sin(m)) < 0.05) return false;
      for (long j = 1; j <= n; ++j)
        if (std::fabs(std::sin(p3d(j) * m)) < 0.03) return false;
      return true;
    };
    out.push_back(std::move(id));
  }

  // GP-SS1-A
  {
    ProductDef def;
    def.id = "GP-SS1-A";
    def.title = "Finite product of quotient gamma functions, first form";
    def.anchor =
        "prod_{p<n} (1-6q/a)^(2/3q) (G((a/q-6)/12)/G(a/12q))^(2/3q) (3^(-a/4q-2p+3/2) (a^2-12aq+32q^2) G(a/4q-3)"
        " / (G(a/12q-1) G((a/q+2)/12) G((a/q+10)/12)))^(1-1/q), q=3^p"
        " = 2^(3/2 (2n+3^(1-n)-3)) 3^((3-2n-3^(1-n))/4) pi^(3/2 (1-3^-n) - n) (1-2 3^n/a)^(-3^-n) (a-2 3^n)/a"
        " (G((a/3^n-2)/4)/G(a/(4 3^n)))^(1-3^-n)";
    def.params = {{"a", "real, (0.2, 3)"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.2, 3); };
    def.factor = [](const ParamSample& s, long p) {
      C a = s.at("a"), q = p3(p);
      C e = R(2) / (R(3) * q);
      C f = pow(R(1) - R(6) * q / a, e) * pow(gam((a / q - R(6)) / Real(12)) / gam(a / (R(12) * q)), e);
      C g = p3(-a / (R(4) * q) - R(2 * p) + R(3, 2)) * (a * a - R(12) * a * q + R(32) * q * q) *
            gam(a / (R(4) * q) - R(3)) /
            (gam(a / (R(12) * q) - R(1)) * gam((a / q + R(2)) / Real(12)) * gam((a / q + R(10)) / Real(12)));
      return p == 0 ? f : f * pow(g, R(1) - R(1) / q);
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      C Q = p3(n), Qi = p3(-n), t = p3(1 - n);
      return pow(R(2), R(3, 2) * (R(2 * n) + t - R(3))) * p3((R(-2 * n) - t + R(3)) / Real(4)) *
             pow(C(pi()), R(3, 2) * (R(1) - Qi) - R(n)) * pow(R(1) - R(2) * Q / a, -Qi) / a * (a - R(2) * Q) *
             pow(gam((a / Q - R(2)) / Real(4)) / gam(a / (R(4) * Q)), R(1) - Qi);
    };
    def.admit = [](const ParamSample&, long) { return true; };
    add_product(out, def, nullptr);
  }

  // GP-SS1-B
  {
    ProductDef def;
    def.id = "GP-SS1-B";
    def.title = "Finite product of quotient gamma functions, second form";
    def.anchor =
        "prod_{p<n} ((a/q-4)(a/q-2) (a/3q G(a/6q))^(2/3) G((a/q-4)/6) G((a/q-2)/6))^(1-1/q) / G(a/6q)^(2/3), q=3^p"
        " = 2^(3/2 (2n+3^(1-n)-3)) pi^(3/2 (3^-n-1) + n)"
        " 3^((4Q(2(5Q-2)n - 9(Q-1)) - 3a(Q^2-4Q+3))/(16Q^2) - n(n+1)/3) a^(2n/3) (a G(a/2Q))^(1/Q-1), Q=3^n";
    def.params = {{"a", "real, (0.2, 3), off 2"}};
    def.draw = [](Rng& rng) { return draw_a(rng, 0.2, 3); };
    def.factor = [](const ParamSample& s, long p) {
      C a = s.at("a"), q = p3(p);
      C g6 = gam(a / (R(6) * q));
      C den = pow(g6, R(2, 3));
      if (p == 0) return R(1) / den;
      C u = a / q;
      C inner = (u - R(4)) * (u - R(2)) * pow(a / (R(3) * q) * g6, R(2, 3)) * gam((u - R(4)) / Real(6)) *
                gam((u - R(2)) / Real(6));
      return pow(inner, R(1) - R(1) / q) / den;
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C a = s.at("a");
      long n = s.integer("n");
      C Q = p3(n), Qi = p3(-n), t = p3(1 - n);
      C e3 = (R(4) * Q * (R(2) * (R(5) * Q - R(2)) * R(n) - R(9) * (Q - R(1))) -
              R(3) * a * (-R(4) * Q + Q * Q + R(3))) /
                 (R(16) * Q * Q) -
             R(n * (n + 1), 3);
      return pow(R(2), R(3, 2) * (R(2 * n) + t - R(3))) * pow(C(pi()), R(3, 2) * (Qi - R(1)) + R(n)) * p3(e3) *
             pow(a, R(2 * n, 3)) * pow(a * gam(a / (R(2) * Q)), Qi - R(1));
    };
    def.admit = [](const ParamSample& s, long top) {
      double a = d(s.at("a"));
      for (long p = 0; p < top; ++p)
        if (!off(a, 2 * p3d(p), 0.05) || !off(a, 4 * p3d(p), 0.05)) return false;
      return true;
    };
    add_product(out, def, nullptr);
  }

  // CH-SS1-A
  {
    ProductDef def;
    def.id = "CH-SS1-A";
    def.title = "Finite product of cosh quotients in m and r";
    def.anchor =
        "prod_{p<n} ((2cosh(2qm)-1) (cosh(qr)/cosh(qm))^2 / (2cosh(2qr)-1))^(3^(1-2p) (q-1))"
        " (cosh(3qm)/cosh(3qr))^(2 3^(-2p)), q=3^p = (cosh(3^n m)/cosh(3^n r))^(9 (3^n-1)/9^n)";
    def.params = {{"m", "real, (-1.5, 1.5)"}, {"r", "real, (-1.5, 1.5)"}};
    def.draw = [](Rng& rng) { return make({{"m", rng.real(-1.5, 1.5)}, {"r", rng.real(-1.5, 1.5)}}); };
    def.factor = [](const ParamSample& s, long p) {
      C m = s.at("m"), r = s.at("r"), q = p3(p);
      C cr = cosh(q * r) / cosh(q * m);
      C base = (R(2) * cosh(R(2) * q * m) - R(1)) * cr * cr / (R(2) * cosh(R(2) * q * r) - R(1));
      return pow(base, p3(1 - 2 * p) * (q - R(1))) * pow(cosh(R(3) * q * m) / cosh(R(3) * q * r), R(2) * p3(-2 * p));
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m"), r = s.at("r");
      long n = s.integer("n");
      C Q = p3(n);
      return pow(cosh(Q * m) / cosh(Q * r), R(9) * (Q - R(1)) / (Q * Q));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    add_product(out, def, nullptr);
  }

  // CH-SS1-B
  {
    ProductDef def;
    def.id = "CH-SS1-B";
    def.title = "Finite product of cosh quotients in x";
    def.anchor =
        "prod_{p<n} ((1-2cosh(2qx))/(1-2cosh(2qx/3)))^((3q-1)/(2q^2)) (cosh(qx/3)/cosh(qx))^((3q-4)/q^2), q=3^p"
        " = (cosh(3^n x)/cosh(3^n x/3))^(9 (3^n-1)/(2 9^n))";
    def.params = {{"x", "real, (0.05, 2)"}};
    def.draw = [](Rng& rng) { return make({{"x", rng.real(0.05, 2)}}); };
    def.factor = [](const ParamSample& s, long p) {
      C x = s.at("x"), q = p3(p);
      C b = (R(1) - R(2) * cosh(R(2) * q * x)) / (R(1) - R(2) * cosh(R(2) * q * x / Real(3)));
      return pow(b, (R(3) * q - R(1)) / (R(2) * q * q)) *
             pow(cosh(q * x / Real(3)) / cosh(q * x), (R(3) * q - R(4)) / (q * q));
    };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C x = s.at("x");
      long n = s.integer("n");
      C Q = p3(n);
      return pow(cosh(Q * x) / cosh(Q * x / Real(3)), R(9) * (Q - R(1)) / (R(2) * Q * Q));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    add_product(out, def, nullptr);
  }

  // POLY family
  {
    ProductDef def;
    def.id = "POLY";
    def.title = "Finite product involving polynomial functions";
    def.anchor =
        "prod_{p<n} (z^(3^p)+1)^(3^(-2p-1)) (sqrt((w-1)w+1)/(w+1))^(3^(-2p) (3^p-1)), w = z^(3^(p-1))"
        " = (z^(3^(n-1))+1)^(3^(1-2n) (3^n-1)/2)";
    def.params = {{"z", "complex, |z| <= 0.9"}};
    def.draw = [](Rng& rng) { return make({{"z", disk(rng, 0.9)}}); };
    def.factor = [](const ParamSample& s, long p) { return poly_factor(s.at("z"), p); };
    def.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      return pow(pow(s.at("z"), static_cast<long>(p3d(n - 1))) + R(1), poly_exponent(n));
    };
    def.admit = [](const ParamSample&, long) { return true; };
    LimitDef inf{"POLY-INF", "Infinite product involving polynomial functions", "prod_{p>=0} (same factors) = 1",
                 def.factor, [](const ParamSample&, const PrecisionContext&) { return R(1); }, 1.0 / 9.0};
    add_product(out, def, &inf);

    Identity bin;
    bin.id = "POLY-BINOM";
    bin.title = "Binomial-series form of the polynomial product";
    bin.anchor = "prod_{p<n} (same factors) = sum_{j>=0} C(e, j) w^j, w = z^(3^(n-1)), e = 3^(1-2n) (3^n-1)/2";
    bin.tier = Tier::Product;
    bin.params = {{"z", "complex, |z| <= 0.9"}, {"n", "integer, 1..5"}};
    bin.lhs = prod_side(def.factor);
    bin.rhs = [](const ParamSample& s, const PrecisionContext& ctx) {
      long n = s.integer("n");
      C w = pow(s.at("z"), static_cast<long>(p3d(n - 1)));
      C e = poly_exponent(n);
      Real eps = pow10(-ctx.working_digits());
      CompensatedSum sum;
      C term = R(1);
      int small = 0;
      for (long j = 0; j < ctx.max_terms; ++j) {
        sum.add(term);
        small = abs(term) <= eps * abs(sum.value()) ? small + 1 : 0;
        if (small >= 3) return sum.value();
        term = term * (e - R(j)) / Real(j + 1) * w;
      }
      throw ConvergenceError("POLY-BINOM: binomial series did not converge");
    };
    bin.sampler = [](Rng& rng, int) { return make({{"z", disk(rng, 0.9)}, {"n", C(rng.integer(1, 5))}}); };
    bin.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(bin));
  }
}

}  // namespace lerchkit::ident
