// Degenerate trigonometric sums, the three main Lerch-Phi theorems and the
// functional equations.

#include "common.hpp"

namespace lerchkit::ident {

using namespace detail;

namespace {

// Pole margins used by the samplers, in double precision.
constexpr double kMargin = 1e-3;

bool cos_clear(double x) { return std::fabs(std::cos(x)) > kMargin; }
bool sin_clear(double x) { return std::fabs(std::sin(x)) > kMargin; }

ParamSample deg_sample(Rng& rng, int) {
  return make({{"m", rng.real(-1.5, 1.5)}, {"n", C(rng.integer(1, 6))}});
}

const std::vector<ParamSpec> kDegParams = {{"m", "real, (-1.5, 1.5) off the poles"}, {"n", "integer, 1..6"}};

// m = u + iw, k complex with |k| <= 3 (forced integers first), a real.
ParamSample thm_sample(Rng& rng, int index) {
  static const long forced[] = {0, 1, 2, -1, -2};
  C k;
  if (index < 5) {
    k = C(forced[index]);
  } else {
    do {
      k = C(rng.real(-3, 3).re(), rng.real(-3, 3).re());
    } while (abs(k) > 3);
  }
  C m(rng.real(-1, 1).re(), rng.real(0.05, 0.5).re());
  C a = rng.real(0.2, 3);
  return make({{"k", k}, {"a", a}, {"m", m}, {"n", C(rng.integer(1, 4))}});
}

// log a is raised to the power k; keep a off 1 so that la^k stays defined.
bool thm_log_admissible(const ParamSample& s) { return std::fabs(d(s.at("a")) - 1.0) > 0.05; }

const std::vector<ParamSpec> kThmParams = {{"k", "complex, |k| <= 3, integers 0,1,2,-1,-2 forced"},
                                           {"a", "real, (0.2, 3)"},
                                           {"m", "complex, Re in (-1, 1), Im in (0.05, 0.5)"},
                                           {"n", "integer, 1..4"}};

ParamSample fe_sample(Rng& rng, int) {
  return make({{"z", disk(rng, 0.9)}, {"s", disk(rng, 3.0)}, {"a", rng.real(0.1, 2)}});
}

const std::vector<ParamSpec> kFeParams = {
    {"z", "complex, |z| <= 0.9"}, {"s", "complex, |s| <= 3"}, {"a", "real, (0.1, 2)"}};

// (i 3^e)^k, principal branch.
C ipow3(long e, const C& k) { return pow(I() * p3(e), k); }

}  // namespace

void add_theorems(std::vector<Identity>& out) {
  // --- degenerate cases ---
  {
    Identity id;
    id.id = "DEG-SS";
    id.title = "Degenerate secant-sine sum";
    id.anchor = "sum_{p<n} 3^-p sin^3(m 3^p) sec(m 3^(p+1)) = 3/8 (3^-n tan(m 3^n) - tan m)";
    id.tier = Tier::Core;
    id.params = kDegParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      return psum(s.integer("n"), [&](long p) {
        C sn = sin(m * p3(p));
        return p3(-p) * sn * sn * sn * sec(m * p3(p + 1));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      return R(3, 8) * (p3(-n) * tan(m * p3(n)) - tan(m));
    };
    id.sampler = deg_sample;
    id.admissible = [](const ParamSample& s) {
      double m = d(s.at("m"));
      for (long j = 0; j <= s.integer("n"); ++j)
        if (!cos_clear(m * p3d(j))) return false;
      return true;
    };
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "DEG-CC";
    id.title = "Degenerate cosecant-cosine sum";
    id.anchor = "sum_{p<n} cos(2 m 3^p) csc(m 3^(p+1)) = (csc m - csc(m 3^n)) / 2";
    id.tier = Tier::Core;
    id.params = kDegParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      return psum(s.integer("n"), [&](long p) { return cos(R(2) * m * p3(p)) * csc(m * p3(p + 1)); });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      return (csc(m) - csc(m * p3(s.integer("n")))) / Real(2);
    };
    id.sampler = deg_sample;
    id.admissible = [](const ParamSample& s) {
      double m = d(s.at("m"));
      for (long j = 0; j <= s.integer("n"); ++j)
        if (!sin_clear(m * p3d(j))) return false;
      return true;
    };
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "DEG-SS1";
    id.title = "Degenerate second secant-sine sum";
    id.anchor =
        "sum_{p<n} 3^-p (-2i sin(2mq) - 2cos(2mq) - i(3q-4) tan(mq) + 1)/(2cos(2mq) - 1), q=3^p"
        " = 3/2 (3^-n - 1)(1 + i tan(m 3^n))";
    id.tier = Tier::Core;
    id.params = kDegParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C c2 = cos(R(2) * m * q);
        C num = -R(2) * I() * sin(R(2) * m * q) - R(2) * c2 - I() * (R(3) * q - R(4)) * tan(m * q) + R(1);
        C den = R(2) * c2 - R(1);
        if (abs(den) < pow10(-current_context().digits)) throw DomainError("DEG-SS1: 2cos(2mq) = 1");
        return p3(-p) * num / den;
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C m = s.at("m");
      long n = s.integer("n");
      return R(3, 2) * (p3(-n) - R(1)) * (R(1) + I() * tan(m * p3(n)));
    };
    id.sampler = deg_sample;
    id.admissible = [](const ParamSample& s) {
      double m = d(s.at("m"));
      long n = s.integer("n");
      for (long j = 0; j <= n; ++j) {
        if (!cos_clear(m * p3d(j))) return false;
        if (j < n && std::fabs(2 * std::cos(2 * m * p3d(j)) - 1) < kMargin) return false;
      }
      return true;
    };
    out.push_back(std::move(id));
  }

  // --- main theorems ---
  {
    Identity id;
    id.id = "THM-SS";
    id.title = "Secant-sine series in Lerch Phi";
    id.anchor =
        "sum_{p<n} 3^-p (log^k a + 2^k (i 3^(p+1))^k e^(2imq) [-3 Phi(-e^(2i 3^(p+1) m), -k, (2 - i 3^-p log a)/6)"
        " + 3 e^(2imq) Phi(., -k, (4 - i 3^-p log a)/6) - 2 e^(4imq) Phi(., -k, (6 - i 3^-p log a)/6)])"
        " = 3^(1-n)/2 ((3^n - 1) log^k a + 2^(k+1) ((i 3^n)^k e^(2im 3^n) Phi(-e^(2i 3^n m), -k, 1 - i 3^-n log(a)/2)"
        " - i^k e^(2im) 3^n Phi(-e^(2im), -k, 1 - i log(a)/2)))";
    id.tier = Tier::Core;
    id.params = kThmParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m");
      C la = log(s.at("a"));
      C lak = pow(la, k);
      C two_k = pow(R(2), k);
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C z = -exp(R(2) * I() * p3(p + 1) * m);
        C e2 = exp(R(2) * I() * m * q);
        C sh = I() * p3(-p) * la;
        C t = -R(3) * phi(z, -k, (R(2) - sh) / Real(6)) + R(3) * e2 * phi(z, -k, (R(4) - sh) / Real(6)) -
              R(2) * e2 * e2 * phi(z, -k, (R(6) - sh) / Real(6));
        return p3(-p) * (lak + two_k * ipow3(p + 1, k) * e2 * t);
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m");
      long n = s.integer("n");
      C Q = p3(n);
      C la = log(s.at("a"));
      C a1 = ipow3(n, k) * exp(R(2) * I() * m * Q) *
             phi(-exp(R(2) * I() * Q * m), -k, R(1) - I() * p3(-n) * la / Real(2));
      C a2 = pow(I(), k) * exp(R(2) * I() * m) * Q * phi(-exp(R(2) * I() * m), -k, R(1) - I() * la / Real(2));
      return p3(1 - n) / Real(2) * ((Q - R(1)) * pow(la, k) + pow(R(2), k + R(1)) * (a1 - a2));
    };
    id.sampler = thm_sample;
    id.admissible = thm_log_admissible;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "THM-CC";
    id.title = "Cosecant-cosine series in Lerch Phi";
    id.anchor =
        "sum_{p<n} (i 3^(p+1))^k e^(imq) [Phi(e^(2i 3^(p+1) m), -k, (1 - i 3^-p log a)/6)"
        " + e^(4imq) Phi(., -k, (5 - i 3^-p log a)/6)]"
        " = i^k e^(im) Phi(e^(2im), -k, 1/2 - i log(a)/2) - (i 3^n)^k e^(im 3^n) Phi(e^(2i 3^n m), -k, 1/2 - i 3^-n log(a)/2)";
    id.tier = Tier::Core;
    id.params = kThmParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m");
      C la = log(s.at("a"));
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C z = exp(R(2) * I() * p3(p + 1) * m);
        C sh = I() * p3(-p) * la;
        C e1 = exp(I() * m * q);
        return ipow3(p + 1, k) * e1 *
               (phi(z, -k, (R(1) - sh) / Real(6)) + pow(e1, 4L) * phi(z, -k, (R(5) - sh) / Real(6)));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m");
      long n = s.integer("n");
      C Q = p3(n);
      C la = log(s.at("a"));
      return pow(I(), k) * exp(I() * m) * phi(exp(R(2) * I() * m), -k, R(1, 2) - I() * la / Real(2)) -
             ipow3(n, k) * exp(I() * m * Q) * phi(exp(R(2) * I() * Q * m), -k, R(1, 2) - I() * p3(-n) * la / Real(2));
    };
    id.sampler = thm_sample;
    id.admissible = thm_log_admissible;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "THM-SS1";
    id.title = "Second secant-sine series in Lerch Phi";
    id.anchor =
        "sum_{p<n} 3^-p (i 3^(p+1))^k e^(2imq) [3(q-1) Phi(-e^(2i 3^(p+1) m), -k, (3^-p a + 2)/6)"
        " - 3(q-1) e^(2imq) Phi(., -k, (3^-p a + 4)/6) - 2 e^(4imq) Phi(., -k, (3^-p a + 6)/6)]"
        " = -3i (3^n - 1)(i 3^n)^(k-1) e^(2im 3^n) Phi(-e^(2i 3^n m), -k, 3^-n a/2 + 1)";
    id.tier = Tier::Core;
    id.params = kThmParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m"), a = s.at("a");
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C z = -exp(R(2) * I() * p3(p + 1) * m);
        C e2 = exp(R(2) * I() * m * q);
        C c = p3(-p) * a;
        C t = R(3) * (q - R(1)) * phi(z, -k, (c + R(2)) / Real(6)) -
              R(3) * (q - R(1)) * e2 * phi(z, -k, (c + R(4)) / Real(6)) -
              R(2) * e2 * e2 * phi(z, -k, (c + R(6)) / Real(6));
        return p3(-p) * ipow3(p + 1, k) * e2 * t;
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      C k = s.at("k"), m = s.at("m"), a = s.at("a");
      long n = s.integer("n");
      C Q = p3(n);
      return -R(3) * I() * (Q - R(1)) * pow(I() * Q, k - R(1)) * exp(R(2) * I() * m * Q) *
             phi(-exp(R(2) * I() * Q * m), -k, p3(-n) * a / Real(2) + R(1));
    };
    id.sampler = thm_sample;
    id.admissible = [](const ParamSample&) { return true; };
    id.notes = "a is sampled real; the complex case is not exercised";
    out.push_back(std::move(id));
  }

  // --- functional equations ---
  {
    Identity id;
    id.id = "FE-3";
    id.title = "Three-way splitting of Phi";
    id.anchor = "Phi(z,s,a) = 3^-s (Phi(z^3,s,a/3) + z (Phi(z^3,s,(a+1)/3) + z Phi(z^3,s,(a+2)/3)))";
    id.tier = Tier::Functional;
    id.params = kFeParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) { return phi(s.at("z"), s.at("s"), s.at("a")); };
    id.rhs = [](const ParamSample& smp, const PrecisionContext&) {
      C z = smp.at("z"), s = smp.at("s"), a = smp.at("a");
      C z3 = pow(z, 3L);
      return pow(R(3), -s) * (phi(z3, s, a / Real(3)) +
                              z * (phi(z3, s, (a + R(1)) / Real(3)) + z * phi(z3, s, (a + R(2)) / Real(3))));
    };
    id.sampler = fe_sample;
    id.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "FE-9A";
    id.title = "Base-9 splitting of Phi";
    id.anchor =
        "Phi(z,s,a) = 3^(-2s-1) (3^s (3 Phi(z^3,s,a/3) + z (3 Phi(z^3,s,(a+1)/3) + 2z Phi(z^3,s,(a+2)/3)))"
        " + z^2 (Phi(z^9,s,(a+2)/9) + z^6 Phi(z^9,s,(a+8)/9) + z^3 Phi(z^9,s,(a+5)/9)))";
    id.tier = Tier::Functional;
    id.params = kFeParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) { return phi(s.at("z"), s.at("s"), s.at("a")); };
    id.rhs = [](const ParamSample& smp, const PrecisionContext&) {
      C z = smp.at("z"), s = smp.at("s"), a = smp.at("a");
      C z3 = pow(z, 3L), z9 = pow(z, 9L);
      C part3 = R(3) * phi(z3, s, a / Real(3)) +
                z * (R(3) * phi(z3, s, (a + R(1)) / Real(3)) + R(2) * z * phi(z3, s, (a + R(2)) / Real(3)));
      C part9 = phi(z9, s, (a + R(2)) / Real(9)) + pow(z, 6L) * phi(z9, s, (a + R(8)) / Real(9)) +
                z3 * phi(z9, s, (a + R(5)) / Real(9));
      return pow(R(3), -R(2) * s - R(1)) * (pow(R(3), s) * part3 + z * z * part9);
    };
    id.sampler = fe_sample;
    id.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "FE-9B";
    id.title = "Base-9 splitting of Phi with the 4z^2 term";
    id.anchor =
        "Phi(z,s,a) = 3^(-2s-1) (3^s (3 Phi(z^3,s,a/3) + z (3 Phi(z^3,s,(a+1)/3) - z Phi(z^3,s,(a+2)/3)))"
        " + 4z^2 (Phi(z^9,s,(a+2)/9) + z^6 Phi(z^9,s,(a+8)/9) + z^3 Phi(z^9,s,(a+5)/9)))";
    id.tier = Tier::Functional;
    id.params = kFeParams;
    id.lhs = [](const ParamSample& s, const PrecisionContext&) { return phi(s.at("z"), s.at("s"), s.at("a")); };
    id.rhs = [](const ParamSample& smp, const PrecisionContext&) {
      C z = smp.at("z"), s = smp.at("s"), a = smp.at("a");
      C z3 = pow(z, 3L), z9 = pow(z, 9L);
      C part3 = R(3) * phi(z3, s, a / Real(3)) +
                z * (R(3) * phi(z3, s, (a + R(1)) / Real(3)) - z * phi(z3, s, (a + R(2)) / Real(3)));
      C part9 = phi(z9, s, (a + R(2)) / Real(9)) + pow(z, 6L) * phi(z9, s, (a + R(8)) / Real(9)) +
                z3 * phi(z9, s, (a + R(5)) / Real(9));
      return pow(R(3), -R(2) * s - R(1)) * (pow(R(3), s) * part3 + R(4) * z * z * part9);
    };
    id.sampler = fe_sample;
    id.admissible = [](const ParamSample&) { return true; };
    out.push_back(std::move(id));
  }
}

}  // namespace lerchkit::ident
