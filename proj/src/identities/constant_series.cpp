// Finite series that evaluate to Catalan's, Glaisher's and Apery's constants.

#include "common.hpp"

namespace lerchkit::ident {

using namespace detail;

namespace {

std::vector<ParamSample> n_grid() {
  std::vector<ParamSample> g;
  for (long n = 1; n <= 5; ++n) g.push_back(make({{"n", C(n)}}));
  return g;
}

const std::vector<ParamSpec> kNParam = {{"n", "integer, 1..5"}};

Identity constant_identity(std::string id, std::string title, std::string anchor) {
  Identity out;
  out.id = std::move(id);
  out.title = std::move(title);
  out.anchor = std::move(anchor);
  out.tier = Tier::Constant;
  out.params = kNParam;
  out.grid = n_grid();
  out.admissible = [](const ParamSample&) { return true; };
  return out;
}

C logA() { return C(log(K().glaisher)); }
C catalan() { return C(K().catalan); }
C zeta3() { return C(K().apery); }
C lg(const C& z) { return log(z); }
C li3(long e) { return log(I() * p3(e)); }  // log(i 3^e)

// Phi'(-1, s, v) difference at v = 1/3, 2/3 used by several entries.
C d_third(long s) { return dphi(R(-1), R(s), R(1, 3)) - dphi(R(-1), R(s), R(2, 3)); }

}  // namespace

void add_constants(std::vector<Identity>& out) {
  {
    Identity id = constant_identity(
        "GK-SS", "Phi-derivative difference and Glaisher's constant",
        "Phi'(-1,-1,1/3) - Phi'(-1,-1,2/3) = log(2^(2/9) 3^(1/12) e^(1/6) / A^2)");
    id.params.clear();
    id.grid = {make({})};
    id.lhs = [](const ParamSample&, const PrecisionContext&) { return d_third(-1); };
    id.rhs = [](const ParamSample&, const PrecisionContext&) {
      return R(2, 9) * lg(R(2)) + R(1, 12) * lg(R(3)) + R(1, 6) - R(2) * logA();
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity("AP-SS", "Phi-derivative difference and Apery's constant",
                                    "Phi'(-1,-2,2/3) - Phi'(-1,-2,1/3) = 14 zeta(3) / (9 pi^2)");
    id.params.clear();
    id.grid = {make({})};
    id.lhs = [](const ParamSample&, const PrecisionContext&) { return -d_third(-2); };
    id.rhs = [](const ParamSample&, const PrecisionContext&) {
      Real p = K().pi;
      return R(14) * zeta3() / (Real(9) * p * p);
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-SS", "Trigamma series with 27^-p weights and Catalan's constant",
        "sum_{p<n} 27^-p (3 psi1((2+3^-p)/12) - 3 psi1((4+3^-p)/12) + 2 psi1((6+3^-p)/12) - 3 psi1((8+3^-p)/12)"
        " + 3 psi1((10+3^-p)/12) - 2 (8 9^(p+1) + psi1((12+3^-p)/12)))"
        " = 27^(1-n) (8 9^n (1 + 3^n - 2C 3^n) + psi1(1 + 3^-n/4) - psi1((2+3^-n)/4))");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      return psum(s.integer("n"), [](long p) {
        C u = p3(-p);
        auto t = [&](long j) { return tri((R(j) + u) / Real(12)); };
        return p3(-3 * p) * (R(3) * t(2) - R(3) * t(4) + R(2) * t(6) - R(3) * t(8) + R(3) * t(10) -
                             R(2) * (R(8) * pow(R(9), p + 1) + t(12)));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C Q = p3(n), Qi = p3(-n);
      return p3(3 - 3 * n) * (R(8) * pow(R(9), n) * (-R(2) * catalan() * Q + Q + R(1)) +
                              tri(R(1) + Qi / Real(4)) - tri((R(2) + Qi) / Real(4)));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-SS-2", "Phi-derivative series and Catalan's constant",
        "sum_{p<n} (18 Phi'(-1,-1,(2-3^-p)/6) - 18 Phi'(-1,-1,(4-3^-p)/6) + 12 Phi'(-1,-1,(6-3^-p)/6) + 3^-p log(i 3^(p+1)))"
        " = (-6 pi Phi'(-1,-1,1-3^-n/2) + 6C + 3/2 (pi - pi 3^-n) log(i 3^n)) / pi");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      return psum(s.integer("n"), [](long p) {
        C u = p3(-p);
        auto f = [&](long j) { return dphi(R(-1), R(-1), (R(j) - u) / Real(6)); };
        return R(18) * f(2) - R(18) * f(4) + R(12) * f(6) + u * li3(p + 1);
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C Qi = p3(-n);
      C pp = C(K().pi);
      return (-R(6) * pp * dphi(R(-1), R(-1), R(1) - Qi / Real(2)) + R(6) * catalan() +
              R(3, 2) * (pp - pp * Qi) * li3(n)) /
             pp;
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-CC-1", "Trigamma series with 9^-p weights and Catalan's constant",
        "sum_{p<n} 9^-p (psi1((2+3^-p)/12) + psi1((10+3^-p)/12)) = 9 (pi^2 - 8C - 9^-n psi1((2+3^-n)/4))");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      return psum(s.integer("n"), [](long p) {
        C u = p3(-p);
        return p3(-2 * p) * (tri((R(2) + u) / Real(12)) + tri((R(10) + u) / Real(12)));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      Real p = K().pi;
      return R(9) * (-R(8) * catalan() - p3(-2 * n) * tri((R(2) + p3(-n)) / Real(4)) + C(p * p));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-CC-2", "Hurwitz-zeta derivative series and Catalan's constant",
        "sum_{p<n} 9^-p (Phi'(1,2,(2-3^-p)/12) + Phi'(1,2,(5-3^-p/2)/6) - log(i 3^(p+1)) (psi1((2-3^-p)/12) + psi1((10-3^-p)/12)))"
        " = 9 (Phi'(1,2,1/4) - 9^-n Phi'(1,2,1/2-3^-n/4) - i pi (8C + pi^2)/2 + 9^-n log(i 3^n) psi1(1/2-3^-n/4))");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      return psum(s.integer("n"), [](long p) {
        C u = p3(-p);
        return p3(-2 * p) * (dphi(R(1), R(2), (R(2) - u) / Real(12)) + dphi(R(1), R(2), (R(5) - u / Real(2)) / Real(6)) -
                             li3(p + 1) * (tri((R(2) - u) / Real(12)) + tri((R(10) - u) / Real(12))));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C Qi = p3(-n), Q2 = p3(-2 * n);
      Real p = K().pi;
      C v = R(1, 2) - Qi / Real(4);
      return R(9) * (-Q2 * dphi(R(1), R(2), v) + dphi(R(1), R(2), R(1, 4)) -
                     I() * C(p) * (R(8) * catalan() + C(p * p)) / Real(2) + Q2 * li3(n) * tri(v));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "GK-CC", "csc^2-weighted Phi-derivative series and Glaisher's constant",
        "sum_{p<n} csc^2(pi q/2) / (8 (2cos(pi q)+1)^2) (2 log(i 3q) (q (5cos(pi q/2) + cos(5 pi q/2)) - i (sin(pi q/2) + sin(5 pi q/2)))"
        " - 6q e^(-5i pi q/2) (e^(3i pi q) - 1)^2 (Phi'(-1,-1,(1/q+1)/6) + e^(2i pi q) Phi'(-1,-1,(1/q+5)/6))), q=3^p"
        " = -Q e^(i pi Q/2) Phi'(-1,-1,(1/Q+1)/2) + i log(A^3 / (2^(1/3) e^(1/4)))"
        " + (pi cos(pi Q) + 4 log(iQ) (Q cos(pi Q/2) - i sin(pi Q/2)) - pi) / (8 (cos(pi Q) - 1)), Q=3^n");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C pp = C(K().pi);
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C h = pp * q / Real(2);
        C cs = csc(h);
        C den = R(2) * cos(pp * q) + R(1);
        C pre = cs * cs / (R(8) * den * den);
        C a1 = R(2) * li3(p + 1) * (q * (R(5) * cos(h) + cos(R(5) * h)) - I() * (sin(h) + sin(R(5) * h)));
        C e3 = exp(I() * pp * p3(p + 1)) - R(1);
        C a2 = -R(2) * p3(p + 1) * exp(-R(5) * I() * h) * e3 * e3 *
               (dphi(R(-1), R(-1), (R(1) / q + R(1)) / Real(6)) +
                exp(R(2) * I() * pp * q) * dphi(R(-1), R(-1), (R(1) / q + R(5)) / Real(6)));
        return pre * (a1 + a2);
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C pp = C(K().pi);
      C Q = p3(n);
      C h = pp * Q / Real(2);
      C cq = cos(pp * Q);
      return -Q * exp(I() * h) * dphi(R(-1), R(-1), (R(1) / Q + R(1)) / Real(2)) +
             I() * (R(3) * logA() - R(1, 3) * lg(R(2)) - R(1, 4)) +
             (pp * cq + R(4) * li3(n) * (Q * cos(h) - I() * sin(h)) - pp) / (R(8) * (cq - R(1)));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "AP-CC", "csc^3-weighted Phi-derivative series and Apery's constant",
        "sum_{p<n} csc^3(pi 3^(p+1)/2) (4 9^(p+1) (Phi'(-1,-2,(3^-p+1)/6) + Phi'(-1,-2,(3^-p+5)/6)) + (5 9^p - 1) log(i 3^(p+1)))"
        " = 4 9^n csc^3(pi 3^n/2) Phi'(-1,-2,(3^-n+1)/2) + (9^n-1) log(i 3^n) csc^3(pi 3^n/2)/2 - 7 zeta(3)/pi^2");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C pp = C(K().pi);
      return psum(s.integer("n"), [&](long p) {
        C u = p3(-p);
        C c = pow(csc(pp * p3(p + 1) / Real(2)), 3L);
        C n9 = pow(R(9), p + 1);
        return c * (R(4) * n9 * dphi(R(-1), R(-2), (u + R(1)) / Real(6)) +
                    R(4) * n9 * dphi(R(-1), R(-2), (u + R(5)) / Real(6)) +
                    (R(5) * pow(R(9), p) - R(1)) * li3(p + 1));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C pp = C(K().pi);
      C c = pow(csc(pp * p3(n) / Real(2)), 3L);
      C n9 = pow(R(9), n);
      return R(4) * n9 * c * dphi(R(-1), R(-2), (p3(-n) + R(1)) / Real(2)) + (n9 - R(1)) * li3(n) * c / Real(2) -
             R(7) * zeta3() / (pp * pp);
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-CC-3", "3^p e^(-5i pi 3^p/2)-weighted series and Catalan's constant",
        "sum_{p<n} 3^p e^(-5i pi 3^p/2) csc^2(pi 3^(p+1)/2) (-12 (Phi'(-1,-1,1/6) + Phi'(-1,-1,5/6))"
        " + e^(5i pi 3^p/2) log(i 3^(p+1)) (5cos(pi 3^p/2) + cos(5 pi 3^p/2)))"
        " = 2 (4C (Q e^(i pi Q/2) sin^2(pi Q/2) - i) + pi Q log(iQ) cos(pi Q/2)) / (pi (cos(pi Q) - 1)), Q=3^n");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C pp = C(K().pi);
      C base = dphi(R(-1), R(-1), R(1, 6)) + dphi(R(-1), R(-1), R(5, 6));
      return psum(s.integer("n"), [&](long p) {
        C q = p3(p);
        C h = pp * q / Real(2);
        C cs = csc(pp * p3(p + 1) / Real(2));
        C e5 = exp(R(5) * I() * h);
        return q / e5 * cs * cs * (-R(12) * base + e5 * li3(p + 1) * (R(5) * cos(h) + cos(R(5) * h)));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C pp = C(K().pi);
      C Q = p3(n);
      C h = pp * Q / Real(2);
      C sn = sin(h);
      return R(2) * (R(4) * catalan() * (Q * exp(I() * h) * sn * sn - I()) + pp * Q * li3(n) * cos(h)) /
             (pp * (cos(pp * Q) - R(1)));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-SS1-A", "Finite trigamma sum with shifted arguments and Catalan's constant",
        "sum_{p<n} 27^-p (psi1(1 - 3^(n-p-1)/4) + 3/2 (3^p-1) (psi1(5/6 - 3^(n-p-1)/4) - psi1((4-3^(n-p))/12))"
        " - psi1((6-3^(n-p))/12) + 3/2 (3^p-1) (psi1((2-3^(n-p))/12) - psi1((8-3^(n-p))/12)))"
        " = -8C 27^(1-n) (3^n - 1)");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      return psum(n, [n](long p) {
        C a = p3(n - p - 1), b = p3(n - p);
        C w = R(3, 2) * (p3(p) - R(1));
        return p3(-3 * p) * (tri(R(1) - a / Real(4)) + w * (tri(R(5, 6) - a / Real(4)) - tri((R(4) - b) / Real(12))) -
                             tri((R(6) - b) / Real(12)) +
                             w * (tri((R(2) - b) / Real(12)) - tri((R(8) - b) / Real(12))));
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      return -R(8) * catalan() * p3(3 - 3 * n) * (p3(n) - R(1));
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "CAT-SS1-B", "Finite Phi-derivative sum with shifted arguments and Catalan's constant",
        "sum_{p<n} (12 Phi'(-1,-1,1-3^(n-p-1)/2) - 18 (3^p-1) Phi'(-1,-1,(2-3^(n-p))/6)"
        " + 18 (3^p-1) Phi'(-1,-1,(4-3^(n-p))/6) + 3^-p (3^n - 3^(2p+1)) log(i 3^(p+1))) = 6C (3^n - 1) / pi");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      return psum(n, [n](long p) {
        C a = p3(n - p - 1), b = p3(n - p);
        C w = R(18) * (p3(p) - R(1));
        return R(12) * dphi(R(-1), R(-1), R(1) - a / Real(2)) - w * dphi(R(-1), R(-1), (R(2) - b) / Real(6)) +
               w * dphi(R(-1), R(-1), (R(4) - b) / Real(6)) + p3(-p) * (p3(n) - p3(2 * p + 1)) * li3(p + 1);
      });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      return R(6) * catalan() * (p3(n) - R(1)) / C(K().pi);
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "GK-SS1", "Finite sum of a Phi-derivative difference and Glaisher's constant",
        "sum_{p<n} (6 (3^p-1) (Phi'(-1,-1,1/3) - Phi'(-1,-1,2/3)) + 3^p log(i 3^(p+1)))"
        " = ((3^n - 2n - 1) log(16 e^3 / A^36) + 3 (3^n-1) log(i 3^n)) / 6");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C dd = d_third(-1);
      return psum(s.integer("n"), [&](long p) { return R(6) * (p3(p) - R(1)) * dd + p3(p) * li3(p + 1); });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      C Q = p3(n);
      C l = R(4) * lg(R(2)) + R(3) - R(36) * logA();
      return ((Q - R(2 * n) - R(1)) * l + R(3) * (Q - R(1)) * li3(n)) / Real(6);
    };
    out.push_back(std::move(id));
  }
  {
    Identity id = constant_identity(
        "AP-SS1", "Finite sum of a Phi-derivative difference and Apery's constant",
        "sum_{p<n} 3^p (3^p-1) (Phi'(-1,-2,1/3) - Phi'(-1,-2,2/3)) = -7 (9^n - 4 3^n + 3) zeta(3) / (36 pi^2)");
    id.lhs = [](const ParamSample& s, const PrecisionContext&) {
      C dd = d_third(-2);
      return psum(s.integer("n"), [&](long p) { return p3(p) * (p3(p) - R(1)) * dd; });
    };
    id.rhs = [](const ParamSample& s, const PrecisionContext&) {
      long n = s.integer("n");
      Real pp = K().pi;
      return -R(7) * (pow(R(9), n) - R(4) * p3(n) + R(3)) * zeta3() / (Real(36) * pp * pp);
    };
    out.push_back(std::move(id));
  }
}

}  // namespace lerchkit::ident
