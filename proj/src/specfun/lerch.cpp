#include "lerchkit/lerch.hpp"

#include "lerchkit/series.hpp"
#include "lerchkit/specfun.hpp"

#include <cmath>
#include <vector>

namespace lerchkit {

namespace {

constexpr double kDirectRadius = 0.98;

struct Classified {
  Complex z, s, v;
  bool z_zero = false;
  bool z_one = false;
  bool z_minus_one = false;
  bool unit = false;  // |z| == 1 within tolerance
  Real modulus;
  bool s_nonpos_int = false;
  long s_int = 0;
};

Classified classify(const LerchArgs& a) {
  Classified c;
  c.z = lift(a.z);
  c.s = lift(a.s);
  c.v = lift(a.v);
  const Real tol = pow10(-current_context().digits);
  long n = 0;
  if (near_integer(c.v, n, tol) && n <= 0)
    throw DomainError("lerch_phi: v = " + std::to_string(n) + " is a non-positive integer");
  c.z_zero = c.z.is_zero();
  c.z_one = abs(c.z - Complex(1)) <= tol;
  c.z_minus_one = abs(c.z + Complex(1)) <= tol;
  if (c.z_one) c.z = Complex(1);
  if (c.z_minus_one) c.z = Complex(-1);
  c.modulus = abs(c.z);
  c.unit = boost::multiprecision::abs(c.modulus - 1) <= tol;
  if (near_integer(c.s, n, tol) && n <= 0) {
    c.s_nonpos_int = true;
    c.s_int = n;
  }
  return c;
}

// (v+n)^-s, exploiting integer/real exponents.
Complex shifted_power(const Complex& x, const Complex& s) {
  if (s.is_real()) {
    Real r = boost::multiprecision::round(s.re());
    if (r == s.re() && boost::multiprecision::abs(r) < 64) return pow(x, -r.convert_to<long>());
    if (x.is_real() && x.re() > 0) return {boost::multiprecision::pow(x.re(), -s.re()), Real(0)};
  }
  return exp(-s * log(x));
}

Complex phi_direct(const Classified& c, const PrecisionContext& ctx) {
  Complex zn(1);
  auto res = sum_series(
      [&](long n) {
        if (n > 0) zn *= c.z;
        return zn * shifted_power(c.v + Complex(n), c.s);
      },
      SeriesMode::Direct, ctx);
  if (!res.converged) throw ConvergenceError("lerch_phi: direct series did not converge");
  return res.value;
}

Complex phi_zeta_minus_one(const Complex& s, const Complex& v, const PrecisionContext& ctx) {
  if (abs(s - Complex(1)) < pow10(-ctx.digits)) {
    // sum (-1)^n/(v+n) = (psi((v+1)/2) - psi(v/2)) / 2
    return (polygamma(0, (v + Complex(1)) / Real(2), ctx) - polygamma(0, v / Real(2), ctx)) / Real(2);
  }
  Complex two_s = pow(Complex(2), -s);
  return two_s * (hurwitz_zeta(s, v / Real(2), ctx) - hurwitz_zeta(s, (v + Complex(1)) / Real(2), ctx));
}

Complex phi_cvz(const Classified& c, const PrecisionContext& ctx) {
  auto res = sum_series(
      [&](long n) {
        Complex t = shifted_power(c.v + Complex(n), c.s);
        return n % 2 ? -t : t;
      },
      SeriesMode::AlternatingAccelerated, ctx);
  if (!res.converged) throw ConvergenceError("lerch_phi: alternating acceleration did not converge");
  return res.value;
}

// Head sum to N plus the expansion of the tail in powers of 1/(v+N), whose
// coefficients are the polylogarithms Li_{-k}(z). Valid near and on the unit
// circle away from z = 1.
Complex phi_tail_expansion(const Classified& c, const PrecisionContext& ctx) {
  PrecisionContext ext = ctx.escalated(20);
  PrecisionScope scope(ext);
  Complex z = lift(c.z), s = lift(c.s), v = lift(c.v);
  const int W = ext.working_digits();
  const Real eps = pow10(-W);

  Real theta = abs(log(z));
  if (theta < pow10(-ctx.digits / 2)) throw DomainError("lerch_phi: z too close to 1 for the tail expansion");
  double need = (W * std::log(10.0) + 10.0) / theta.convert_to<double>() + abs(s).convert_to<double>();
  double nd = std::ceil(need - v.re().convert_to<double>());
  if (nd > static_cast<double>(ctx.max_terms)) throw ConvergenceError("lerch_phi: tail expansion needs too many head terms");
  long N = std::max(1L, static_cast<long>(nd));

  CompensatedSum head;
  Complex zn(1);
  for (long n = 0; n < N; ++n) {
    head.add(zn * shifted_power(v + Complex(n), s));
    zn *= z;
  }
  Complex w = v + Complex(N);
  Complex winv = Complex(1) / w;
  Complex omz = Complex(1) - z;
  Complex inv_omz = Complex(1) / omz;

  std::vector<Complex> f;  // f_k = sum_{m>=0} m^k z^m
  f.push_back(inv_omz);
  std::vector<Real> binom_row{Real(1)};  // C(k, j), j = 0..k

  Complex ws = shifted_power(w, s);  // w^-s
  Complex bin(1);                    // binom(-s, k)
  Complex wk(1);                     // w^-k
  CompensatedSum tail;
  Real prev = -1;
  int small = 0;
  const long kmax = static_cast<long>(need) * 3 + 50;
  for (long k = 0; k <= kmax; ++k) {
    if (k > 0) {
      std::vector<Real> row(static_cast<size_t>(k) + 1);
      row[0] = 1;
      row[static_cast<size_t>(k)] = 1;
      for (long j = 1; j < k; ++j) row[static_cast<size_t>(j)] = binom_row[static_cast<size_t>(j - 1)] + binom_row[static_cast<size_t>(j)];
      binom_row.swap(row);
      // (1-z) f_k = sum_{j<k} C(k,j) (-1)^(k-j+1) f_j + (-1)^k
      CompensatedSum acc;
      for (long j = 0; j < k; ++j) {
        Complex t = binom_row[static_cast<size_t>(j)] * f[static_cast<size_t>(j)];
        acc.add((k - j) % 2 ? t : -t);
      }
      acc.add(Complex(k % 2 ? -1 : 1));
      f.push_back(acc.value() * inv_omz);
      bin *= (-s - Complex(k - 1)) / Real(k);
      wk *= winv;
    }
    Complex term = bin * wk * f[static_cast<size_t>(k)];
    tail.add(term);
    Real mag = abs(term);
    if (mag <= eps * abs(tail.value()) || bin.is_zero()) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
    if (prev >= 0 && k > need && mag > prev) throw ConvergenceError("lerch_phi: tail expansion diverged");
    prev = mag;
    if (k == kmax) throw ConvergenceError("lerch_phi: tail expansion did not converge");
  }
  Complex res = head.value() + zn * ws * tail.value();
  PrecisionScope back(ctx);
  return lift(res);
}

// Exp-sinh quadrature of the integral representation on (0, inf).
Complex phi_quadrature(const Classified& c, const PrecisionContext& ctx) {
  if (c.s.re() <= 0) throw DomainError("lerch_phi quadrature: needs Re(s) > 0");
  if (c.z_one) throw DomainError("lerch_phi quadrature: z = 1");
  if (c.modulus > 1 && !c.unit) throw DomainError("lerch_phi quadrature: |z| > 1");
  if (c.z.is_real() && c.z.re() > 1) throw DomainError("lerch_phi quadrature: z on [1, inf)");

  const Complex& z = c.z;
  const Complex& s = c.s;
  Complex v = c.v;
  CompensatedSum pre;
  Complex zm(1);
  // Move v to Re(v) >= 1: Phi(z,s,v) = v^-s + z Phi(z,s,v+1).
  while (v.re() < 1) {
    pre.add(zm * shifted_power(v, s));
    zm *= z;
    v += Complex(1);
  }
  const Real eps = pow10(-ctx.working_digits());
  const Real half_pi = real_pi() / 2;
  Complex sm1 = s - Complex(1);
  Complex vm1 = v - Complex(1);
  const Real log_cut = -Real(ctx.working_digits() + 30) * boost::multiprecision::log(Real(10));

  auto integrand = [&](const Real& u) -> Complex {
    Real lt = half_pi * boost::multiprecision::sinh(u);  // log t
    Real t = boost::multiprecision::exp(lt);
    // Far out the integrand is below any representable contribution; skip the
    // trig argument reduction on huge phases.
    Real log_mag = s.re() * lt - vm1.re() * t - (t > 1 ? t : Real(0));
    if (log_mag < log_cut) return Complex(0);
    Complex num = exp(sm1 * Complex(lt) - vm1 * t);
    Complex den = Complex(boost::multiprecision::exp(t)) - z;
    Real jac = t * half_pi * boost::multiprecision::cosh(u);
    if (abs(den) == 0) throw DomainError("lerch_phi quadrature: integrand pole");
    return num / den * jac;
  };
  // Sum over u = start + j*step in one direction until terms vanish.
  auto sweep = [&](const Real& start, const Real& step, const Complex& scale) {
    CompensatedSum acc;
    int small = 0;
    for (int j = 0; j < 200000; ++j) {
      Real u = start + step * j;
      Complex f = integrand(u);
      acc.add(f);
      Real mag = abs(f);
      Real lt = half_pi * boost::multiprecision::sinh(u);
      if (mag <= eps * abs(scale) * Real(1e-3) && (lt > 0 || j > 4)) {
        if (++small >= 4) break;
      } else {
        small = 0;
      }
    }
    return acc.value();
  };

  Complex center = integrand(Real(0));
  Real h = 1;
  Complex scale = center + Complex(Real(1e-30));
  Complex total = center + sweep(h, h, scale) + sweep(-h, -h, scale);
  Complex est = total * h;
  bool ok = false;
  for (int level = 1; level <= 14; ++level) {
    h /= 2;
    // new abscissae are the odd multiples of h
    Real two_h = h * 2;
    Complex add = sweep(h, two_h, est) + sweep(-h, -two_h, est);
    total += add;
    Complex next = total * h;
    Real diff = abs(next - est);
    est = next;
    if (level >= 3 && diff <= pow10(-(ctx.working_digits() + 5) / 2) * abs(est)) {
      ok = true;
      break;
    }
  }
  if (!ok) throw ConvergenceError("lerch_phi quadrature: did not converge");
  Complex g = gamma(s, ctx);
  return pre.value() + zm * est / g;
}

Complex phi_neg_int(const Complex& z, long k, const Complex& v) {
  if (abs(z - Complex(1)) <= pow10(-current_context().digits)) throw DomainError("lerch_phi: pole at z = 1");
  std::vector<Complex> p{Complex(1)};
  for (long j = 0; j < k; ++j) {
    std::vector<Complex> q(p.size() + 1);
    for (size_t i = 0; i < q.size(); ++i) {
      Complex acc;
      if (i < p.size()) acc += (Complex(static_cast<long>(i)) + v) * p[i];
      if (i >= 1) acc += (Complex(j + 1 - static_cast<long>(i) + 1) - v) * p[i - 1];
      q[i] = acc;
    }
    p.swap(q);
  }
  Complex val;
  for (size_t i = p.size(); i-- > 0;) val = val * z + p[i];
  return val / pow(Complex(1) - z, k + 1);
}

PhiValue dispatch(const Classified& c, const PrecisionContext& ctx) {
  if (c.z_zero) return {shifted_power(c.v, c.s), EvalRoute::SeriesDirect};
  if (c.s_nonpos_int && !c.z_one) return {phi_neg_int(c.z, -c.s_int, c.v), EvalRoute::NegIntClosedForm};
  if (c.z_one) {
    if (c.s.re() <= 1) throw DomainError("lerch_phi: z = 1 requires Re(s) > 1");
    return {hurwitz_zeta(c.s, c.v, ctx), EvalRoute::ZetaReduction};
  }
  if (c.z_minus_one) return {phi_zeta_minus_one(c.s, c.v, ctx), EvalRoute::ZetaReduction};
  if (c.modulus <= kDirectRadius) return {phi_direct(c, ctx), EvalRoute::SeriesDirect};
  if (c.modulus < 1 && !c.unit) return {phi_tail_expansion(c, ctx), EvalRoute::SeriesAccelerated};
  if (c.unit) {
    if (c.s.re() <= 0) throw DomainError("lerch_phi: |z| = 1 with Re(s) <= 0 is outside the supported domain");
    return {phi_tail_expansion(c, ctx), EvalRoute::SeriesAccelerated};
  }
  throw DomainError("lerch_phi: |z| > 1");
}

}  // namespace

const char* route_name(EvalRoute r) {
  switch (r) {
    case EvalRoute::SeriesDirect: return "series-direct";
    case EvalRoute::SeriesAccelerated: return "series-accelerated";
    case EvalRoute::NegIntClosedForm: return "neg-int-closed-form";
    case EvalRoute::ZetaReduction: return "zeta-reduction";
    case EvalRoute::Quadrature: return "quadrature";
  }
  return "unknown";
}

PhiValue lerch_phi(const LerchArgs& args, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return dispatch(classify(args), ctx);
}

Complex lerch_phi_via(EvalRoute route, const LerchArgs& args, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Classified c = classify(args);
  switch (route) {
    case EvalRoute::SeriesDirect:
      if (c.z_zero) return shifted_power(c.v, c.s);
      if (c.modulus > kDirectRadius) throw DomainError("series-direct: |z| > 0.98");
      return phi_direct(c, ctx);
    case EvalRoute::SeriesAccelerated:
      if (c.z_minus_one) {
        if (c.s.re() <= 0) throw DomainError("series-accelerated: z = -1 needs Re(s) > 0");
        return phi_cvz(c, ctx);
      }
      if (c.z_one || c.modulus > 1 + pow10(-ctx.digits)) throw DomainError("series-accelerated: needs |z| <= 1, z != 1");
      if (c.unit && c.s.re() <= 0) throw DomainError("series-accelerated: |z| = 1 needs Re(s) > 0");
      return phi_tail_expansion(c, ctx);
    case EvalRoute::NegIntClosedForm:
      if (!c.s_nonpos_int) throw DomainError("neg-int-closed-form: s is not a non-positive integer");
      return phi_neg_int(c.z, -c.s_int, c.v);
    case EvalRoute::ZetaReduction:
      if (c.z_one) {
        if (c.s.re() <= 1) throw DomainError("zeta-reduction: z = 1 requires Re(s) > 1");
        return hurwitz_zeta(c.s, c.v, ctx);
      }
      if (c.z_minus_one) return phi_zeta_minus_one(c.s, c.v, ctx);
      throw DomainError("zeta-reduction: z must be 1 or -1");
    case EvalRoute::Quadrature:
      return phi_quadrature(c, ctx);
  }
  throw DomainError("unknown route");
}

Complex lerch_phi_neg_int(const Complex& z, int k, const Complex& v, const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("lerch_phi_neg_int: k must be non-negative");
  PrecisionScope scope(ctx);
  Complex vv = lift(v);
  long n = 0;
  if (near_integer(vv, n, pow10(-ctx.digits)) && n <= 0) throw DomainError("lerch_phi_neg_int: v is a non-positive integer");
  return phi_neg_int(lift(z), k, vv);
}

Complex lerch_phi_sderiv(const LerchArgs& args, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Classified c = classify(args);
  if (c.z_zero) return -(log(c.v) * shifted_power(c.v, c.s));
  if (c.z_one) {
    if (c.s.re() <= 1) throw DomainError("lerch_phi_sderiv: z = 1 requires Re(s) > 1");
    return hurwitz_zeta_sderiv(c.s, c.v, ctx);
  }
  if (c.z_minus_one && abs(c.s - Complex(1)) > Real(1e-3)) {
    Complex a = c.v / Real(2), b = (c.v + Complex(1)) / Real(2);
    Complex two_s = pow(Complex(2), -c.s);
    Complex diff = hurwitz_zeta(c.s, a, ctx) - hurwitz_zeta(c.s, b, ctx);
    Complex ddiff = hurwitz_zeta_sderiv(c.s, a, ctx) - hurwitz_zeta_sderiv(c.s, b, ctx);
    Real ln2 = boost::multiprecision::log(Real(2));
    return two_s * (ddiff - ln2 * diff);
  }
  if (c.modulus <= kDirectRadius) {
    Complex zn(1);
    auto res = sum_series(
        [&](long n) {
          if (n > 0) zn *= c.z;
          Complex x = c.v + Complex(n);
          return -(zn * log(x) * shifted_power(x, c.s));
        },
        SeriesMode::Direct, ctx);
    if (!res.converged) throw ConvergenceError("lerch_phi_sderiv: series did not converge");
    return res.value;
  }
  LerchArgs a{c.z, c.s, c.v};
  return fd_derivative(
      [a](const Complex& s, const PrecisionContext& hi) {
        LerchArgs b = a;
        b.s = s;
        return lerch_phi(b, hi).value;
      },
      c.s, ctx);
}

}  // namespace lerchkit
