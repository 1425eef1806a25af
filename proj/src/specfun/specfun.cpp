#include "lerchkit/specfun.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace lerchkit {

namespace {

using boost::multiprecision::mpq_rational;
using boost::multiprecision::mpz_int;

std::mutex g_bern_mutex;
std::vector<mpq_rational> g_bern_exact;             // index k -> B_{2k}
std::map<unsigned, std::vector<Real>> g_bern_real;  // per working precision

// Tangent numbers T_1..T_n (Brent-Harvey), then
// B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
void grow_exact(size_t n) {
  if (g_bern_exact.size() > n) return;
  size_t m = std::max(n + 1, g_bern_exact.size() * 2);
  std::vector<mpz_int> t(m + 1);
  t[1] = 1;
  for (size_t k = 2; k <= m; ++k) t[k] = mpz_int(k - 1) * t[k - 1];
  for (size_t k = 2; k <= m; ++k)
    for (size_t j = k; j <= m; ++j) t[j] = mpz_int(j - k) * t[j - 1] + mpz_int(j - k + 2) * t[j];
  g_bern_exact.assign(m + 1, mpq_rational(0));
  g_bern_exact[0] = 1;
  for (size_t k = 1; k <= m; ++k) {
    mpz_int four_k = mpz_int(1) << (2 * k);
    mpq_rational b(mpz_int(2 * k) * t[k], four_k * (four_k - 1));
    g_bern_exact[k] = (k % 2) ? b : mpq_rational(-b);
  }
}

Real to_real(const mpq_rational& q) {
  return Real(mpz_int(numerator(q))) / Real(mpz_int(denominator(q)));
}

void check_pole(const Complex& z, const char* what) {
  long n = 0;
  if (near_integer(z, n, pow10(-current_context().digits)) && n <= 0)
    throw DomainError(std::string(what) + ": pole at non-positive integer " + std::to_string(n));
}

// Shift so that Re(z) >= R where the asymptotic series reaches 10^-W.
long shift_for(const Complex& z) {
  double r = 0.37 * current_context().working_digits() + 6.0;
  double re = z.re().convert_to<double>();
  return re >= r ? 0L : static_cast<long>(std::ceil(r - re));
}

struct EmValue {
  Complex value;
  Complex deriv;
};

// Euler-Maclaurin for zeta(s, v) and optionally d/ds.
EmValue euler_maclaurin(const Complex& s, const Complex& v, bool want_deriv) {
  const PrecisionContext& ctx = current_context();
  const int W = ctx.working_digits();
  const Real eps = pow10(-W);
  const int max_k = W / 2 + 4;
  check_pole(v, "hurwitz_zeta");
  if (abs(s - Complex(1)) < pow10(-ctx.digits)) throw DomainError("hurwitz_zeta: pole at s = 1");

  double target = 0.8 * (W + abs(s).convert_to<double>()) + 5.0;
  long n_base = std::max(0L, static_cast<long>(std::ceil(target - v.re().convert_to<double>())));

  for (int attempt = 0; attempt < 2; ++attempt) {
    long N = attempt == 0 ? n_base : 2 * n_base + W;
    CompensatedSum head, dhead;
    const bool real_case = s.is_real() && v.is_real() && v.re() > 0;
    for (long n = 0; n < N; ++n) {
      Complex x = v + Complex(n);
      Complex t;
      Complex lx;
      if (real_case) {
        Real lr = boost::multiprecision::log(x.re());
        t = Complex(boost::multiprecision::exp(-s.re() * lr));
        lx = Complex(lr);
      } else {
        lx = log(x);
        t = exp(-s * lx);
      }
      head.add(t);
      if (want_deriv) dhead.add(-(lx * t));
    }
    Complex w = v + Complex(N);
    Complex lw = log(w);
    Complex w1s = exp((Complex(1) - s) * lw);  // w^(1-s)
    Complex sm1 = s - Complex(1);
    Complex ws = w1s / w;                       // w^-s
    Complex val = head.value() + w1s / sm1 + ws / Real(2);
    Complex der;
    if (want_deriv)
      der = dhead.value() - lw * w1s / sm1 - w1s / (sm1 * sm1) - lw * ws / Real(2);

    // Correction terms B_{2k}/(2k)! (s)_{2k-1} w^{-s-2k+1}.
    Complex poch = s, dpoch(1);  // (s)_1 and its s-derivative
    Complex wpow = ws / w;       // w^{-s-1}
    Complex winv2 = Complex(1) / (w * w);
    Real fact = 2;               // (2k)!
    bool ok = false;
    for (int k = 1; k <= max_k; ++k) {
      Real c = bernoulli_b2k(k) / fact;
      Complex term = c * poch * wpow;
      val += term;
      bool small = abs(term) <= eps * abs(val);
      if (want_deriv) {
        // (s)_{2k-1} vanishes at non-positive integers but its derivative does not
        Complex dterm = c * (dpoch - lw * poch) * wpow;
        der += dterm;
        small = small && abs(dterm) <= eps * abs(der);
      } else {
        small = small || poch.is_zero();
      }
      if (small) {
        ok = true;
        break;
      }
      // (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
      Complex a = s + Complex(2 * k - 1), b = s + Complex(2 * k);
      Complex ab = a * b;
      dpoch = dpoch * ab + poch * (a + b);
      poch *= ab;
      wpow *= winv2;
      fact *= Real((2 * k + 1) * (2 * k + 2));
    }
    if (ok) return {val, der};
  }
  throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin tail bound not met");
}

}  // namespace

Real bernoulli_b2k(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli_b2k: negative index");
  unsigned prec = Real::default_precision();
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  auto& tab = g_bern_real[prec];
  if (tab.size() <= static_cast<size_t>(k)) {
    grow_exact(static_cast<size_t>(k));
    size_t old = tab.size();
    size_t want = std::max(static_cast<size_t>(k) + 1, std::min(g_bern_exact.size(), old * 2 + 16));
    for (size_t i = old; i < want; ++i) tab.push_back(to_real(g_bern_exact[i]));
  }
  return tab[static_cast<size_t>(k)];
}

Complex log_gamma(const Complex& z_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Complex z = lift(z_in);
  check_pole(z, "gamma");
  const Real eps = pow10(-ctx.working_digits());

  long N = shift_for(z);
  CompensatedSum shift;
  for (long j = 0; j < N; ++j) shift.add(log(z + Complex(j)));
  Complex w = z + Complex(N);

  Complex lw = log(w);
  Complex res = (w - Complex(Real(0.5))) * lw - w + Complex(boost::multiprecision::log(2 * real_pi()) / 2);
  Complex winv = Complex(1) / w;
  Complex winv2 = winv * winv;
  Complex wp = winv;
  for (int k = 1; k < 4 * ctx.working_digits(); ++k) {
    Complex term = wp * (bernoulli_b2k(k) / Real((2 * k) * (2 * k - 1)));
    res += term;
    if (abs(term) <= eps * std::max(Real(1), abs(res))) break;
    wp *= winv2;
  }
  res -= shift.value();
  if (z.is_real() && z.re() > 0) return {res.re(), Real(0)};
  return res;
}

Complex gamma(const Complex& z_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Complex z = lift(z_in);
  Complex lg = log_gamma(z, ctx);
  if (z.is_real()) {
    // Gamma is real on the real line; Im(log_gamma) is a multiple of pi there.
    Real mag = boost::multiprecision::exp(lg.re());
    long k = boost::multiprecision::round(lg.im() / real_pi()).convert_to<long>();
    return {(k % 2) ? Real(-mag) : mag, Real(0)};
  }
  return exp(lg);
}

Complex polygamma(int order, const Complex& z_in, const PrecisionContext& ctx) {
  if (order < 0 || order > 4) throw DomainError("polygamma: order must be in 0..4");
  PrecisionScope scope(ctx);
  Complex z = lift(z_in);
  check_pole(z, "polygamma");
  const Real eps = pow10(-ctx.working_digits());

  long N = shift_for(z);
  Real nfact = 1;
  for (int i = 2; i <= order; ++i) nfact *= i;
  CompensatedSum shift;
  for (long j = 0; j < N; ++j) shift.add(pow(z + Complex(j), static_cast<long>(-order - 1)));
  Complex w = z + Complex(N);
  Complex winv = Complex(1) / w;
  Complex winv2 = winv * winv;

  Complex res;
  if (order == 0) {
    res = log(w) - winv / Real(2);
    Complex wp = winv2;
    for (int k = 1; k < 4 * ctx.working_digits(); ++k) {
      Complex term = wp * (bernoulli_b2k(k) / Real(2 * k));
      res -= term;
      if (abs(term) <= eps * std::max(Real(1), abs(res))) break;
      wp *= winv2;
    }
    return res - shift.value();
  }

  Real nm1fact = nfact / order;
  Complex wn = pow(winv, static_cast<long>(order));  // w^-n
  Complex acc = nm1fact * wn + nfact * wn * winv / Real(2);
  Complex wp = wn * winv2;  // w^{-2k-n}, k = 1
  Real fact2k = 2;          // (2k)!
  for (int k = 1; k < 4 * ctx.working_digits(); ++k) {
    Real num = 1;  // (2k+n-1)!/(2k)!
    for (int i = 2 * k + 1; i <= 2 * k + order - 1; ++i) num *= i;
    Complex term = wp * (bernoulli_b2k(k) * num);
    acc += term;
    if (abs(term) <= eps * std::max(Real(1), abs(acc))) break;
    wp *= winv2;
    fact2k *= Real((2 * k + 1) * (2 * k + 2));
  }
  if (order % 2 == 0) acc = -acc;  // (-1)^(n+1)
  Complex corr = shift.value() * nfact;
  // psi^(n)(z) = psi^(n)(z+N) - (-1)^n n! sum (z+j)^(-n-1)
  return order % 2 ? acc + corr : acc - corr;
}

Complex hurwitz_zeta(const Complex& s, const Complex& v, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return euler_maclaurin(lift(s), lift(v), false).value;
}

Complex hurwitz_zeta_sderiv(const Complex& s, const Complex& v, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return euler_maclaurin(lift(s), lift(v), true).deriv;
}

}  // namespace lerchkit
