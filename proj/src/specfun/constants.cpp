#include "lerchkit/constants.hpp"

#include "lerchkit/series.hpp"
#include "lerchkit/specfun.hpp"

#include <map>
#include <mutex>

namespace lerchkit {

namespace {

std::mutex g_const_mutex;
std::map<int, Constants> g_const_memo;  // keyed by working digits

Real sum_real(const TermFn& term, SeriesMode mode, const PrecisionContext& ctx, const char* what) {
  SeriesResult r = sum_series(term, mode, ctx);
  if (!r.converged) throw ConvergenceError(std::string(what) + ": series did not converge");
  return r.value.re();
}

Real pi_agm() {
  using boost::multiprecision::sqrt;
  const Real eps = pow10(-current_context().working_digits());
  Real a = 1, b = sqrt(Real(0.5)), t = Real(0.25), p = 1;
  for (int i = 0; i < 64; ++i) {
    Real an = (a + b) / 2;
    Real bn = sqrt(a * b);
    Real d = a - an;
    t -= p * d * d;
    p *= 2;
    a = an;
    b = bn;
    if (boost::multiprecision::abs(a - b) <= eps) break;
  }
  Real s = a + b;
  return s * s / (4 * t);
}

Real catalan_cvz(const PrecisionContext& ctx) {
  return sum_real(
      [](long n) {
        Real d = Real(2 * n + 1);
        Real t = 1 / (d * d);
        return Complex(n % 2 ? Real(-t) : t);
      },
      SeriesMode::AlternatingAccelerated, ctx, "catalan");
}

Real apery_binomial(const PrecisionContext& ctx) {
  // term n (n >= 1): (-1)^(n+1) / (n^3 C(2n, n)), C built incrementally
  Real c = 1;
  Real s = sum_real(
      [&c](long k) {
        long n = k + 1;
        c = c * Real(2 * (2 * n - 1)) / Real(n);
        Real t = 1 / (Real(n) * n * n * c);
        return Complex(k % 2 ? Real(-t) : t);
      },
      SeriesMode::Direct, ctx, "apery");
  return s * 5 / 2;
}

Real glaisher_em(const PrecisionContext& ctx) {
  Complex d = hurwitz_zeta_sderiv(Complex(-1), Complex(1), ctx);
  return boost::multiprecision::exp(Real(1) / 12 - d.re());
}

Real atan_inv(long x, const PrecisionContext& ctx) {
  Real x2 = Real(x) * x;
  Real p = 1 / Real(x);
  return sum_real(
      [&](long k) {
        if (k > 0) p /= x2;
        Real t = p / (2 * k + 1);
        return Complex(k % 2 ? Real(-t) : t);
      },
      SeriesMode::Direct, ctx, "atan");
}

}  // namespace

Constants constants(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int key = ctx.working_digits();
  {
    std::lock_guard<std::mutex> lock(g_const_mutex);
    auto it = g_const_memo.find(key);
    if (it != g_const_memo.end()) return it->second;
  }
  Constants c{pi_agm(), catalan_cvz(ctx), glaisher_em(ctx), apery_binomial(ctx)};
  std::lock_guard<std::mutex> lock(g_const_mutex);
  return g_const_memo.emplace(key, c).first->second;
}

Real euler_gamma(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return -polygamma(0, Complex(1), ctx).re();
}

namespace alt {

Real pi(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return 16 * atan_inv(5, ctx) - 4 * atan_inv(239, ctx);
}

Real catalan(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  // (n!)^2/(2n)! updated as r_n = r_{n-1} * n / (2(2n-1))
  Real r = 1;
  Real s = sum_real(
      [&r](long n) {
        if (n > 0) r = r * Real(n) / Real(2 * (2 * n - 1));
        Real d = Real(2 * n + 1);
        return Complex(r / (d * d));
      },
      SeriesMode::Direct, ctx, "catalan-alt");
  Real p = alt::pi(ctx);
  return p / 8 * boost::multiprecision::log(2 + boost::multiprecision::sqrt(Real(3))) + 3 * s / 8;
}

Real glaisher(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  // eta'(2) = sum_{n>=1} (-1)^n log(n)/n^2; the n = 1 term vanishes.
  Real eta_d = sum_real(
      [](long k) {
        Real n = Real(k + 2);
        Real t = boost::multiprecision::log(n) / (n * n);
        return Complex(k % 2 ? Real(-t) : t);
      },
      SeriesMode::AlternatingAccelerated, ctx, "eta'");
  Real p = alt::pi(ctx);
  Real pi2 = p * p;
  Real zeta_d2 = 2 * eta_d - pi2 / 6 * boost::multiprecision::log(Real(2));
  Real g = euler_gamma(ctx);
  Real log_a = (g + boost::multiprecision::log(2 * p)) / 12 - zeta_d2 / (2 * pi2);
  return boost::multiprecision::exp(log_a);
}

Real apery(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return hurwitz_zeta(Complex(3), Complex(1), ctx).re();
}

}  // namespace alt

}  // namespace lerchkit
