#pragma once

// Gamma, polygamma and Hurwitz zeta at arbitrary precision. All entry points
// round their inputs to ctx working precision and return values at that
// precision.

#include "lerchkit/mpcore.hpp"

namespace lerchkit {

/// Principal log-gamma (analytic on C minus (-inf, 0]). DomainError at poles.
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);
Complex gamma(const Complex& z, const PrecisionContext& ctx);

/// psi^(order)(z) for 0 <= order <= 4.
Complex polygamma(int order, const Complex& z, const PrecisionContext& ctx);

/// zeta(s, v) by Euler-Maclaurin, any complex s != 1.
Complex hurwitz_zeta(const Complex& s, const Complex& v, const PrecisionContext& ctx);
/// d/ds zeta(s, v), from the differentiated Euler-Maclaurin formula.
Complex hurwitz_zeta_sderiv(const Complex& s, const Complex& v, const PrecisionContext& ctx);

/// Bernoulli number B_{2k} rounded to the current precision.
/// Thread-safe; the underlying rational table is computed once per size.
Real bernoulli_b2k(int k);

}  // namespace lerchkit
