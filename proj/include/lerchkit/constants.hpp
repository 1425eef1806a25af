#pragma once

#include "lerchkit/mpcore.hpp"

namespace lerchkit {

struct Constants {
  Real pi;
  Real catalan;
  Real glaisher;
  Real apery;
};

/// Memoised per working precision; safe to call from several threads.
Constants constants(const PrecisionContext& ctx);

/// Euler's constant as -psi(1).
Real euler_gamma(const PrecisionContext& ctx);

/// Second, independent computation path for each constant. The primary paths
/// behind constants() are
///   pi       Gauss-Legendre AGM
///   catalan  CVZ on sum (-1)^n/(2n+1)^2
///   glaisher exp(1/12 - zeta'(-1)) from the Euler-Maclaurin derivative
///   apery    5/2 sum (-1)^(n+1) / (n^3 C(2n,n))
/// and the alternates below are
///   pi       Machin: 16 atan(1/5) - 4 atan(1/239)
///   catalan  pi/8 log(2+sqrt 3) + 3/8 sum (n!)^2/((2n)! (2n+1)^2)
///   glaisher log A = (gamma + log 2pi)/12 - zeta'(2)/(2 pi^2), with
///            zeta'(2) = 2 eta'(2) - (pi^2/6) log 2 and eta'(2) by CVZ
///   apery    Euler-Maclaurin zeta(3, 1)
namespace alt {
Real pi(const PrecisionContext& ctx);
Real catalan(const PrecisionContext& ctx);
Real glaisher(const PrecisionContext& ctx);
Real apery(const PrecisionContext& ctx);
}  // namespace alt

}  // namespace lerchkit
