#pragma once

#include "lerchkit/mpcore.hpp"

#include <string>

namespace lerchkit {

struct LerchArgs {
  Complex z;
  Complex s;
  Complex v;
};

enum class EvalRoute { SeriesDirect, SeriesAccelerated, NegIntClosedForm, ZetaReduction, Quadrature };

const char* route_name(EvalRoute r);

struct PhiValue {
  Complex value;
  EvalRoute route;
};

/// Phi(z, s, v) = sum_{n>=0} z^n (v+n)^-s with automatic route selection:
///   z = 0                      -> v^-s
///   s in {0, -1, -2, ...}      -> closed rational form (z != 1)
///   z = 1                      -> zeta(s, v), Re(s) > 1
///   z = -1                     -> 2^-s (zeta(s, v/2) - zeta(s, (v+1)/2))
///   |z| <= 0.98                -> direct series
///   0.98 < |z| <= 1            -> tail expansion in 1/(v+N) (Re(s) > 0 on |z| = 1)
/// Anything else raises DomainError.
PhiValue lerch_phi(const LerchArgs& args, const PrecisionContext& ctx);

/// Forces a specific route. SeriesAccelerated at z = -1 uses the CVZ
/// alternating transform; Quadrature integrates
///   t^(s-1) e^(-(v-1)t) / (e^t - z) / Gamma(s)
/// over (0, inf) with the exp-sinh rule. Throws DomainError when the route
/// does not apply to the arguments.
Complex lerch_phi_via(EvalRoute route, const LerchArgs& args, const PrecisionContext& ctx);

/// Phi(z, -k, v) = P_k(z) / (1 - z)^(k+1) with P_0 = 1 and
/// P_{j+1} = (1 - z)(z P_j' + v P_j) + (j+1) z P_j.
Complex lerch_phi_neg_int(const Complex& z, int k, const Complex& v, const PrecisionContext& ctx);

/// d/ds Phi(z, s, v).
Complex lerch_phi_sderiv(const LerchArgs& args, const PrecisionContext& ctx);

}  // namespace lerchkit
