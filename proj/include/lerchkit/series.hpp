#pragma once

#include "lerchkit/mpcore.hpp"

#include <functional>

namespace lerchkit {

enum class SeriesMode { Direct, AlternatingAccelerated };

struct SeriesResult {
  Complex value;
  long terms_used = 0;
  bool converged = false;
  Real tail_bound;
};

using TermFn = std::function<Complex(long)>;

/// Sums term(0) + term(1) + ...
///
/// Direct mode stops once |term_n| and the ratio-based tail estimate are both
/// below 10^-(working digits) * |partial sum| for three consecutive terms.
/// AlternatingAccelerated expects term(n) = (-1)^n a_n and applies the
/// Cohen-Villegas-Zagier weights; the tail bound is the change between two
/// acceleration orders. Hitting ctx.max_terms yields converged = false.
SeriesResult sum_series(const TermFn& term, SeriesMode mode, const PrecisionContext& ctx);

using ComplexFn = std::function<Complex(const Complex&, const PrecisionContext&)>;

/// Central difference with h = 10^(-digits/3) and one Richardson step. f is
/// evaluated at roughly 1.5x the target digits so the difference quotient
/// keeps full accuracy.
Complex fd_derivative(const ComplexFn& f, const Complex& at, const PrecisionContext& ctx);

}  // namespace lerchkit
