#pragma once

// Shorthands shared by the registry translation units. Everything here runs
// inside the PrecisionScope opened by the checker.

#include "lerchkit/constants.hpp"
#include "lerchkit/identities.hpp"
#include "lerchkit/lerch.hpp"
#include "lerchkit/specfun.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lerchkit::ident::detail {

using C = Complex;
using TermFn = std::function<C(long)>;

inline C I() { return Complex::i(); }
inline C R(long a, long b = 1) { return C(Real(a) / Real(b)); }
inline Real pi() { return real_pi(); }

/// 3^e at the current precision (exact for e >= 0).
C p3(long e);
/// 3^e for a real-valued exponent.
C p3(const C& e);

/// Route names touched while evaluating the current side.
std::set<std::string>*& route_log();

C phi(const C& z, const C& s, const C& v);
C dphi(const C& z, const C& s, const C& v);
C gam(const C& z);
C tri(const C& z);  // psi^(1)
const Constants& K();

/// sum_{p=0}^{n-1} term(p), compensated; order follows reverse_summation().
C psum(long n, const TermFn& term);
/// prod_{p=0}^{n-1} factor(p).
C pprod(long n, const TermFn& factor);
/// Cumulative partial products P_1..P_N.
std::vector<C> partial_products(int N, const TermFn& factor);

bool& reverse_flag();

// --- sampling helpers (double precision, only used for admissibility) ---

inline double d(const C& z) { return z.re().convert_to<double>(); }
inline double di(const C& z) { return z.im().convert_to<double>(); }
inline double p3d(long e) { return std::pow(3.0, static_cast<double>(e)); }
/// x rounded to 10 significant digits and parsed as an exact decimal.
C decimal(double x);

ParamSample make(std::initializer_list<std::pair<const char*, C>> kv);

/// Sample the disk |z| <= r as a decimal complex.
C disk(Rng& rng, double r);

}  // namespace lerchkit::ident::detail

namespace lerchkit::ident {
void add_theorems(std::vector<Identity>& out);
void add_products(std::vector<Identity>& out);
void add_constants(std::vector<Identity>& out);
}  // namespace lerchkit::ident
