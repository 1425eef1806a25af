#pragma once

// Extended-precision real/complex scalars and principal-branch elementary
// functions. Every value is an MPFR float whose precision is taken from the
// PrecisionScope active on the calling thread.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lerchkit {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Raised when an argument lies outside the domain of a function (poles,
/// branch points, excluded parameter regions).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative evaluation exhausts its budget without meeting
/// its error target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working-precision configuration. All arithmetic runs at
/// digits + guard_digits significant decimal digits.
struct PrecisionContext {
  int digits = 50;
  int guard_digits = 10;
  long max_terms = 100000;

  [[nodiscard]] int working_digits() const noexcept { return digits + guard_digits; }

  /// Same guard/term settings with `extra` more target digits.
  [[nodiscard]] PrecisionContext escalated(int extra) const;

  /// 10^-digits at working precision.
  [[nodiscard]] Real target_epsilon() const;
  /// 10^-(digits + guard_digits) at working precision.
  [[nodiscard]] Real working_epsilon() const;
};

/// Validating constructor: digits >= 15, guard_digits >= 5, max_terms >= 100.
PrecisionContext ctx_new(int digits, int guard_digits = 10, long max_terms = 100000);

/// Sets the thread's default MPFR precision to ctx.working_digits() for the
/// lifetime of the scope and makes ctx visible through current_context().
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
  const PrecisionContext* saved_ctx_;
  PrecisionContext ctx_;
};

/// Context of the innermost PrecisionScope on this thread (defaults when none).
const PrecisionContext& current_context() noexcept;

/// Copy of `x` rounded to the thread's current working precision.
Real lift(const Real& x);

Real real_pi();
Real pow10(int exponent);

class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(Real re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(int re) : re_(re), im_(0) {}         // NOLINT(google-explicit-constructor)
  Complex(long re) : re_(re), im_(0) {}        // NOLINT(google-explicit-constructor)
  Complex(double re) : re_(re), im_(0) {}      // NOLINT(google-explicit-constructor)
  Complex(double re, double im) : re_(re), im_(im) {}

  /// Parses "re" or "re,im" decimal text at the current precision.
  static Complex parse(const std::string& text);
  static Complex i() { return {Real(0), Real(1)}; }

  [[nodiscard]] const Real& re() const noexcept { return re_; }
  [[nodiscard]] const Real& im() const noexcept { return im_; }

  [[nodiscard]] bool is_finite() const;
  [[nodiscard]] bool is_zero() const { return re_ == 0 && im_ == 0; }
  [[nodiscard]] bool is_real() const { return im_ == 0; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& r);
  Complex& operator/=(const Real& r);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }

 private:
  Real re_;
  Real im_;
};

Complex lift(const Complex& z);

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);   // in (-pi, pi]
Complex conj(const Complex& z);

/// True when z is within `tol` of the integer `n` (both components).
bool near_integer(const Complex& z, long& n, const Real& tol);

Complex exp(const Complex& z);
/// Principal logarithm, Im in (-pi, pi]. Throws DomainError at 0.
Complex log(const Complex& z);
/// log(1 + z), accurate for small |z|.
Complex log1p(const Complex& z);
/// Principal power exp(w log z); exact repeated squaring for integer w.
/// 0^w = 0 for Re(w) > 0, DomainError otherwise.
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Complex& z, long n);
Complex sqrt(const Complex& z);

Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
Complex atanh(const Complex& z);
// The reciprocal/quotient functions throw DomainError when the denominator
// falls below 10^-digits of the active context.
Complex tan(const Complex& z);
Complex cot(const Complex& z);
Complex sec(const Complex& z);
Complex csc(const Complex& z);
Complex tanh(const Complex& z);
Complex coth(const Complex& z);

/// Quotient with the same pole detection as tan/sec.
Complex checked_div(const Complex& num, const Complex& den, const char* what);

// Context-taking entry points; inputs are rounded to ctx working precision.
Complex c_log(const Complex& z, const PrecisionContext& ctx);
Complex c_pow(const Complex& z, const Complex& w, const PrecisionContext& ctx);

/// Neumaier-compensated accumulator, applied componentwise.
class CompensatedSum {
 public:
  CompensatedSum();
  void add(const Complex& x);
  [[nodiscard]] Complex value() const;
  [[nodiscard]] long count() const noexcept { return count_; }

 private:
  static void step(Real& sum, Real& comp, const Real& x);
  Real sum_re_, sum_im_, comp_re_, comp_im_;
  long count_ = 0;
};

/// Decimal rendering with `digits` significant digits; trailing zeros trimmed.
std::string format_real(const Real& x, int digits);
/// "re" when the imaginary part is negligible, otherwise "re+imi"/"re-imi".
std::string format_complex(const Complex& z, int digits);
/// Three-significant-digit scientific rendering for residuals.
std::string format_residual(const Real& x);

}  // namespace lerchkit
