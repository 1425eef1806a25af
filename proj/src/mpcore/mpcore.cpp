#include "lerchkit/mpcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lerchkit {

namespace {

thread_local const PrecisionContext* tl_ctx = nullptr;

const PrecisionContext& default_context() {
  static const PrecisionContext ctx{};
  return ctx;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Real parse_real(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty number");
  // MPFR accepts a superset of decimal syntax; reject anything else up front.
  for (char c : t) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' ||
          c == 'E')) {
      throw std::invalid_argument("malformed number '" + t + "'");
    }
  }
  try {
    return Real(t);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number '" + t + "'");
  }
}

}  // namespace

PrecisionContext PrecisionContext::escalated(int extra) const {
  PrecisionContext c = *this;
  c.digits += extra;
  return c;
}

Real PrecisionContext::target_epsilon() const {
  PrecisionScope scope(*this);
  return pow10(-digits);
}

Real PrecisionContext::working_epsilon() const {
  PrecisionScope scope(*this);
  return pow10(-working_digits());
}

PrecisionContext ctx_new(int digits, int guard_digits, long max_terms) {
  if (digits < 15) throw std::invalid_argument("digits must be >= 15");
  if (guard_digits < 5) throw std::invalid_argument("guard_digits must be >= 5");
  if (max_terms < 100) throw std::invalid_argument("max_terms must be >= 100");
  PrecisionContext c;
  c.digits = digits;
  c.guard_digits = guard_digits;
  c.max_terms = max_terms;
  return c;
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx)
    : saved_digits_(Real::default_precision()), saved_ctx_(tl_ctx), ctx_(ctx) {
  Real::default_precision(static_cast<unsigned>(ctx_.working_digits()));
  tl_ctx = &ctx_;
}

PrecisionScope::~PrecisionScope() {
  Real::default_precision(saved_digits_);
  tl_ctx = saved_ctx_;
}

const PrecisionContext& current_context() noexcept { return tl_ctx ? *tl_ctx : default_context(); }

Real lift(const Real& x) {
  Real r = x;
  r.precision(Real::default_precision());
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow10(int exponent) {
  Real r = 10;
  return boost::multiprecision::pow(r, exponent);
}

// ---------------------------------------------------------------- Complex

Complex Complex::parse(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(text), Real(0)};
  if (text.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument("expected 're' or 're,im' but got '" + text + "'");
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

bool Complex::is_finite() const {
  using boost::multiprecision::isfinite;
  return isfinite(re_) && isfinite(im_);
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  if (o.im_ == 0) return *this *= o.re_;
  Real r = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.im_ == 0) return *this /= o.re_;
  Real d = o.re_ * o.re_ + o.im_ * o.im_;
  if (d == 0) throw DomainError("complex division by zero");
  Real r = (re_ * o.re_ + im_ * o.im_) / d;
  im_ = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& r) {
  re_ *= r;
  im_ *= r;
  return *this;
}

Complex& Complex::operator/=(const Real& r) {
  if (r == 0) throw DomainError("division by zero");
  re_ /= r;
  im_ /= r;
  return *this;
}

Complex lift(const Complex& z) { return {lift(z.re()), lift(z.im())}; }

Real abs(const Complex& z) {
  if (z.im() == 0) return boost::multiprecision::abs(z.re());
  if (z.re() == 0) return boost::multiprecision::abs(z.im());
  return boost::multiprecision::hypot(z.re(), z.im());
}

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real arg(const Complex& z) {
  if (z.im() == 0) return z.re() < 0 ? real_pi() : Real(0);
  return boost::multiprecision::atan2(z.im(), z.re());
}

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }

bool near_integer(const Complex& z, long& n, const Real& tol) {
  if (boost::multiprecision::abs(z.im()) > tol) return false;
  Real r = boost::multiprecision::round(z.re());
  if (boost::multiprecision::abs(z.re() - r) > tol) return false;
  if (boost::multiprecision::abs(r) > Real(1e15)) return false;
  n = r.convert_to<long>();
  return true;
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re());
  if (z.im() == 0) return {m, Real(0)};
  return {m * boost::multiprecision::cos(z.im()), m * boost::multiprecision::sin(z.im())};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw DomainError("log(0)");
  if (z.im() == 0 && z.re() > 0) return {boost::multiprecision::log(z.re()), Real(0)};
  Real n = norm(z);
  // log|z| = log1p(|z|^2 - 1)/2 keeps relative accuracy near the unit circle.
  Real lr = boost::multiprecision::log1p(n - 1) / 2;
  return {lr, arg(z)};
}

Complex log1p(const Complex& z) {
  Real x1 = Real(1) + z.re();
  if (x1 == 0 && z.im() == 0) throw DomainError("log1p(-1)");
  // |1+z|^2 - 1 = 2 Re z + |z|^2, formed without the cancellation in 1+z
  Real lr = boost::multiprecision::log1p(2 * z.re() + norm(z)) / 2;
  return {lr, boost::multiprecision::atan2(z.im(), x1)};
}

Complex pow(const Complex& z, long n) {
  if (n == 0) return Complex(1);
  if (n < 0) {
    if (z.is_zero()) throw DomainError("0 raised to a negative power");
    return Complex(1) / pow(z, -n);
  }
  if (z.im() == 0) return {boost::multiprecision::pow(z.re(), n), Real(0)};
  Complex result(1), base = z;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Complex pow(const Complex& z, const Complex& w) {
  if (z.is_zero()) {
    if (w.re() > 0) return Complex(0);
    throw DomainError("0 raised to a power with non-positive real part");
  }
  if (w.im() == 0) {
    Real r = boost::multiprecision::round(w.re());
    if (r == w.re() && boost::multiprecision::abs(r) < 1024) return pow(z, r.convert_to<long>());
    if (z.im() == 0 && z.re() > 0) return {boost::multiprecision::pow(z.re(), w.re()), Real(0)};
  }
  return exp(w * log(z));
}

Complex sqrt(const Complex& z) {
  if (z.im() == 0) {
    if (z.re() >= 0) return {boost::multiprecision::sqrt(z.re()), Real(0)};
    return {Real(0), boost::multiprecision::sqrt(-z.re())};
  }
  Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re())) / 2);
  if (z.re() >= 0) return {a, z.im() / (2 * a)};
  Real b = z.im() < 0 ? Real(-a) : a;
  return {boost::multiprecision::abs(z.im()) / (2 * a), b};
}

Complex sin(const Complex& z) {
  using namespace boost::multiprecision;
  if (z.im() == 0) return {sin(z.re()), Real(0)};
  return {sin(z.re()) * cosh(z.im()), cos(z.re()) * sinh(z.im())};
}

Complex cos(const Complex& z) {
  using namespace boost::multiprecision;
  if (z.im() == 0) return {cos(z.re()), Real(0)};
  return {cos(z.re()) * cosh(z.im()), -(sin(z.re()) * sinh(z.im()))};
}

Complex sinh(const Complex& z) {
  using namespace boost::multiprecision;
  if (z.im() == 0) return {sinh(z.re()), Real(0)};
  return {sinh(z.re()) * cos(z.im()), cosh(z.re()) * sin(z.im())};
}

Complex cosh(const Complex& z) {
  using namespace boost::multiprecision;
  if (z.im() == 0) return {cosh(z.re()), Real(0)};
  return {cosh(z.re()) * cos(z.im()), sinh(z.re()) * sin(z.im())};
}

Complex atanh(const Complex& z) {
  return (log1p(z) - log1p(-z)) / Real(2);
}

Complex checked_div(const Complex& num, const Complex& den, const char* what) {
  if (abs(den) < pow10(-current_context().digits)) throw DomainError(std::string(what) + ": pole");
  return num / den;
}

Complex tan(const Complex& z) { return checked_div(sin(z), cos(z), "tan"); }
Complex cot(const Complex& z) { return checked_div(cos(z), sin(z), "cot"); }
Complex sec(const Complex& z) { return checked_div(Complex(1), cos(z), "sec"); }
Complex csc(const Complex& z) { return checked_div(Complex(1), sin(z), "csc"); }

Complex tanh(const Complex& z) {
  if (z.im() == 0) return {boost::multiprecision::tanh(z.re()), Real(0)};
  return checked_div(sinh(z), cosh(z), "tanh");
}

Complex coth(const Complex& z) { return checked_div(cosh(z), sinh(z), "coth"); }

Complex c_log(const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return log(lift(z));
}

Complex c_pow(const Complex& z, const Complex& w, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return pow(lift(z), lift(w));
}

// ---------------------------------------------------------------- summation

CompensatedSum::CompensatedSum() : sum_re_(0), sum_im_(0), comp_re_(0), comp_im_(0) {}

void CompensatedSum::step(Real& sum, Real& comp, const Real& x) {
  Real t = sum + x;
  if (boost::multiprecision::abs(sum) >= boost::multiprecision::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = std::move(t);
}

void CompensatedSum::add(const Complex& x) {
  step(sum_re_, comp_re_, x.re());
  if (x.im() != 0) step(sum_im_, comp_im_, x.im());
  ++count_;
}

Complex CompensatedSum::value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

// ---------------------------------------------------------------- formatting

std::string format_real(const Real& x, int digits) {
  if (x == 0) return "0";
  std::string s = x.str(digits - 1, std::ios_base::scientific);
  auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  int exp10 = std::stoi(s.substr(epos + 1));
  bool neg = mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string ds;
  for (char c : mant)
    if (c != '.') ds += c;
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();

  std::string out;
  if (exp10 >= -6 && exp10 < digits) {
    if (exp10 < 0) {
      out = "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + ds;
    } else if (static_cast<int>(ds.size()) <= exp10 + 1) {
      out = ds + std::string(static_cast<size_t>(exp10 + 1) - ds.size(), '0');
    } else {
      out = ds.substr(0, static_cast<size_t>(exp10 + 1)) + "." + ds.substr(static_cast<size_t>(exp10 + 1));
    }
  } else {
    out = ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(exp10);
  }
  return neg ? "-" + out : out;
}

std::string format_complex(const Complex& z, int digits) {
  Real scale = std::max(boost::multiprecision::abs(z.re()), boost::multiprecision::abs(z.im()));
  if (z.im() == 0 || boost::multiprecision::abs(z.im()) <= scale * pow10(-digits - 2))
    return format_real(z.re(), digits);
  std::string im = format_real(boost::multiprecision::abs(z.im()), digits);
  if (z.re() == 0 || boost::multiprecision::abs(z.re()) <= scale * pow10(-digits - 2))
    return (z.im() < 0 ? "-" : "") + im + "i";
  return format_real(z.re(), digits) + (z.im() < 0 ? "-" : "+") + im + "i";
}

std::string format_residual(const Real& x) {
  return x.str(2, std::ios_base::scientific);
}

}  // namespace lerchkit
