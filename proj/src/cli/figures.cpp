#include "lerchkit/cli.hpp"
#include "lerchkit/specfun.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace lerchkit::cli {

namespace {

constexpr int kFigureDigits = 30;
constexpr double kBlowUp = 1e15;

using Eval = std::function<Complex(const Complex&, const FigureInfo&, const PrecisionContext&)>;
/// Real functions that vanish at the singular abscissae.
using Dens = std::function<std::vector<double>(double, const FigureInfo&)>;

struct FigureDef {
  FigureInfo info;
  Eval eval;
  Dens dens;
};

Complex p3(long e) { return pow(Complex(3), e); }

double rgamma(double x) {
  // 1/Gamma is entire; tgamma overflows to inf at the poles
  double g = std::tgamma(x);
  return std::isfinite(g) ? 1.0 / g : 0.0;
}

const std::vector<FigureDef>& defs() {
  static const std::vector<FigureDef> all = [] {
    std::vector<FigureDef> v;
    v.push_back({{"sec-cos-power", "(sec(3^n m) cos(3^n r))^(2*3^(2-2n)) over real m", false, 0.05, 2, 0, 0, 200, 2,
                  0.5},
                 [](const Complex& m, const FigureInfo& f, const PrecisionContext&) {
                   Complex q = p3(f.n);
                   Complex e = Complex(Real(2)) * p3(2 - 2 * f.n);
                   return pow(sec(q * m) * cos(q * Complex(Real(f.r))), e);
                 },
                 [](double m, const FigureInfo& f) { return std::vector<double>{std::cos(std::pow(3.0, f.n) * m)}; }});
    v.push_back({{"cos-sec-recip", "cos(m) sec(1/m) over real m", false, 0.2, 3, 0, 0, 200, 0, 0},
                 [](const Complex& m, const FigureInfo&, const PrecisionContext&) {
                   return cos(m) * sec(Complex(1) / m);
                 },
                 [](double m, const FigureInfo&) { return std::vector<double>{std::cos(1.0 / m), m}; }});
    v.push_back({{"cos-sec-recip-complex", "cos(m) sec(1/m) over a complex grid", true, 0.2, 3, -1, 1, 60, 0, 0},
                 [](const Complex& m, const FigureInfo&, const PrecisionContext&) {
                   return cos(m) * sec(Complex(1) / m);
                 },
                 nullptr});
    v.push_back({{"tanh-coth-recip", "tanh(r)^3 coth(1/r)^3 over real r", false, -3, 3, 0, 0, 200, 0, 0},
                 [](const Complex& r, const FigureInfo&, const PrecisionContext&) {
                   return pow(tanh(r) * coth(Complex(1) / r), 3L);
                 },
                 [](double r, const FigureInfo&) { return std::vector<double>{r}; }});
    v.push_back({{"tanh-coth-recip-complex", "tanh(r)^3 coth(1/r)^3 over a complex grid", true, -2, 2, -2, 2, 60, 0,
                  0},
                 [](const Complex& r, const FigureInfo&, const PrecisionContext&) {
                   return pow(tanh(r) * coth(Complex(1) / r), 3L);
                 },
                 nullptr});
    v.push_back({{"qg-cc1-rhs",
                  "3^(((-1)^n-1)/4) Gamma((a+3)/4) (Gamma((3^-n a+1)/4)/Gamma((3^-n a+3)/4))^((-1)^n) / "
                  "Gamma((a+1)/4) over real a",
                  false, 0, 10, 0, 0, 200, 2, 0},
                 [](const Complex& a, const FigureInfo& f, const PrecisionContext& ctx) {
                   const long sgn = f.n % 2 == 0 ? 1 : -1;
                   Complex q = p3(-f.n) * a;
                   Complex ratio = gamma((q + Complex(1)) / Complex(4), ctx) / gamma((q + Complex(3)) / Complex(4), ctx);
                   Complex pre = sgn == 1 ? Complex(1) : Complex(1) / sqrt(Complex(3));
                   return pre * gamma((a + Complex(3)) / Complex(4), ctx) * pow(ratio, sgn) /
                          gamma((a + Complex(1)) / Complex(4), ctx);
                 },
                 [](double a, const FigureInfo& f) {
                   const double q = std::pow(3.0, -static_cast<double>(f.n)) * a;
                   const double top = f.n % 2 == 0 ? (q + 1) / 4 : (q + 3) / 4;
                   return std::vector<double>{rgamma((a + 3) / 4), rgamma(top)};
                 }});
    v.push_back({{"tan-cot-power", "(tan(3^(n-1) x/2) cot(3^n x/2))^(3^-n) over real x", false, 0.005, 1, 0, 0, 200,
                  4, 0},
                 [](const Complex& x, const FigureInfo& f, const PrecisionContext&) {
                   Complex half(Real(1) / 2);
                   return pow(tan(half * p3(f.n - 1) * x) * cot(half * p3(f.n) * x), p3(-f.n));
                 },
                 [](double x, const FigureInfo& f) {
                   const double q = std::pow(3.0, f.n);
                   return std::vector<double>{std::cos(q / 6 * x), std::sin(q / 2 * x)};
                 }});
    v.push_back({{"poly-power-complex", "(z^(3^(n-1)) + 1)^(3^(1-2n) (3^n-1)/2) over a complex grid", true, -1.5, 1.5,
                  -1.5, 1.5, 60, 2, 0},
                 [](const Complex& z, const FigureInfo& f, const PrecisionContext&) {
                   Complex e = p3(1 - 2 * f.n) * (p3(f.n) - Complex(1)) / Complex(2);
                   return pow(pow(z, static_cast<long>(std::lround(std::pow(3.0, f.n - 1)))) + Complex(1), e);
                 },
                 nullptr});
    return v;
  }();
  return all;
}

const FigureDef* def_of(const std::string& id) {
  for (const auto& d : defs())
    if (d.info.id == id) return &d;
  return nullptr;
}

std::string num(double x) {
  std::ostringstream o;
  o << std::setprecision(15) << x;
  return o.str();
}

std::string coord(double x) {
  std::ostringstream o;
  o << std::setprecision(10) << x;
  return o.str();
}

bool singular_near(const FigureDef& d, const FigureInfo& f, double x, double h) {
  if (!d.dens) return false;
  const auto a = d.dens(x - h / 2, f), b = d.dens(x + h / 2, f), c = d.dens(x, f);
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] == 0 || (a[i] < 0) != (b[i] < 0)) return true;
  return false;
}

/// Empty string when the point is singular.
std::string value_fields(const FigureDef& d, const FigureInfo& f, const Complex& arg, const PrecisionContext& ctx) {
  try {
    Complex v = d.eval(arg, f, ctx);
    if (!v.is_finite()) return {};
    const double re = v.re().convert_to<double>(), im = v.im().convert_to<double>();
    const double ab = std::hypot(re, im);
    if (!std::isfinite(ab) || ab > kBlowUp) return {};
    return num(re) + "," + num(im) + "," + num(ab);
  } catch (const std::exception&) {
    return {};
  }
}

}  // namespace

const std::vector<FigureInfo>& figures() {
  static const std::vector<FigureInfo> infos = [] {
    std::vector<FigureInfo> v;
    for (const auto& d : defs()) v.push_back(d.info);
    return v;
  }();
  return infos;
}

const FigureInfo* find_figure(const std::string& id) {
  const FigureDef* d = def_of(id);
  return d ? &d->info : nullptr;
}

std::string figure_csv(const FigureInfo& f) {
  const FigureDef* d = def_of(f.id);
  if (!d) throw ConfigError("unknown figure id '" + f.id + "'");
  if (!(std::isfinite(f.lo) && std::isfinite(f.hi) && f.lo < f.hi)) throw ConfigError("range must satisfy lo < hi");
  if (f.complex_domain && !(std::isfinite(f.im_lo) && std::isfinite(f.im_hi) && f.im_lo < f.im_hi))
    throw ConfigError("imaginary range must satisfy lo < hi");
  if (f.points < 2 || f.points > 100000) throw ConfigError("points must lie in [2, 100000]");
  if (d->info.n != 0 && (f.n < 1 || f.n > 12)) throw ConfigError("n must lie in [1, 12]");

  const PrecisionContext ctx = ctx_new(kFigureDigits);
  PrecisionScope scope(ctx);
  std::ostringstream csv;
  const double h = (f.hi - f.lo) / (f.points - 1);
  auto at = [&](int i) { return i == f.points - 1 ? f.hi : f.lo + i * h; };
  if (!d->info.complex_domain) {
    csv << "x,re,im,abs\n";
    for (int i = 0; i < f.points; ++i) {
      const double x = at(i);
      std::string vals = singular_near(*d, f, x, h) ? "" : value_fields(*d, f, Complex(Real(coord(x))), ctx);
      csv << coord(x) << "," << (vals.empty() ? ",," : vals) << "\n";
    }
    return csv.str();
  }
  csv << "x,y,re,im,abs\n";
  const double hy = (f.im_hi - f.im_lo) / (f.points - 1);
  for (int j = 0; j < f.points; ++j) {
    const double y = j == f.points - 1 ? f.im_hi : f.im_lo + j * hy;
    for (int i = 0; i < f.points; ++i) {
      const double x = at(i);
      std::string vals = value_fields(*d, f, Complex(Real(coord(x)), Real(coord(y))), ctx);
      csv << coord(x) << "," << coord(y) << "," << (vals.empty() ? ",," : vals) << "\n";
    }
  }
  return csv.str();
}

}  // namespace lerchkit::cli
