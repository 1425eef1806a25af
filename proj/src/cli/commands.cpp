#include "lerchkit/cli.hpp"
#include "lerchkit/constants.hpp"
#include "lerchkit/lerch.hpp"
#include "lerchkit/specfun.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace lerchkit::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int cmd_list(const std::string& filter, std::ostream& out) {
  const auto ids = select({filter});
  size_t w = 2;
  for (const auto* id : ids) w = std::max(w, id->id.size());
  out << std::left << std::setw(static_cast<int>(w)) << "ID" << "  " << std::setw(10) << "TIER"
      << "  TITLE  |  ANCHOR\n";
  for (const auto* id : ids)
    out << std::left << std::setw(static_cast<int>(w)) << id->id << "  " << std::setw(10)
        << ident::tier_name(id->tier) << "  " << id->title << "  |  " << id->anchor << "\n";
  return kOk;
}

std::vector<std::string> normalise_formats(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& item : in)
    for (auto f : split_list(item)) {
      if (f == "md") f = "markdown";
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
  return out;
}

std::vector<std::string> flatten(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& item : in)
    for (const auto& g : split_list(item)) out.push_back(g);
  return out;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  VerificationReport rep = run_suite(cfg);
  for (const auto& ir : rep.identities) {
    out << std::left << std::setw(16) << ir.identity->id << " " << std::setw(11)
        << ident::tier_name(ir.identity->tier) << " holds " << ir.holds << "/" << ir.run.results.size();
    if (ir.fails) out << "  fails " << ir.fails;
    if (ir.eval_errors) out << "  eval-error " << ir.eval_errors;
    if (ir.discrepancies) out << "  suspected-paper-discrepancy " << ir.discrepancies;
    if (ir.holds + ir.fails + ir.discrepancies > 0) out << "  worst " << format_residual(ir.run.worst_residual);
    out << "\n";
  }
  const Totals& t = rep.totals;
  out << "total: " << t.identities << " identities, " << t.checks << " checks, " << t.holds << " holds, " << t.fails
      << " fails, " << t.discrepancies << " suspected-paper-discrepancy, " << t.eval_errors << " eval-error\n";
  for (const auto& ir : rep.identities)
    if (ir.discrepancies > 0) out << "DISCREPANCY " << ir.identity->id << ": " << ir.run.discrepancy_note << "\n";
  for (const auto& path : write_report(rep)) out << "wrote " << path << "\n";
  return rep.exit_code();
}

Complex parse_arg(const std::string& text) {
  try {
    return Complex::parse(text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse '" + text + "' as a complex number (expected re or re,im)");
  }
}

int cmd_eval(const std::string& fn, const std::vector<std::string>& args, int digits, std::ostream& out) {
  auto arity = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw UsageError(fn + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                       " argument(s), got " + std::to_string(args.size()));
  };
  if (digits < 15 || digits > 2000) throw UsageError("digits must lie in [15, 2000]");
  const PrecisionContext ctx = ctx_new(digits);
  PrecisionScope scope(ctx);
  Complex value;
  std::string route;
  if (fn == "phi" || fn == "phiprime") {
    arity(3, 3);
    LerchArgs a{parse_arg(args[0]), parse_arg(args[1]), parse_arg(args[2])};
    if (fn == "phi") {
      PhiValue v = lerch_phi(a, ctx);
      value = v.value;
      route = route_name(v.route);
    } else {
      value = lerch_phi_sderiv(a, ctx);
      route = "s-derivative of the selected phi route";
    }
  } else if (fn == "zeta" || fn == "zetaprime") {
    arity(1, 2);
    Complex s = parse_arg(args[0]);
    Complex v = args.size() == 2 ? parse_arg(args[1]) : Complex(1);
    value = fn == "zeta" ? hurwitz_zeta(s, v, ctx) : hurwitz_zeta_sderiv(s, v, ctx);
    route = fn == "zeta" ? "euler-maclaurin" : "euler-maclaurin, differentiated";
  } else if (fn == "polygamma") {
    arity(2, 2);
    long n = 0;
    if (!near_integer(parse_arg(args[0]), n, Real(0))) throw UsageError("polygamma order must be an integer");
    value = polygamma(static_cast<int>(n), parse_arg(args[1]), ctx);
    route = "recurrence and asymptotic series";
  } else if (fn == "gamma") {
    arity(1, 1);
    value = gamma(parse_arg(args[0]), ctx);
    route = "exp(log-gamma), stirling with recurrence";
  } else if (fn == "const") {
    arity(1, 1);
    const std::string& name = args[0];
    const Constants k = constants(ctx);
    if (name == "pi") {
      value = Complex(k.pi), route = "gauss-legendre agm";
    } else if (name == "catalan") {
      value = Complex(k.catalan), route = "cvz alternating series";
    } else if (name == "glaisher") {
      value = Complex(k.glaisher), route = "exp(1/12 - zeta'(-1))";
    } else if (name == "apery" || name == "zeta3") {
      value = Complex(k.apery), route = "central binomial series";
    } else if (name == "euler") {
      value = Complex(euler_gamma(ctx)), route = "-psi(1)";
    } else {
      throw UsageError("unknown constant '" + name + "' (pi, catalan, glaisher, apery, euler)");
    }
  } else {
    throw UsageError("unknown function '" + fn + "'");
  }
  out << format_complex(value, digits) << "\n";
  out << "route: " << route << "\n";
  return kOk;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw UsageError("range must be lo,hi");
  try {
    size_t u1 = 0, u2 = 0;
    double lo = std::stod(parts[0], &u1), hi = std::stod(parts[1], &u2);
    if (u1 != parts[0].size() || u2 != parts[1].size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw UsageError("range must be two numbers lo,hi");
  }
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  f.close();
  if (!f) throw IoError("cannot write " + path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended-precision Lerch transcendent toolkit and identity verifier", "lerchkit"};
  app.set_version_flag("--version", std::string("lerchkit ") + kVersion);
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registered identities");
  std::string list_filter = "*";
  list->add_option("filter", list_filter, "Identity id glob");

  auto* check = app.add_subcommand("check", "Verify identities and write reports");
  RunConfig defaults;
  int digits = defaults.digits, samples = defaults.samples_per_identity, truncation = defaults.truncation,
      jobs = defaults.jobs;
  std::uint64_t seed = defaults.seed;
  std::string tol = defaults.tolerance, out_dir, config_path;
  std::vector<std::string> only, formats;
  auto* o_digits = check->add_option("--digits", digits, "Target decimal digits");
  auto* o_tol = check->add_option("--tol", tol, "Residual tolerance");
  auto* o_samples = check->add_option("--samples", samples, "Samples per identity");
  auto* o_seed = check->add_option("--seed", seed, "Sampling seed");
  auto* o_only = check->add_option("--only", only, "Identity id globs (comma separated or repeated)");
  auto* o_out = check->add_option("--out", out_dir, "Output directory");
  auto* o_format = check->add_option("--format", formats, "json, markdown, csv (comma separated or repeated)");
  auto* o_trunc = check->add_option("--truncation", truncation, "Factors used for infinite sums and products");
  auto* o_jobs = check->add_option("--jobs", jobs, "Concurrency limit");
  check->add_option("--config", config_path, "Flat key=value config file");

  auto* eval = app.add_subcommand("eval", "Evaluate a special function");
  std::string fn;
  std::vector<std::string> eval_args;
  int eval_digits = 50;
  eval->add_option("function", fn, "phi, phiprime, zeta, zetaprime, polygamma, gamma, const")
      ->required()
      ->check(CLI::IsMember({"phi", "phiprime", "zeta", "zetaprime", "polygamma", "gamma", "const"}));
  eval->add_option("args", eval_args, "Arguments as re or re,im");
  eval->add_option("--digits", eval_digits, "Digits to print");

  auto* figure = app.add_subcommand("figure", "Emit curve data as CSV");
  std::string fig_id, fig_range, fig_imrange, fig_out;
  int fig_points = 0;
  long fig_n = 0;
  double fig_r = 0;
  bool fig_list = false;
  figure->add_option("id", fig_id, "Figure id");
  figure->add_option("--range", fig_range, "Abscissa (or real part) range lo,hi");
  figure->add_option("--imrange", fig_imrange, "Imaginary range lo,hi for complex grids");
  figure->add_option("--points", fig_points, "Points (per axis on complex grids)");
  auto* o_n = figure->add_option("--n", fig_n, "Order parameter n");
  auto* o_r = figure->add_option("--r", fig_r, "Second parameter r (sec-cos-power)");
  figure->add_option("--out", fig_out, "Write CSV to this file instead of stdout");
  figure->add_flag("--list", fig_list, "List figure ids");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*list) return cmd_list(list_filter, out);

    if (*check) {
      RunConfig cfg;
      if (!config_path.empty()) apply_config_file(config_path, cfg);
      if (const char* env = std::getenv("LERCHKIT_OUT_DIR"); env && *env) cfg.output_dir = env;
      if (o_digits->count()) cfg.digits = digits;
      if (o_tol->count()) cfg.tolerance = tol;
      if (o_samples->count()) cfg.samples_per_identity = samples;
      if (o_seed->count()) cfg.seed = seed;
      if (o_only->count()) cfg.identity_filter = flatten(only);
      if (o_out->count()) cfg.output_dir = out_dir;
      if (o_format->count()) cfg.formats = formats;
      if (o_trunc->count()) cfg.truncation = truncation;
      if (o_jobs->count()) cfg.jobs = jobs;
      cfg.formats = normalise_formats(cfg.formats);
      validate(cfg);
      return cmd_check(cfg, out);
    }

    if (*eval) {
      try {
        return cmd_eval(fn, eval_args, eval_digits, out);
      } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kEvalDomain;
      } catch (const ConvergenceError& e) {
        err << "evaluation failed: " << e.what() << "\n";
        return kFailed;
      }
    }

    if (*figure) {
      if (fig_list) {
        for (const auto& f : figures()) out << f.id << "  " << f.formula << "\n";
        return kOk;
      }
      const FigureInfo* base = find_figure(fig_id);
      if (!base) throw UsageError(fig_id.empty() ? "figure id required" : "unknown figure id '" + fig_id + "'");
      FigureInfo req = *base;
      if (!fig_range.empty()) std::tie(req.lo, req.hi) = parse_range(fig_range);
      if (!fig_imrange.empty()) std::tie(req.im_lo, req.im_hi) = parse_range(fig_imrange);
      if (fig_points) req.points = fig_points;
      if (o_n->count()) req.n = fig_n;
      if (o_r->count()) req.r = fig_r;
      const std::string body = figure_csv(req);
      if (fig_out.empty()) {
        out << body;
      } else {
        write_text(fig_out, body);
        out << "wrote " << fig_out << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace lerchkit::cli
