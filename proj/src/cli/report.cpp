#include "lerchkit/cli.hpp"

#include <json.hpp>
#include <boost/version.hpp>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lerchkit::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& text, const std::string& origin) {
  try {
    size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size() || v < -2147483647L || v > 2147483647L) throw std::invalid_argument(text);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError(origin + ": " + key + " expects an integer, got '" + text + "'");
  }
}

std::string compiler() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.digits < 15 || cfg.digits > 2000) throw ConfigError("digits must lie in [15, 2000]");
  if (cfg.samples_per_identity < 1) throw ConfigError("samples must be >= 1");
  if (cfg.truncation < 4) throw ConfigError("truncation must be >= 4");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (cfg.identity_filter.empty()) throw ConfigError("identity filter is empty");
  if (cfg.formats.empty()) throw ConfigError("no output format selected");
  for (const auto& f : cfg.formats)
    if (f != "json" && f != "markdown" && f != "csv") throw ConfigError("unknown format '" + f + "'");
  PrecisionScope scope(ctx_new(cfg.digits));
  Real tol;
  try {
    tol = Real(cfg.tolerance);
  } catch (const std::exception&) {
    throw ConfigError("tolerance '" + cfg.tolerance + "' is not a number");
  }
  if (!(tol > 0)) throw ConfigError("tolerance must be positive");
  if (tol < pow10(-cfg.digits + 10))
    throw ConfigError("tolerance " + cfg.tolerance + " is below the precision floor 1e" +
                      std::to_string(-cfg.digits + 10) + " for " + std::to_string(cfg.digits) + " digits");
}

void apply_config_text(const std::string& text, RunConfig& cfg, const std::string& origin) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "digits") {
      cfg.digits = to_int(key, value, where);
    } else if (key == "tol" || key == "tolerance") {
      cfg.tolerance = value;
    } else if (key == "samples") {
      cfg.samples_per_identity = to_int(key, value, where);
    } else if (key == "seed") {
      try {
        size_t used = 0;
        cfg.seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ConfigError(where + ": seed expects a non-negative integer");
      }
    } else if (key == "only") {
      cfg.identity_filter = split_list(value);
    } else if (key == "out") {
      cfg.output_dir = value;
    } else if (key == "format") {
      cfg.formats = split_list(value);
    } else if (key == "truncation") {
      cfg.truncation = to_int(key, value, where);
    } else if (key == "jobs") {
      cfg.jobs = to_int(key, value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(buf.str(), cfg, path);
}

std::vector<const ident::Identity*> select(const std::vector<std::string>& globs) {
  std::vector<const ident::Identity*> out;
  for (const auto& id : ident::registry())
    if (std::any_of(globs.begin(), globs.end(), [&](const std::string& g) { return ident::glob_match(g, id.id); }))
      out.push_back(&id);
  return out;
}

std::string version_stamp() {
  return std::string("lerchkit ") + kVersion + " (" + compiler() + "; mpfr " + mpfr_get_version() + "; boost " +
         std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + ")";
}

VerificationReport run_suite(const RunConfig& cfg) {
  validate(cfg);
  VerificationReport rep;
  rep.config = cfg;
  const PrecisionContext ctx = ctx_new(cfg.digits);
  ident::RunOptions opt;
  {
    PrecisionScope scope(ctx);
    opt.tol = Real(cfg.tolerance);
  }
  opt.samples = cfg.samples_per_identity;
  opt.seed = cfg.seed;
  opt.truncation = cfg.truncation;
  // Identities run one after another: the MPFR default precision is process
  // wide, so --jobs is accepted but does not fan out.
  for (const ident::Identity* id : select(cfg.identity_filter)) {
    IdentityReport ir;
    ir.identity = id;
    ir.run = ident::run_identity(*id, opt, ctx);
    for (const auto& r : ir.run.results) {
      switch (r.verdict) {
        case ident::Verdict::Holds: ++ir.holds; break;
        case ident::Verdict::Fails: ++ir.fails; break;
        case ident::Verdict::SuspectedPaperDiscrepancy: ++ir.discrepancies; break;
        case ident::Verdict::EvalError: ++ir.eval_errors; break;
      }
    }
    Totals& t = rep.totals;
    ++t.identities;
    t.checks += static_cast<int>(ir.run.results.size());
    t.holds += ir.holds;
    t.fails += ir.fails;
    t.discrepancies += ir.discrepancies;
    t.eval_errors += ir.eval_errors;
    rep.identities.push_back(std::move(ir));
  }
  return rep;
}

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kValueDigits = 25;

std::string residual_text(const ident::CheckResult& r) {
  return r.verdict == ident::Verdict::EvalError ? std::string() : format_residual(r.residual);
}

struct Row {
  std::string identity, tier, params, verdict, residual, rel, abs, lhs, rhs, tail;
  int index = 0, digits = 0, truncation = 0;
  std::string route;
};

std::vector<Row> rows(const VerificationReport& rep) {
  std::vector<Row> out;
  for (const auto& ir : rep.identities) {
    int idx = 0;
    for (const auto& r : ir.run.results) {
      PrecisionScope scope(ctx_new(std::max(r.digits_used, 15)));
      Row row;
      row.identity = ir.identity->id;
      row.tier = ident::tier_name(ir.identity->tier);
      row.index = idx++;
      row.params = r.sample.describe();
      row.verdict = ident::verdict_name(r.verdict);
      const bool ok = r.verdict != ident::Verdict::EvalError;
      row.residual = residual_text(r);
      row.rel = ok ? format_residual(r.rel_residual) : "";
      row.abs = ok ? format_residual(r.abs_residual) : "";
      row.lhs = ok ? format_complex(r.lhs_value, kValueDigits) : "";
      row.rhs = ok ? format_complex(r.rhs_value, kValueDigits) : "";
      row.digits = r.digits_used;
      row.truncation = r.truncation;
      row.tail = r.truncation > 0 && ok ? format_residual(r.tail_bound) : "";
      row.route = r.route_notes;
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::string worst(const IdentityReport& ir) {
  const bool any = ir.holds + ir.fails + ir.discrepancies > 0;
  return any ? format_residual(ir.run.worst_residual) : "";
}

std::string md_cell(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

std::string VerificationReport::to_json() const {
  ordered_json j;
  j["schema"] = kSchema;
  j["generator"] = {{"name", "lerchkit"}, {"version", kVersion}, {"stamp", version_stamp()}};
  j["config"] = {{"digits", config.digits},
                 {"tolerance", config.tolerance},
                 {"samples_per_identity", config.samples_per_identity},
                 {"seed", config.seed},
                 {"identity_filter", config.identity_filter},
                 {"truncation", config.truncation}};
  j["totals"] = {{"identities", totals.identities},
                 {"checks", totals.checks},
                 {"holds", totals.holds},
                 {"fails", totals.fails},
                 {"suspected_paper_discrepancy", totals.discrepancies},
                 {"eval_error", totals.eval_errors}};
  ordered_json ids = ordered_json::array();
  for (const auto& ir : identities) {
    ordered_json e;
    e["id"] = ir.identity->id;
    e["title"] = ir.identity->title;
    e["tier"] = ident::tier_name(ir.identity->tier);
    e["anchor"] = ir.identity->anchor;
    e["checks"] = ir.run.results.size();
    e["holds"] = ir.holds;
    e["fails"] = ir.fails;
    e["suspected_paper_discrepancy"] = ir.discrepancies;
    e["eval_error"] = ir.eval_errors;
    e["worst_residual"] = worst(ir);
    e["systematic_failure"] = ir.run.systematic_failure;
    if (ir.run.alternate_tested) {
      e["alternate"] = {{"description", ir.run.alternate_description},
                        {"holds", ir.run.alternate_holds},
                        {"total", ir.run.alternate_total}};
    } else {
      e["alternate"] = nullptr;
    }
    e["discrepancy_note"] = ir.run.discrepancy_note;
    e["notes"] = ir.identity->notes;
    ids.push_back(std::move(e));
  }
  j["identities"] = std::move(ids);
  ordered_json checks = ordered_json::array();
  for (const auto& r : rows(*this)) {
    ordered_json c;
    c["identity"] = r.identity;
    c["sample"] = r.index;
    c["params"] = r.params;
    c["verdict"] = r.verdict;
    c["residual"] = r.residual;
    c["rel_residual"] = r.rel;
    c["abs_residual"] = r.abs;
    c["lhs"] = r.lhs;
    c["rhs"] = r.rhs;
    c["digits_used"] = r.digits;
    if (r.truncation > 0) {
      c["truncation"] = r.truncation;
      c["tail_bound"] = r.tail;
    }
    c["route"] = r.route;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_markdown() const {
  std::ostringstream md;
  md << "# lerchkit verification report\n\n";
  md << "- generator: " << version_stamp() << "\n";
  md << "- digits: " << config.digits << ", tolerance: " << config.tolerance
     << ", samples per identity: " << config.samples_per_identity << ", seed: " << config.seed
     << ", truncation: " << config.truncation << "\n";
  md << "- filter: `" << join(config.identity_filter, "`, `") << "`\n\n";
  md << "**Totals:** " << totals.identities << " identities, " << totals.checks << " checks: " << totals.holds
     << " holds, " << totals.fails << " fails, " << totals.discrepancies << " suspected-paper-discrepancy, "
     << totals.eval_errors << " eval-error.\n\n";

  std::vector<const IdentityReport*> disc, bad;
  for (const auto& ir : identities) {
    if (ir.discrepancies > 0) disc.push_back(&ir);
    if (ir.fails + ir.eval_errors > 0) bad.push_back(&ir);
  }
  if (!disc.empty()) {
    md << "## Suspected discrepancies\n\n";
    for (const auto* ir : disc) {
      md << "- **" << ir->identity->id << "** (" << ir->identity->title << "): " << ir->discrepancies << "/"
         << ir->run.results.size() << " samples. " << ir->run.discrepancy_note << "\n";
    }
    md << "\n";
  }
  if (!bad.empty()) {
    md << "## Failures and evaluation errors\n\n";
    for (const auto* ir : bad) {
      md << "- **" << ir->identity->id << "**: " << ir->fails << " fails, " << ir->eval_errors << " eval-error";
      for (const auto& r : ir->run.results) {
        if (r.verdict == ident::Verdict::Fails || r.verdict == ident::Verdict::EvalError) {
          md << ". First: `" << r.sample.describe() << "` " << md_cell(r.route_notes);
          break;
        }
      }
      if (!ir->run.discrepancy_note.empty()) md << ". " << ir->run.discrepancy_note;
      md << "\n";
    }
    md << "\n";
  }

  md << "## Sums and products\n\n";
  md << "| ID | Title | Tier | Anchor | Checks | Holds | Fails | Discrepancy | Eval error | Worst residual | Time (s) |\n";
  md << "|---|---|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& ir : identities) {
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << ir.run.seconds;
    md << "| " << ir.identity->id << " | " << md_cell(ir.identity->title) << " | "
       << ident::tier_name(ir.identity->tier) << " | `" << md_cell(ir.identity->anchor) << "` | "
       << ir.run.results.size() << " | " << ir.holds << " | " << ir.fails << " | " << ir.discrepancies << " | "
       << ir.eval_errors << " | " << worst(ir) << " | " << secs.str() << " |\n";
  }
  return md.str();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string VerificationReport::to_csv() const {
  std::ostringstream csv;
  csv << "identity,tier,sample,params,verdict,residual,rel_residual,abs_residual,lhs,rhs,digits_used,truncation,"
         "tail_bound,route\n";
  for (const auto& r : rows(*this)) {
    const std::vector<std::string> f{r.identity,
                                     r.tier,
                                     std::to_string(r.index),
                                     r.params,
                                     r.verdict,
                                     r.residual,
                                     r.rel,
                                     r.abs,
                                     r.lhs,
                                     r.rhs,
                                     std::to_string(r.digits),
                                     r.truncation > 0 ? std::to_string(r.truncation) : "",
                                     r.tail,
                                     r.route};
    for (size_t i = 0; i < f.size(); ++i) csv << (i ? "," : "") << csv_field(f[i]);
    csv << "\n";
  }
  return csv.str();
}

std::vector<std::string> write_report(const VerificationReport& report) {
  namespace fs = std::filesystem;
  const fs::path dir(report.config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::string> written;
  for (const auto& fmt : report.config.formats) {
    fs::path file;
    std::string body;
    if (fmt == "json") {
      file = dir / "report.json";
      body = report.to_json();
    } else if (fmt == "markdown") {
      file = dir / "report.md";
      body = report.to_markdown();
    } else {
      file = dir / "report.csv";
      body = report.to_csv();
    }
    std::ofstream out(file, std::ios::binary);
    out << body;
    out.close();
    if (!out) throw IoError("cannot write " + file.string());
    written.push_back(file.string());
  }
  return written;
}

}  // namespace lerchkit::cli
