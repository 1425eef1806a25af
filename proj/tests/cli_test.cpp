#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "lerchkit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lerchkit;
using namespace lerchkit::cli;
namespace fs = std::filesystem;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("lerchkit_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("list") {
  auto thm = call({"list", "THM-*"});
  CHECK(thm.code == 0);
  CHECK(count_lines(thm.out) == 1 + 3);
  auto all = call({"list"});
  CHECK(count_lines(all.out) - 1 >= 38);
  auto none = call({"list", "ZZZ"});
  CHECK(none.code == 0);
  CHECK(count_lines(none.out) == 1);
  // stable ordering
  CHECK(call({"list"}).out == all.out);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.digits = 30;
  cfg.tolerance = "1e-50";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.tolerance = "1e-20";
  CHECK_NOTHROW(validate(cfg));
  cfg.samples_per_identity = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = RunConfig{};
  cfg.formats = {"xml"};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = RunConfig{};
  cfg.tolerance = "abc";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("config file") {
  RunConfig cfg;
  apply_config_text("# comment\ndigits = 60\ntol=1e-45\nsamples=3 # trailing\nonly=DEG-*, GK-SS\nformat=json\n", cfg);
  CHECK(cfg.digits == 60);
  CHECK(cfg.tolerance == "1e-45");
  CHECK(cfg.samples_per_identity == 3);
  CHECK(cfg.identity_filter == std::vector<std::string>{"DEG-*", "GK-SS"});
  CHECK(cfg.formats == std::vector<std::string>{"json"});
  CHECK_THROWS_AS(apply_config_text("colour=blue\n", cfg), ConfigError);
  CHECK_THROWS_AS(apply_config_text("digits\n", cfg), ConfigError);
  CHECK_THROWS_AS(apply_config_text("digits=many\n", cfg), ConfigError);

  auto dir = scratch("cfg");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "only=GK-SS\nsamples=2\nformat=json\nout=" << (dir / "from_file").string() << "\n";
  // flags override the file
  auto r = call({"check", "--config", (dir / "run.cfg").string(), "--out", (dir / "from_flag").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "from_flag" / "report.json"));
  CHECK_FALSE(fs::exists(dir / "from_file"));
  CHECK(call({"check", "--config", (dir / "missing.cfg").string()}).code == 3);
}

TEST_CASE("output directory from the environment") {
  auto dir = scratch("env");
  setenv("LERCHKIT_OUT_DIR", dir.string().c_str(), 1);
  auto r = call({"check", "--only", "AP-SS", "--format", "csv"});
  unsetenv("LERCHKIT_OUT_DIR");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "report.csv"));
}

TEST_CASE("check usage errors") {
  CHECK(call({"check", "--only", "THM-SS", "--digits", "30", "--tol", "1e-50"}).code == 2);
  CHECK(call({"check", "--samples", "0"}).code == 2);
  CHECK(call({"check", "--bogus"}).code == 2);
  CHECK(call({"check", "--format", "pdf"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("I/O failure") {
  auto dir = scratch("io");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  auto r = call({"check", "--only", "AP-SS", "--out", (dir / "file" / "sub").string()});
  CHECK(r.code == 3);
}

TEST_CASE("degenerate identities, 100 samples each") {
  RunConfig cfg;
  cfg.identity_filter = {"DEG-*"};
  cfg.samples_per_identity = 100;
  auto rep = run_suite(cfg);
  CHECK(rep.totals.identities == 3);
  CHECK(rep.totals.checks == 300);
  CHECK(rep.totals.holds == 300);
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("report contents") {
  RunConfig cfg;
  cfg.samples_per_identity = 3;
  auto rep = run_suite(cfg);
  const auto& reg = ident::registry();

  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["digits"] == 50);
  CHECK(j["config"]["tolerance"] == "1e-40");
  REQUIRE(j["identities"].size() == reg.size());
  std::set<std::string> seen;
  int holds = 0, fails = 0, disc = 0, errs = 0, checks = 0;
  for (const auto& e : j["identities"]) {
    CHECK(seen.insert(e["id"].get<std::string>()).second);
    CHECK_FALSE(e["anchor"].get<std::string>().empty());
    holds += e["holds"].get<int>();
    fails += e["fails"].get<int>();
    disc += e["suspected_paper_discrepancy"].get<int>();
    errs += e["eval_error"].get<int>();
    checks += e["checks"].get<int>();
  }
  CHECK(seen.size() == reg.size());
  CHECK(j["totals"]["checks"] == checks);
  CHECK(j["totals"]["holds"] == holds);
  CHECK(j["totals"]["fails"] == fails);
  CHECK(j["totals"]["suspected_paper_discrepancy"] == disc);
  CHECK(j["totals"]["eval_error"] == errs);
  CHECK(holds + fails + disc + errs == checks);
  CHECK(j["checks"].size() == static_cast<size_t>(checks));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("identity"));
    CHECK(c.contains("verdict"));
    CHECK(c.contains("residual"));
  }

  const std::string md = rep.to_markdown();
  for (const auto& id : reg) {
    const std::string row = "| " + id.id + " | ";
    size_t first = md.find(row);
    CHECK_MESSAGE(first != std::string::npos, id.id);
    CHECK_MESSAGE(md.find(row, first + 1) == std::string::npos, id.id);
  }
  // three failing samples are below the systematic threshold
  CHECK(md.find("## Suspected discrepancies") == std::string::npos);
  CHECK(md.find("**CC-COSCOS**") < md.find("| ID |"));
  CHECK(rep.exit_code() == 1);

  const std::string csv = rep.to_csv();
  CHECK(count_lines(csv) == checks + 1);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("byte-identical JSON for equal config and seed") {
  auto a = scratch("det_a"), b = scratch("det_b");
  std::vector<std::string> common{"check", "--only", "THM-*,GP-SS*,CC-COSCOS", "--samples", "12", "--seed", "17"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  CHECK(call(args_a).code == 0);
  CHECK(call(args_b).code == 0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "report.csv") == slurp(b / "report.csv"));
  const std::string md = slurp(a / "report.md");
  CHECK(md.find("## Suspected discrepancies") < md.find("| ID |"));
  auto j = nlohmann::json::parse(slurp(a / "report.json"));
  for (const auto& e : j["identities"])
    if (e["id"] == "CC-COSCOS") {
      CHECK(e["suspected_paper_discrepancy"] == 12);
      CHECK(e["alternate"]["holds"] == 12);
    }
}

TEST_CASE("eval") {
  auto cat = call({"eval", "const", "catalan", "--digits", "30"});
  CHECK(cat.code == 0);
  CHECK(cat.out.rfind("0.915965594177219015054603514932\n", 0) == 0);
  auto phi = call({"eval", "phi", "0,0", "2,0", "5,0"});
  CHECK(phi.code == 0);
  CHECK(phi.out.rfind("0.04\n", 0) == 0);
  CHECK(phi.out.find("route: ") != std::string::npos);
  auto pole = call({"eval", "zeta", "1,0", "1,0"});
  CHECK(pole.code == 4);
  CHECK(pole.err.find("s = 1") != std::string::npos);
  CHECK(call({"eval", "gamma", "-2"}).code == 4);
  CHECK(call({"eval", "phi", "1", "2"}).code == 2);
  CHECK(call({"eval", "gamma", "x,y"}).code == 2);
  CHECK(call({"eval", "const", "tau"}).code == 2);
  auto z2 = call({"eval", "zeta", "2", "--digits", "20"});
  CHECK(z2.out.rfind("1.644934066848226436", 0) == 0);
}

TEST_CASE("figure data") {
  auto cs = call({"figure", "cos-sec-recip", "--range", "0.2,3", "--points", "200"});
  REQUIRE(cs.code == 0);
  std::istringstream in(cs.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,re,im,abs");
  int rows = 0, gaps = 0;
  std::vector<double> gap_x;
  while (std::getline(in, line)) {
    ++rows;
    if (line.size() > 3 && line.substr(line.size() - 3) == ",,,") {
      ++gaps;
      gap_x.push_back(std::stod(line));
    }
  }
  CHECK(rows == 200);
  // sec(1/m) has poles at m = 2/pi and 2/(3 pi) inside [0.2, 3]
  REQUIRE(gaps == 2);
  CHECK(std::abs(gap_x[0] - 2 / (3 * M_PI)) < 0.015);
  CHECK(std::abs(gap_x[1] - 2 / M_PI) < 0.015);

  auto tc = call({"figure", "tan-cot-power", "--n", "4", "--range", "0,1"});
  REQUIRE(tc.code == 0);
  std::istringstream tin(tc.out);
  std::getline(tin, line);
  int vals = 0, near_one = 0;
  while (std::getline(tin, line)) {
    auto last = line.rfind(',');
    if (last + 1 == line.size()) continue;
    ++vals;
    near_one += std::abs(std::stod(line.substr(last + 1)) - 1) < 0.1;
  }
  CHECK(vals > 150);
  CHECK(near_one == vals);

  auto grid = call({"figure", "poly-power-complex", "--points", "11"});
  CHECK(grid.code == 0);
  CHECK(count_lines(grid.out) == 1 + 121);

  for (const auto& f : figures()) CHECK_MESSAGE(call({"figure", f.id, "--points", "5"}).code == 0, f.id);
  CHECK(call({"figure", "nope"}).code == 2);
  CHECK(call({"figure", "cos-sec-recip", "--range", "3,1"}).code == 2);
  CHECK(call({"figure", "cos-sec-recip", "--range", "abc"}).code == 2);
  CHECK(call({"figure", "--list"}).code == 0);
}
