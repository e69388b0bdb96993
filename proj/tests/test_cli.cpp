#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmelab/analytic.hpp"
#include "pmelab/commands.hpp"
#include "pmelab/config.hpp"
#include "pmelab/emit.hpp"
#include "pmelab/field_io.hpp"

using namespace pmelab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pmelab_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const json& j, Command c = Command::Verify) {
  try {
    validate_config(parse_config(j), c);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

RunConfig repo_config(const std::string& name) {
  return parse_config(load_config_file(std::string(PMELAB_SOURCE_DIR) + "/configs/" + name));
}

}  // namespace

TEST_CASE("command names") {
  for (auto c : {Command::Simulate, Command::Verify, Command::Barenblatt, Command::CompareHeat, Command::Inequalities}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK(command_name(Command::CompareHeat) == "compare-heat");
  CHECK_THROWS_AS(parse_command("plot"), ConfigError);
}

TEST_CASE("config defaults and nested keys") {
  const auto c = parse_config(json::object());
  CHECK(c.m == 2.0);
  CHECK(c.points == 401);
  CHECK(c.snapshots.size() == 11);
  CHECK(c.snapshots.front() == 1.0);
  CHECK(c.snapshots.back() == 2.0);

  const auto nested = parse_config(json{{"grid", {{"points", 201}}}, {"initial", {{"params", {{"C", 0.5}}}}}});
  CHECK(nested.points == 201);
  CHECK(nested.initial_params.at("C") == 0.5);

  const auto listed = parse_config(json{{"time.snapshots", {1.0, 2.0, 4.0}}, {"checks", "mass, ab_time"}});
  CHECK(listed.t0 == 1.0);
  CHECK(listed.t1 == 4.0);
  CHECK(listed.checks == std::vector<std::string>{"mass", "ab_time"});

  const auto logs = parse_config(json{{"time.t0", 1.0}, {"time.t1", 100.0}, {"time.snapshots", 3}, {"time.spacing", "log"}});
  CHECK(logs.snapshots[1] == doctest::Approx(10.0));
}

TEST_CASE("config errors name the offending field") {
  CHECK(config_error(json{{"grid.points", 400}}) ==
        "grid.points: must be odd so that x = 0 is a grid point, got 400");
  CHECK_THROWS_WITH_AS(parse_config(json{{"grid.pionts", 401}}), doctest::Contains("grid.pionts"), ConfigError);
  CHECK(config_error(json{{"checks", {"nonsense"}}}).find("checks") == 0);
  CHECK(config_error(json{{"m", 0.5}}).find("m:") == 0);
  CHECK(config_error(json{{"n", 3}}).find("n:") == 0);
  CHECK(config_error(json{{"time.snapshots", {2.0, 1.0}}}).find("time") == 0);
  CHECK(config_error(json{{"checks", {"continuation"}}, {"eta_sequence", {0.1, 0.05}}}).find("eta_sequence") == 0);
  CHECK(config_error(json{{"checks", {"tangency"}}, {"beta", 1.0}}).find("beta") == 0);
  CHECK(config_error(json{{"trajectory.source", "analytic"}, {"initial.kind", "gaussian"}}) != "");
  CHECK(config_error(json::object()) == "checks: verify needs at least one check");
  CHECK(config_error(json::object(), Command::Simulate) == "");
  CHECK(config_error(json::object(), Command::CompareHeat).find("initial.kind") == 0);
  CHECK(config_error(json{{"initial.kind", "gaussian"}}, Command::CompareHeat) == "");
}

TEST_CASE("number lists") {
  CHECK(parse_number_list("1,2,4", "t") == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(parse_number_list(" 0.5 ", "t") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_number_list("1,,2", "t"), ConfigError);
  CHECK_THROWS_AS(parse_number_list("a", "t"), ConfigError);
}

TEST_CASE("problem and grid from config") {
  auto c = parse_config(json{{"mass", 1.0}, {"eta_sequence", {0.1, 0.05}}});
  const auto p = make_problem(c);
  CHECK(p.eta == 0.05);
  const auto& b = std::get<BarenblattInitial>(p.initial);
  CHECK(b.C == doctest::Approx(barenblatt_constant_for_mass(2.0, 1, 1.0)));
  const Grid g = make_grid(c, 1);
  CHECK(g.points() == 801);
}

TEST_CASE("emitted reports are sorted and byte-stable") {
  std::vector<CheckReport> reports;
  for (double m : {1.5, 1.1, 1.25}) reports.push_back(make_report("l2_heat", BoundKind::Upper, m - 1.0, 1.0, 0.0, {{"m", m}}));
  reports.push_back(make_report("decay", BoundKind::Upper, 0.1, 1.0, 0.0));
  const auto dir = scratch("emit");
  const auto paths = emit_report(reports, dir);
  CHECK(paths.size() == 5);
  const std::string first = slurp(dir / "summary.json");
  const json summary = json::parse(first);
  REQUIRE(summary.size() == 4);
  CHECK(summary[0]["name"] == "decay");
  CHECK(summary[1]["params"]["m"] == 1.1);
  CHECK(summary[2]["params"]["m"] == 1.25);
  CHECK(summary[3]["params"]["m"] == 1.5);
  for (const auto& rec : summary) {
    CHECK(rec.size() == 7);
    for (const char* key : {"name", "params", "statistic", "bound", "margin", "tolerance", "pass"}) CHECK(rec.contains(key));
  }
  std::reverse(reports.begin(), reports.end());
  emit_report(reports, dir);
  CHECK(slurp(dir / "summary.json") == first);

  const std::string table = report_table(reports.front());
  CHECK(table.rfind("t statistic bound margin\n", 0) == 0);

  CHECK_THROWS(emit_report({}, scratch("empty")));
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "file";
  CHECK_THROWS(emit_report(reports, blocker / "sub"));
  fs::remove_all(blocker);
  fs::remove_all(dir);
}

TEST_CASE("exit status follows expectations") {
  auto ok = make_report("a", BoundKind::Upper, 0.0, 1.0, 0.0);
  auto bad = make_report("b", BoundKind::Upper, 2.0, 1.0, 0.0);
  CHECK(exit_status({ok}) == kExitOk);
  CHECK(exit_status({ok, bad}) == kExitCheckFailed);
  bad.negative_control = true;
  CHECK(exit_status({ok, bad}) == kExitOk);
  ok.negative_control = true;
  CHECK(exit_status({ok, bad}) == kExitCheckFailed);
}

TEST_CASE("field tables round-trip exactly") {
  for (int n : {1, 2}) {
    const Grid g(n, 3.0, n == 1 ? 61 : 21);
    Field f(g, 1.25);
    for (std::size_t k = 0; k < g.size(); ++k) f.values[k] = std::exp(-0.37 * g.radius(k)) / 3.0;
    std::stringstream ss;
    write_field_table(ss, f);
    const Field back = read_field_table(ss);
    CHECK(back.grid == g);
    CHECK(back.t == 1.25);
    CHECK(back.values == f.values);
  }
  std::stringstream junk("not a table\n");
  CHECK_THROWS(read_field_table(junk));
}

TEST_CASE("barenblatt command table") {
  auto c = parse_config(json{{"m", 2}, {"n", 1}, {"mass", 1.0}, {"time.snapshots", {1.0, 2.0, 4.0}}});
  c.output_dir = scratch("barenblatt").string();
  std::ostringstream log;
  REQUIRE(run_command(Command::Barenblatt, c, log) == kExitOk);
  std::ifstream in(fs::path(c.output_dir) / "barenblatt.txt");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t radius chi ratio center");
  const double expected_radius[] = {2.0801, 2.6207, 3.3019};
  for (int i = 0; i < 3; ++i) {
    double t, r, chi, ratio, center;
    in >> t >> r >> chi >> ratio >> center;
    CHECK(r == doctest::Approx(expected_radius[i]).epsilon(1e-4));
    CHECK(chi == doctest::Approx(std::cbrt(t / 2.0)));
    CHECK(ratio == doctest::Approx(2.6207).epsilon(1e-4));
  }
  fs::remove_all(c.output_dir);
}

TEST_CASE("verify: regression config passes, mislabelled config does not") {
  auto good = repo_config("barenblatt_regression.json");
  good.output_dir = scratch("verify_good").string();
  std::ostringstream log;
  CHECK(run_command(Command::Verify, good, log) == kExitOk);
  CHECK(fs::exists(fs::path(good.output_dir) / "summary.json"));

  auto analytic = repo_config("barenblatt_analytic.json");
  analytic.output_dir = scratch("verify_analytic").string();
  CHECK(run_command(Command::Verify, analytic, log) == kExitOk);

  auto mislabelled = repo_config("heat_mislabelled.json");
  mislabelled.output_dir = scratch("verify_bad").string();
  CHECK(run_command(Command::Verify, mislabelled, log) == kExitCheckFailed);
  for (const auto& d : {good.output_dir, analytic.output_dir, mislabelled.output_dir}) fs::remove_all(d);
}

TEST_CASE("simulate writes snapshots and diagnostics") {
  auto c = parse_config(json{{"grid.points", 101}, {"time.snapshots", 3}, {"beta", 3.5}});
  c.output_dir = scratch("simulate").string();
  std::ostringstream log;
  REQUIRE(run_command(Command::Simulate, c, log) == kExitOk);
  const fs::path out(c.output_dir);
  for (const char* f : {"snapshot_000.txt", "snapshot_002.txt", "mask_001.txt", "surface_000.txt", "diagnostics.json"}) {
    CHECK(fs::exists(out / f));
  }
  const Field last = read_field_file(out / "snapshot_002.txt");
  CHECK(last.t == 2.0);
  fs::remove_all(out);
}
