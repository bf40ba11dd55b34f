#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = comlim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json parse_out(const RunResult& r) { return json::parse(r.out); }

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "comlim-cli-test";
  fs::create_directories(dir);
  return dir;
}

// The schema ships in-repo; reports must carry its version and the
// per-command required fields.
json load_schema() {
  std::ifstream f(std::string(COMLIM_SCHEMA_DIR) + "/report.schema.json");
  REQUIRE(f.good());
  return json::parse(f);
}

void check_against_schema(const json& doc, const std::string& requirement_key) {
  const json schema = load_schema();
  CHECK(doc["schema_version"] == schema["version"]);
  for (const auto& key : schema["required"]) {
    CHECK_MESSAGE(doc.contains(key.get<std::string>()), "missing ", key);
  }
  for (const auto& key : schema["command_requirements"][requirement_key]) {
    CHECK_MESSAGE(doc.contains(key.get<std::string>()), "missing ", key);
  }
}

}  // namespace

TEST_CASE("analyze reports the duopoly sets") {
  const RunResult r =
      run_cli({"analyze", "--family", "duopoly", "--r", "0.8", "--d", "0"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  check_against_schema(doc, "analyze");

  CHECK(std::abs(doc["equilibria"]["cournot"][0]["lo"].get<double>() - 5.0 / 11) <
        1e-6);
  CHECK(std::abs(doc["plausibility"]["simple"][0]["lo"].get<double>() - 5.0 / 11) <
        1e-6);
  CHECK(doc["rc"]["rc1"] == true);
  CHECK(doc["plausibility"]["p_plausible"].is_array());
}

TEST_CASE("analyze exit code flags regularity-gated omissions") {
  const RunResult r =
      run_cli({"analyze", "--family", "duopoly", "--r", "1.2", "--d", "0"});
  CHECK(r.code == 2);
  const json doc = parse_out(r);
  CHECK(doc["rc"]["rc1"] == false);
  CHECK(doc["plausibility"]["p_plausible"].is_null());

  const RunResult c = run_cli({"analyze", "--family", "coordination", "--a", "0"});
  CHECK(c.code == 2);
  const json cdoc = parse_out(c);
  REQUIRE(cdoc["plausibility"]["simple"].size() == 3);
  CHECK(std::abs(cdoc["plausibility"]["simple"][1]["lo"].get<double>() - 0.5) < 1e-6);
}

TEST_CASE("analyze output is byte-identical across runs") {
  const std::vector<std::string> args{"analyze", "--family", "duopoly",
                                      "--r", "0.8", "--d", "0"};
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("oracle evaluates an explicit CST literal") {
  const RunResult r = run_cli(
      {"oracle", "--family", "duopoly", "--r", "0.8", "--d", "0", "--cst",
       "(0.125,0.33333333333333331]|[0,0.125]u(0.33333333333333331,1.6666666666666667]"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  check_against_schema(doc, "oracle_cst");
  REQUIRE(doc["spe"]["outcomes"].size() == 2);
  CHECK(std::abs(doc["spe"]["outcomes"][0]["leader_action"].get<double>() -
                 1.0 / 3) < 1e-6);
  CHECK(std::abs(doc["spe"]["outcomes"][1]["leader_action"].get<double>() -
                 5.0 / 11) < 1e-6);
  REQUIRE(doc["spe_leader_preferred"]["outcomes"].size() == 1);
}

TEST_CASE("oracle whole-space literal returns the no-commitment outcomes") {
  const RunResult r = run_cli({"oracle", "--family", "duopoly", "--r", "1.2",
                               "--d", "0", "--cst", "[0,2.5]"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  REQUIRE(doc["spe"]["outcomes"].size() == 3);
  CHECK(doc["spe"]["outcomes"][0]["leader_action"].get<double>() ==
        doctest::Approx(0.0));
}

TEST_CASE("oracle campaign on a small grid is clean") {
  const RunResult r = run_cli({"oracle", "--family", "duopoly", "--r", "0.8",
                               "--d", "0", "--class", "simple", "--oracle-grid",
                               "101", "--grid-n", "801"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  check_against_schema(doc, "oracle_campaign");
  CHECK(doc["clean"] == true);
}

TEST_CASE("design command reports the closed-form cross-check") {
  const RunResult r = run_cli({"design", "--family", "duopoly", "--r", "0.8",
                               "--d", "0", "--objective", "cs", "--class", "all"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  check_against_schema(doc, "design");
  CHECK(doc["solution"]["closed_form_agrees"] == true);
  CHECK(std::abs(doc["solution"]["optimal_actions"][0]["lo"].get<double>() -
                 1.5996733830) < 1e-5);
  CHECK(doc["solution"]["witness_cst"].get<std::string>().find("{0} u (") !=
        std::string::npos);

  const RunResult leader =
      run_cli({"design", "--family", "duopoly", "--r", "0.8", "--d", "0",
               "--objective", "leader", "--class", "all"});
  const json ldoc = parse_out(leader);
  CHECK(std::abs(ldoc["solution"]["optimal_actions"][0]["lo"].get<double>() - 1.0) <
        1e-6);
  CHECK(ldoc["solution"]["witness_cst"].get<std::string>().find("stackelberg") !=
        std::string::npos);
}

TEST_CASE("refine-check emits the worse-refinement verdict") {
  const RunResult r = run_cli({"refine-check", "--family", "coordination", "--a",
                               "0.01", "--cst", "{0}|(0,1)|{1}"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  check_against_schema(doc, "refine-check");
  CHECK(doc["worse_refinement"]["exists"] == true);
  CHECK(std::abs(doc["worse_refinement"]["u_bar"].get<double>() - 0.49625) < 1e-5);
}

TEST_CASE("plot writes deterministic SVG and CSV") {
  const fs::path dir = temp_dir();
  const std::string prefix = (dir / "fig").string();
  const std::vector<std::string> args{"plot", "--family", "duopoly", "--r",
                                      "0.8", "--d", "0", "--out", prefix};
  const RunResult r1 = run_cli(args);
  REQUIRE(r1.code == 0);
  const json doc = parse_out(r1);
  REQUIRE(doc["files"].size() == 4);

  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::string first_svg = slurp(prefix + "_value.svg");
  const std::string first_csv = slurp(prefix + "_curves.csv");
  CHECK(first_svg.find("<svg") == 0);
  CHECK(first_csv.rfind("x,U,phi,gamma", 0) == 0);

  const RunResult r2 = run_cli(args);
  REQUIRE(r2.code == 0);
  CHECK(slurp(prefix + "_value.svg") == first_svg);
  CHECK(slurp(prefix + "_curves.csv") == first_csv);

  // The CSV parses as numbers row by row.
  std::istringstream csv(first_csv);
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream row(line);
    std::string cell;
    int cells = 0;
    while (std::getline(row, cell, ',')) {
      if (!cell.empty()) (void)std::stod(cell);
      ++cells;
    }
    CHECK(cells >= 3);
  }
  CHECK(rows == 512);
}

TEST_CASE("bad arguments exit with an error") {
  CHECK(run_cli({"analyze", "--family", "nosuch"}).code == 1);
  CHECK(run_cli({"design", "--family", "coordination", "--a", "0"}).code == 1);
  CHECK(run_cli({"oracle", "--family", "duopoly", "--cst", "[nonsense"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"refine-check", "--family", "coordination"}).code == 1);
}

TEST_CASE("tabulated games are oracle-only") {
  const fs::path dir = temp_dir();
  const fs::path table = dir / "payoffs.csv";
  {
    std::ofstream f(table);
    f.precision(17);
    f << "x";
    const int n = 21;
    for (int j = 0; j < n; ++j) f << ',' << 5.0 / 3 * j / (n - 1);
    f << '\n';
    for (int i = 0; i < n; ++i) {
      const double x = 5.0 / 3 * i / (n - 1);
      f << x;
      for (int j = 0; j < n; ++j) {
        const double y = 5.0 / 3 * j / (n - 1);
        f << ',' << (x - x * y - 0.6 * x * x);
      }
      f << '\n';
    }
  }
  CHECK(run_cli({"analyze", "--family", "tabulated", "--file", table.string()})
            .code == 1);
  const RunResult r =
      run_cli({"oracle", "--family", "tabulated", "--file", table.string(),
               "--cst", "[0,1.5)|[1.5,1.6666666666666667]", "--oracle-grid", "51"});
  REQUIRE(r.code == 0);
  const json doc = parse_out(r);
  REQUIRE(doc["spe"]["outcomes"].size() >= 1);
  CHECK(std::abs(doc["spe"]["outcomes"].back()["leader_action"].get<double>() - 1.5) <
        0.05);
}
