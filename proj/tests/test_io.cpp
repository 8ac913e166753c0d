#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dmojc/commands.hpp"
#include "dmojc/io.hpp"
#include "dmojc/validate.hpp"

using namespace dmojc;
using io::format_g17;
using io::RunConfig;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string name) : path(std::move(name)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("g17 formatting round-trips doubles") {
  for (double v : {0.0, 1.0, -1.0, 1.0 / 3.0, 0.1, 3.0e-15, 1.2345678901234567e100,
                   -9.87654321e-300, 0.3247405326403046}) {
    const std::string text = format_g17(v);
    CHECK(std::stod(text) == v);
  }
}

TEST_CASE("json numbers round-trip exactly") {
  io::json j;
  j["x"] = 0.1 + 0.2;
  j["y"] = 1.0 / 3.0;
  const std::string text = j.dump();
  const io::json back = io::json::parse(text);
  CHECK(back["x"].get<double>() == 0.1 + 0.2);
  CHECK(back["y"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("csv layout") {
  const std::string text = io::to_csv({"a", "b"}, {{"1", "2"}, {"3", ""}});
  CHECK(text == "a,b\n1,2\n3,\n");
}

TEST_CASE("run config validation and json round trip") {
  RunConfig config;
  CHECK_NOTHROW(config.validate());

  RunConfig bad = config;
  bad.t_steps = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.format = "yaml";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.dim = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  RunConfig other;
  other.apply_json(io::json::parse(
      R"({"gamma": 1.5, "alpha": 0.25, "steps": 101, "format": "json"})"));
  CHECK(other.gamma == 1.5);
  CHECK(other.alpha == 0.25);
  CHECK(other.t_steps == 101);
  CHECK(other.format == "json");
  CHECK(other.eta == 1.0); // untouched default

  CHECK_THROWS_AS(other.apply_json(io::json::parse(R"({"bogus": 1})")),
                  std::invalid_argument);
}

TEST_CASE("spectrum command self-check column is tiny") {
  TempFile file("io_spectrum.csv");
  RunConfig config;
  config.dim = 3;
  config.branch = "infinite";
  config.mc2 = 0.0;
  config.max_n = 3;
  config.output = file.path;
  REQUIRE(commands::cmd_spectrum(config) == 0);

  std::ifstream in(file.path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "label,class,mu,analytic_minus,analytic_plus,numeric_minus,"
        "numeric_plus,residual");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    CHECK(std::stod(line.substr(last_comma + 1)) < 1e-12);
    CHECK(line.find("infinite (j-independent)") != std::string::npos);
  }
  CHECK(rows == 4);
}

TEST_CASE("spectrum rows follow sqrt(2n) on the infinite family") {
  TempFile file("io_spectrum2.csv");
  RunConfig config;
  config.dim = 3;
  config.branch = "infinite";
  config.eta = 1.0;
  config.mc2 = 0.0;
  config.max_n = 3;
  config.output = file.path;
  REQUIRE(commands::cmd_spectrum(config) == 0);

  std::ifstream in(file.path);
  std::string line;
  std::getline(in, line); // header
  int n = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    CHECK(std::stod(cells[4]) ==
          doctest::Approx(std::sqrt(2.0 * n)).epsilon(1e-14));
    ++n;
  }
}

TEST_CASE("evolve command output") {
  SUBCASE("analytic columns and residuals on the resonant normalization") {
    TempFile file("io_evolve.csv");
    RunConfig config;
    config.gamma = 1.0;
    config.mc2 = 1.0;
    config.t_steps = 101;
    config.output = file.path;
    REQUIRE(commands::cmd_evolve(config) == 0);

    std::ifstream in(file.path);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("resid_concurrence") != std::string::npos);

    std::string first_row;
    std::getline(in, first_row);
    std::stringstream ss(first_row);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    CHECK(std::stod(cells[0]) == 0.0);  // t
    CHECK(std::stod(cells[4]) == 1.0);  // purity_field at t = 0
    CHECK(std::stod(cells[6]) == 0.0);  // concurrence at alpha = 0

    std::string line;
    double worst = 0.0;
    while (std::getline(in, line)) {
      const auto last = line.rfind(',');
      worst = std::max(worst, std::stod(line.substr(last + 1)));
    }
    CHECK(worst < 1e-9);
  }

  SUBCASE("off-normalization omits the closed-form columns") {
    TempFile file("io_evolve_warn.json");
    RunConfig config;
    config.gamma = 1.0;
    config.mc2 = 0.3; // detunings differ: no closed-form columns
    config.t_steps = 11;
    config.format = "json";
    config.output = file.path;
    REQUIRE(commands::cmd_evolve(config) == 0);
    const io::json envelope = io::json::parse(slurp(file.path));
    CHECK(envelope.contains("warning"));
    CHECK_FALSE(envelope["rows"][0].contains("c1_sq_formula"));
  }
}

TEST_CASE("cpplane command output") {
  TempFile file("io_cpplane.csv");
  RunConfig config;
  config.gamma = 0.0;
  config.mc2 = 0.0;
  config.alpha = 0.0;
  config.t_steps = 51;
  config.output = file.path;
  REQUIRE(commands::cmd_cpplane(config) == 0);

  std::ifstream in(file.path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "kind,t,purity,concurrence,c_plus,c_minus");
  int trajectory_rows = 0, frontier_rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("trajectory", 0) == 0) ++trajectory_rows;
    if (line.rfind("frontier", 0) == 0) {
      ++frontier_rows;
      std::stringstream ss(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      CHECK(std::stod(cells[4]) + std::stod(cells[5]) == 1.0);
    }
  }
  CHECK(trajectory_rows == 51);
  CHECK(frontier_rows == 512);
}

TEST_CASE("map command writes the identification table") {
  TempFile file("io_map.csv");
  RunConfig config;
  config.eta = 1.0;
  config.mc2 = 0.5;
  config.output = file.path;
  REQUIRE(commands::cmd_map(config) == 0);
  const std::string text = slurp(file.path);
  CHECK(text.find("1+1") != std::string::npos);
  CHECK(text.find("inert") != std::string::npos);
  CHECK(text.find("false") != std::string::npos); // finite family row
}

TEST_CASE("deterministic outputs") {
  SUBCASE("identical configs produce byte-identical files") {
    TempFile a("io_det_a.csv"), b("io_det_b.csv");
    RunConfig config;
    config.gamma = 1.0;
    config.mc2 = 1.0;
    config.t_steps = 64;
    config.output = a.path;
    REQUIRE(commands::cmd_evolve(config) == 0);
    config.output = b.path;
    REQUIRE(commands::cmd_evolve(config) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
  }

  SUBCASE("svg output is stable and well-formed") {
    const std::string svg = io::svg_line_plot(
        "demo", "x", "y", {{"s", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg == io::svg_line_plot(
                     "demo", "x", "y",
                     {{"s", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}}}));
  }
}

TEST_CASE("validation report shape follows the documented schema") {
  validate::ValidationConfig config;
  config.nmax = 8;
  config.t_steps = 151;
  config.random_trials = 25;
  const validate::ValidationReport report = validate::run_validation(config);
  const io::json j = validate::report_to_json(report, config);

  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("rows"));
  REQUIRE(j.contains("checks"));
  REQUIRE(j.contains("summary"));
  CHECK(j["rows"].is_array());
  CHECK(j["checks"].is_array());
  CHECK(j["checks"].size() == report.checks.size());
  for (const auto& check : j["checks"]) {
    CHECK(check.contains("name"));
    CHECK(check["pass"].is_boolean());
    CHECK(check["max_error"].is_number());
    CHECK(check["tolerance"].is_number());
  }
  CHECK(j["summary"]["pass"].is_boolean());
  CHECK(report.find("extended-block-vs-oracle") != nullptr);
  CHECK(report.find("no-such-check") == nullptr);
}

TEST_CASE("usage errors return exit code 2") {
  RunConfig config;
  config.dim = 7;
  CHECK(commands::cmd_spectrum(config) == commands::kExitUsage);
  RunConfig bad_steps;
  bad_steps.t_steps = 1;
  CHECK(commands::cmd_evolve(bad_steps) == commands::kExitUsage);
}
