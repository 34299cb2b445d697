#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  args.insert(args.begin(), "mcv");
  const int code = mcv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("compute on CSV prints one report per metric") {
  const std::string path = write_temp("mcv_cli_compute.csv", "u,v\n3.5,3\n2.5,2\n3,4.5\n3,2.5\n4,3.2\n2,2.8\n");
  const Outcome r = run({"compute", "--input", path, "--metrics", "gamma_vn,g2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["metric"] == "gamma_vn");
  CHECK(j[1]["metric"] == "g2");
  CHECK(j[1]["n"] == 2);
  CHECK(j[1]["convention"] == "population");
  CHECK(std::abs(j[1]["value"].get<double>() - std::sqrt(2.0) * j[0]["value"].get<double>()) < 1e-14);
  std::filesystem::remove(path);
}

TEST_CASE("compute on a moment summary") {
  const std::string path = write_temp("mcv_cli_summary.json", R"({"mean": [3, 3], "cov": [[1, 1], [1, 2]]})");
  const Outcome r = run({"compute", "--input", path, "--metrics", "gamma_r,gamma_vn"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j[0]["value"].get<double>() - std::sqrt(1.0 / 18.0)) < 1e-15);
  CHECK(std::abs(j[1]["value"].get<double>() - 1.0 / 3.0) < 1e-15);
  CHECK(j[0]["convention"] == "analytic");

  const Outcome data_only = run({"compute", "--input", path, "--metrics", "t_coeff"});
  CHECK(data_only.code == 1);
  CHECK(data_only.err.find("InvalidArgument") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("validation errors name the failing precondition") {
  const std::string path = write_temp("mcv_cli_zero.json", R"({"mean": [0, 0], "cov": [[1, 0], [0, 1]]})");
  const Outcome r = run({"compute", "--input", path, "--metrics", "gamma_vv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("ZeroMean") != std::string::npos);
  std::filesystem::remove(path);

  const std::string bad = write_temp("mcv_cli_npd.json", R"({"mean": [1, 1], "cov": [[1, 2], [2, 1]]})");
  const Outcome npd = run({"compute", "--input", bad});
  CHECK(npd.code == 1);
  CHECK(npd.err.find("NotPositiveDefinite") != std::string::npos);
  std::filesystem::remove(bad);

  CHECK(run({"compute", "--input", "/nonexistent.csv"}).code == 1);
  CHECK(run({"compute"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("help exits cleanly") {
  const Outcome r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
  CHECK(run({"simulate", "--help"}).code == 0);
}

TEST_CASE("simulate shape contract") {
  const Outcome r = run({"simulate", "--experiment", "gaussian_constant_mean", "--seed", "42"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x_value,metric_id,value\n", 0) == 0);
  CHECK(count_lines(r.out) == 46);

  CHECK(run({"simulate", "--experiment", "gaussian_constant_mean"}).code == 1);
  CHECK(run({"simulate", "--experiment", "nope", "--seed", "1"}).code == 1);

  const Outcome j = run({"simulate", "--experiment", "galton", "--seed", "3", "--points", "5,10", "--format", "json"});
  REQUIRE(j.code == 0);
  const json parsed = json::parse(j.out);
  CHECK(parsed["seed"] == 3);
}

TEST_CASE("whiten prints a whitening matrix") {
  const std::string path = write_temp("mcv_cli_whiten.json", R"({"mean": [1, 1], "cov": [[1, 1], [1, 2]]})");
  const Outcome r = run({"whiten", "--input", path, "--kind", "cholesky", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["kind"] == "cholesky");
  CHECK(std::abs(j["matrix"][1][0].get<double>() + 1.0) < 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("influence prints formula and finite difference") {
  const std::string path = write_temp("mcv_cli_infl.csv", "a,b\n1,2\n2,1\n3,3\n2,4\n4,2\n");
  const Outcome r = run({"influence", "--input", path, "--point", "2.4,2.4"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.contains("formula"));
  CHECK(j["finite_difference"].contains("at_eps"));
  CHECK(j["finite_difference"].contains("at_half_eps"));
  CHECK(run({"influence", "--input", path, "--point", "1"}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("verify honors MCV_DEFAULT_SEED") {
  ::setenv("MCV_DEFAULT_SEED", "1234", 1);
  const Outcome r = run({"verify", "--all", "--format", "json"});
  ::unsetenv("MCV_DEFAULT_SEED");
  const json j = json::parse(r.out);
  CHECK(j["seed"] == 1234);
  CHECK(j["golden_failures"] == 0);
  CHECK(j["matrix"].size() == 48);
}
