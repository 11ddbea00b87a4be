#ifdef MIXSN_HAVE_CLI

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = mixsn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("cli an") {
  const auto r = run({"an", "--d", "2", "--s", "1,1", "--q", "1,1", "--n", "10"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "an");
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["n"] == 10);
  CHECK(j["rows"][0]["a_n"] == 0.25);
  CHECK(j["warnings"].empty());

  const auto all = json_of(run({"an", "--d", "2", "--s", "1", "--n", "5", "--all"}));
  CHECK(all["rows"].size() == 5);
  CHECK(all["rows"][4]["a_n"] == 0.5);
}

TEST_CASE("cli accepts inf and echoes it as a string") {
  const auto j = json_of(run({"an", "--d", "2", "--s", "1", "--q", "inf", "--n", "9"}));
  CHECK(j["params"]["q"][0] == "inf");
  CHECK(j["rows"][0]["a_n"] == 1.0);
}

TEST_CASE("cli index set") {
  const auto j = json_of(run({"an", "--d", "2", "--s", "1", "--n", "6", "--index-set"}));
  CHECK(j["rows"].size() == 5);
  CHECK(j["rows"][0]["k"] == nlohmann::json::array({0, 0}));
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::string> args = {"bound", "--d", "5", "--s", "1.5", "--theorem", "all", "--n", "77",
                                         "--beta", "9.59824", "--alpha", "2"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("cli csv") {
  const auto r = run({"table", "--id", "cd", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "d,computed,reference_value,abs_error");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 24);
  CHECK(r.out.find("\n3,6.25,6.25,") != std::string::npos);
}

TEST_CASE("cli bound warnings and energy default target") {
  const auto r = run({"bound", "--theorem", "ENERGY_MAIN1", "--d", "4", "--s", "2", "--n", "4"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["params"]["target"] == "h1");
  CHECK(j["rows"][0]["applicable"] == false);
  CHECK(j["warnings"].size() == 1);
}

TEST_CASE("cli count with upper bound") {
  const auto j = json_of(run({"count", "--d", "2", "--s", "1", "--r", "4", "--upper", "--alpha", "2"}));
  CHECK(j["rows"][0]["count"] == 17);
  CHECK(j["rows"][0]["upper"].get<double>() > 17);
  CHECK(run({"count", "--d", "2", "--s", "1", "--r", "4", "--upper"}).code == mixsn::cli::kExitUsage);
}

TEST_CASE("cli asymptotic and tract") {
  const auto a = json_of(run({"asymptotic", "--d", "2", "--s", "1"}));
  CHECK(a["rows"][0]["constant"].get<double>() == doctest::Approx(4));
  const auto t = json_of(run({"tract", "--s1", "1", "--beta", "2", "--tau", "1", "--dmax", "100"}));
  CHECK(t["rows"][0]["strongly_tractable"] == true);
}

TEST_CASE("cli verify exit codes") {
  CHECK(run({"verify", "sandwich", "--d", "3", "--s", "1", "--n-max", "100", "--theorems", "SMALL,SMALLBBB"}).code ==
        mixsn::cli::kExitOk);
  const auto bad = run({"verify", "sandwich", "--d", "3", "--s", "1", "--n-max", "100", "--theorems", "SMALL",
                        "--upper-scale", "0.5"});
  CHECK(bad.code == mixsn::cli::kExitVerification);
  CHECK_FALSE(json_of(bad)["warnings"].empty());
  CHECK(run({"verify", "oracle", "--d", "3", "--s", "1,2,2", "--q", "2", "--n", "500"}).code == mixsn::cli::kExitOk);
  const auto ratio = json_of(run({"verify", "ratio", "--d", "2", "--s", "1", "--q", "inf", "--radii", "100,1000"}));
  CHECK(ratio["rows"].size() == 2);
  const auto tensor = json_of(run({"verify", "tensor", "--a", "power:1", "--b", "geometric:0.5", "--n-max", "1000"}));
  CHECK(tensor["rows"].size() == 3);
}

TEST_CASE("cli errors") {
  const auto usage = run({"an", "--d", "2", "--n", "3"});
  CHECK(usage.code == mixsn::cli::kExitUsage);
  CHECK_FALSE(usage.err.empty());
  CHECK(run({"an", "--d", "2", "--s", "1,2,3", "--n", "3"}).code == mixsn::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == mixsn::cli::kExitUsage);
  CHECK(run({"table", "--id", "xyz"}).code == mixsn::cli::kExitUsage);

  const auto comp = run({"an", "--d", "6", "--s", "1", "--n", "1000000", "--node-cap", "20"});
  CHECK(comp.code == mixsn::cli::kExitComputation);
  CHECK(comp.err.find("BudgetExceeded") != std::string::npos);
  CHECK(run({"bound", "--d", "3", "--s", "1", "--theorem", "NOPE", "--n", "5"}).code == mixsn::cli::kExitComputation);
  CHECK(run({"an", "--d", "2", "--s", "1", "--q", "2", "--target", "h1", "--n", "3"}).code ==
        mixsn::cli::kExitComputation);
}

TEST_CASE("cli help") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("cli --out writes a file") {
  const std::string path = "mixsn_cli_test_out.json";
  const auto r = run({"table", "--id", "delta-d", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["rows"].size() == 12);
  std::remove(path.c_str());
}

#endif
