#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "toricgw/error.hpp"

using namespace toricgw;
using nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "toricgw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string fan(const std::string& name) { return oracle::fan_path(name); }

json error_of(const Outcome& o) { return json::parse(o.err).at("error"); }

}  // namespace

TEST(Config, ChecksInvariants) {
  cli::RunConfig c;
  c.command = "invariants";
  c.fan_path = fan("kp2");
  EXPECT_THROW(cli::check_config(c), Error);  // no disk
  c.disk = "ray:0";
  EXPECT_NO_THROW(cli::check_config(c));
  c.order = 0;
  EXPECT_THROW(cli::check_config(c), Error);
  c.order = 3;
  c.disk = "edge:1";
  EXPECT_THROW(cli::check_config(c), Error);
  c.disk = "ray:0";
  c.command = "oracle";
  EXPECT_THROW(cli::check_config(c), Error);  // no bar
  c.command = "frobnicate";
  EXPECT_THROW(cli::check_config(c), Error);
}

TEST(Cli, InvariantsJson) {
  auto o = call({"invariants", fan("kp2"), "--disk", "ray:0", "--order", "4"});
  ASSERT_EQ(o.status, 0) << o.err;
  auto j = json::parse(o.out);
  auto s = series_from_json(j["potential"]["series"]);
  EXPECT_EQ(s.coefficient(Monomial::of(Var::q(1), 3)), -32);
  EXPECT_EQ(s.coefficient(Monomial::of(Var::q(1), 4)), 286);
  EXPECT_TRUE(o.err.empty());
}

TEST(Cli, TextFormat) {
  auto o = call({"invariants", fan("kp2"), "--disk", "ray:0", "--order", "2", "--format", "text"});
  ASSERT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("1 - 2*q1 + 5*q1^2 + O(grade > 2)"), std::string::npos) << o.out;
}

TEST(Cli, RationalOrder) {
  auto o = call({"invariants", fan("c3z3"), "--disk", "box:3", "--order", "4/3"});
  ASSERT_EQ(o.status, 0) << o.err;
  auto s = series_from_json(json::parse(o.out)["potential"]["series"]);
  EXPECT_EQ(s.coefficient(Monomial::of(Var::tau(3), 4)), Rational(1, 648));
}

TEST(Cli, EveryCommandRuns) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"analyze", fan("c3z3")},
           {"mirror-map", fan("kp2"), "--order", "3"},
           {"mirror-map", fan("kp2"), "--bar", fan("kp2_bar"), "--disk", "ray:0", "--order", "3"},
           {"syz", fan("kp2"), "--gauge", "1"},
           {"syz", fan("kp112")},
           {"oracle", fan("c3z3"), "--bar", fan("c3z3_bar"), "--disk", "box:3", "--order", "2"}}) {
    auto o = call(args);
    EXPECT_EQ(o.status, 0) << args[0] << ": " << o.err;
    EXPECT_TRUE(json::accept(o.out)) << args[0];
  }
}

TEST(Cli, OracleReportsMatch) {
  auto o = call({"oracle", fan("kp2"), "--bar", fan("kp2_bar"), "--disk", "ray:0", "--order", "3"});
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["status"], "MATCH");
}

TEST(Cli, ValidationErrorsExitTwo) {
  auto missing = call({"analyze", "/nonexistent/fan.json"});
  EXPECT_EQ(missing.status, 2);
  EXPECT_EQ(error_of(missing)["kind"], "validation");
  EXPECT_TRUE(missing.out.empty());

  auto bad_disk = call({"invariants", fan("kp2"), "--disk", "ray:9"});
  EXPECT_EQ(bad_disk.status, 2);
  EXPECT_EQ(error_of(bad_disk)["kind"], "validation");

  auto bad_order = call({"invariants", fan("kp2"), "--disk", "ray:0", "--order", "x"});
  EXPECT_EQ(bad_order.status, 2);

  auto no_sub = call({});
  EXPECT_EQ(no_sub.status, 2);

  auto bad_format = call({"analyze", fan("kp2"), "--format", "xml"});
  EXPECT_EQ(bad_format.status, 2);

  auto no_bar = call({"oracle", fan("kp2"), "--disk", "ray:0"});
  EXPECT_EQ(no_bar.status, 2);

  auto bad_gauge = call({"syz", fan("kp2"), "--gauge", "8"});
  EXPECT_EQ(bad_gauge.status, 2);
}

TEST(Cli, BadFanDocument) {
  auto dir = std::filesystem::temp_directory_path() / ("toricgw_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = (dir / "bad.json").string();
  std::ofstream(path) << R"({"rank": 2, "rays": [[2, 0], [0, 1]], "cones": [[0, 1]]})";
  auto o = call({"analyze", path});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(error_of(o)["message"].get<std::string>().find("primitive"), std::string::npos) << o.err;
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputFileIsWrittenWhole) {
  auto dir = std::filesystem::temp_directory_path() / ("toricgw_out_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = (dir / "mm.json").string();
  auto o = call({"mirror-map", fan("kp2"), "--order", "3", "-o", path});
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(json::parse(body.str())["command"], "mirror-map");
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) (void)e, ++files;
  EXPECT_EQ(files, 1u);  // no temporary left behind

  auto bad = call({"mirror-map", fan("kp2"), "-o", (dir / "missing" / "x.json").string()});
  EXPECT_EQ(bad.status, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, BinaryMatchesLibraryEntry) {
  int status = 0;
  auto bin = oracle::run_command(oracle::cli_path() + " invariants " + fan("kp2") + " --disk ray:0 --order 3", &status);
  EXPECT_EQ(status, 0);
  EXPECT_EQ(bin, call({"invariants", fan("kp2"), "--disk", "ray:0", "--order", "3"}).out);
}
