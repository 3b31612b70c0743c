#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pbessel/cli.hpp"

using namespace pbessel::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "pbessel");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  try {
    const auto cfg = parse_args(static_cast<int>(argv.size()), argv.data());
    return {run(cfg, out, err), out.str(), err.str()};
  } catch (const UsageError& e) {
    return {2, out.str(), e.what()};
  }
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

int shell_status(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_r_spec("0:20:0.5").size() == 41);
  CHECK(parse_r_spec("1,3,7") == std::vector<double>{1, 3, 7});
  CHECK(parse_r_spec("2.5") == std::vector<double>{2.5});
  CHECK_THROWS_AS(parse_r_spec("3:1:1"), UsageError);
  CHECK_THROWS_AS(parse_r_spec("0:1:0"), UsageError);
  CHECK(expand_range(RRange{0, 1, 0.25}).size() == 5);
}

TEST_CASE("eval grid") {
  const auto o = run_args({"eval", "--p", "2/3", "--omega", "1", "--phi", "0.7853981633974483", "--r",
                           "0:20:0.5", "--method", "auto"});
  CHECK(o.code == 0);
  const auto ls = lines(o.out);
  REQUIRE(ls.size() == 42);
  CHECK(ls[0] == "p_num,p_den,omega,phi,r_re,r_im,value_re,value_im,err,method");
  CHECK(ls[1].rfind("2,3,1,", 0) == 0);
}

TEST_CASE("eval is deterministic across thread counts") {
  const std::vector<std::string> base{"eval", "--q", "3,4", "--omega", "0,1", "--phi", "0.3,1.5707963267948966",
                                      "--r", "0:60:7.5"};
  auto one = base, many = base;
  one.insert(one.end(), {"--threads", "1"});
  many.insert(many.end(), {"--threads", "4"});
  CHECK(run_args(one).out == run_args(many).out);
}

TEST_CASE("verify suite passes") {
  const auto o = run_args({"verify", "--suite", "ek-derivative", "--p", "2/3", "--tol", "1e-6"});
  CHECK(o.code == 0);
  const auto ls = lines(o.out);
  CHECK(ls.size() > 1);
  for (size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].substr(ls[i].rfind(',') + 1) == "pass");
  const auto summary = nlohmann::json::parse(o.err);
  CHECK(summary["pass"] == true);
}

TEST_CASE("lattice report") {
  const auto o = run_args({"lattice", "--p", "1", "--r", "1"});
  CHECK(o.code == 0);
  const auto ls = lines(o.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1] == "1,1,1,5,2,3,4");
  const auto j = run_args({"lattice", "--p", "1", "--r", "1", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["reports"][0]["count"] == 5);
  CHECK(doc["reports"][0]["boundary_points"].size() == 4);
}

TEST_CASE("compare across routes") {
  const auto o = run_args({"compare", "--p", "2/3", "--omega", "1", "--phi", "0.5", "--r", "1,5,20"});
  CHECK(o.code == 0);
}

TEST_CASE("asymptotic fit") {
  const auto o = run_args({"asy", "--p", "2/3", "--omega", "0", "--phi", "0.7853981633974483", "--r",
                           "20:500:480", "--expect-slope", "-0.5", "--slope-tol", "0.05"});
  CHECK(o.code == 0);
  const auto bad = run_args({"asy", "--p", "2/3", "--omega", "0", "--phi", "0.7853981633974483", "--r",
                             "20:500:480", "--expect-slope", "-2", "--slope-tol", "0.05"});
  CHECK(bad.code == 1);
}

TEST_CASE("hardy sums") {
  const auto o = run_args({"hardy", "--p", "2", "--r", "0.5,2.5", "--K", "2000"});
  CHECK(o.code == 0);
  CHECK(lines(o.out).size() == 3);
}

TEST_CASE("usage errors") {
  CHECK(run_args({"eval", "--p", "0.5", "--omega", "0", "--phi", "0", "--r", "1"}).code == 2);
  CHECK(run_args({"eval", "--p", "2/3,1", "--omega", "0", "--phi", "0", "--r", "1", "--method", "poisson"})
            .code == 2);
  CHECK(run_args({"eval", "--p", "2/3", "--omega", "0", "--phi", "0", "--r", "1", "--tol", "-1"}).code == 2);
  CHECK(run_args({"eval", "--p", "2/3", "--omega", "0", "--phi", "0", "--r", "1", "--method", "no-such-route"}).code == 2);
  CHECK(run_args({"lattice", "--p", "2", "--r", "1", "--format", "svg"}).code == 2);
  CHECK(run_args({"frobnicate"}).code == 2);
}

TEST_CASE("config file with flag override") {
  const std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"command": "eval", "q_list": [3], "omega_list": [0, 1], "phi_list": [0.5],
             "r_range": {"start": 0, "stop": 2, "step": 1}, "format": "csv"})";
  }
  const auto o = run_args({"eval", "--config", path});
  CHECK(o.code == 0);
  CHECK(lines(o.out).size() == 7);
  const auto narrowed = run_args({"eval", "--config", path, "--omega", "2"});
  CHECK(lines(narrowed.out).size() == 4);
  std::remove(path.c_str());
}

TEST_CASE("svg output") {
  const auto o = run_args({"eval", "--p", "1", "--omega", "0", "--phi", "0.4", "--r", "0:10:0.5", "--format", "svg"});
  CHECK(o.code == 0);
  CHECK(o.out.find("<svg") != std::string::npos);
  CHECK(o.out.find("<polyline") != std::string::npos);
}

TEST_CASE("executable exit codes") {
  const std::string exe = PBESSEL_CLI_PATH;
  CHECK(shell_status(exe + " lattice --p 1 --r 1 > /dev/null") == 0);
  CHECK(shell_status(exe + " eval --p 0.5 --omega 0 --phi 0 --r 1 > /dev/null 2>&1") == 2);
  CHECK(shell_status(exe + " --help > /dev/null") == 0);
}
