#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <dismed/scenario_io.hpp>
#include <json.hpp>

#include "support/oracle.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("dismed_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = env + " " + quote(DISMED_CLI_PATH) + " " + args + " >" +
                          quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = dismed::read_text_file(out);
  r.err = dismed::read_text_file(err);
  return r;
}

std::string fx(const std::string& name) { return quote(oracle::fixture(name)); }

}  // namespace

TEST_CASE("decide") {
  auto r = run("decide " + fx("all_three_satisfied.json"));
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["decision"]["buyer_disintermediates"] == "Satisfied");
  CHECK(j["decision"]["broker_provides_web_info"] == "Satisfied");
  CHECK(j["decision"]["seller_disintermediates"] == "Satisfied");

  r = run("decide " + fx("broker_retained.json"));
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["decision"]["buyer_disintermediates"] == "NotSatisfied");
}

TEST_CASE("validate") {
  auto r = run("validate " + fx("all_three_satisfied.json"));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["ok"] == true);

  r = run("validate " + fx("bad_c.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("CommissionOutOfRange") != std::string::npos);

  r = run("validate " + fx("unknown_key.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("UnknownField") != std::string::npos);

  r = run("validate /nonexistent/scenario.json");
  CHECK(r.code == 2);
}

TEST_CASE("conditions as csv") {
  auto r = run("conditions " + fx("all_satisfied_seller.json") + " --set seller --format csv");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 19);
  CHECK(r.out.rfind("set,id,status,", 0) == 0);

  r = run("conditions " + fx("all_satisfied_seller.json") + " --set nobody");
  CHECK(r.code == 2);
}

TEST_CASE("sweep output is reproducible") {
  const std::string args = "sweep " + fx("all_three_satisfied.json") + " --dist " +
                           fx("dist_wide.json") + " -n 50 --seed 7";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["seed"] == 7);
  CHECK(j["n"] == 50);

  auto c = run(args + " --format csv");
  auto d = run(args + " --format csv");
  CHECK(c.out == d.out);
  CHECK(c.out.rfind("id,frequency", 0) == 0);
}

TEST_CASE("optimizer commands") {
  auto r = run("optimize " + fx("optimizer_quadratic.json") + " --bounds " +
               fx("bounds_quadratic.json"));
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["feasible"] == true);
  CHECK(std::fabs(j["decision"]["B_i"].get<double>() - 1.5) < 1e-4);

  r = run("optimize " + fx("optimizer_quadratic.json") + " --bounds " +
          fx("bounds_infeasible.json"));
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["feasible"] == false);

  r = run("pareto " + fx("optimizer_quadratic.json") + " --bounds " +
          fx("bounds_infeasible.json") + " --points 5 --format csv");
  CHECK(r.code == 3);
  CHECK(r.out == "cost,capital,B_b,B_s,B_i,B_n,state\n");

  r = run("pareto " + fx("optimizer_quadratic.json") + " --bounds " +
          fx("bounds_quadratic.json") + " --points 4 --format csv");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 3);
}

TEST_CASE("sensitivity") {
  auto r = run("sensitivity " + fx("all_three_satisfied.json") +
               " --condition B5 --param psi_b --rel-step 0.1");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["condition"] == "B5");
  CHECK(j["status"] == "Satisfied");

  r = run("sensitivity " + fx("zero_responses.json") + " --condition B8 --param psi_bi");
  CHECK(r.code == 2);
  CHECK(r.err.find("IndeterminateAtBase") != std::string::npos);
}

TEST_CASE("configuration sources") {
  const auto cfg = scratch() / "csv.json";
  dismed::write_text_file(cfg, "{\"format\": \"csv\"}\n");
  auto r = run("decide " + fx("all_three_satisfied.json"), "DISMED_CONFIG=" + quote(cfg.string()));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("set,id,status,", 0) == 0);

  r = run("decide " + fx("all_three_satisfied.json") + " --format json",
          "DISMED_CONFIG=" + quote(cfg.string()));
  CHECK(r.out.front() == '{');

  const auto bad = scratch() / "bad.json";
  dismed::write_text_file(bad, "{\"colour\": 1}\n");
  r = run("decide " + fx("all_three_satisfied.json") + " --config " + quote(bad.string()));
  CHECK(r.code == 2);
  CHECK(r.err.find("UnknownField") != std::string::npos);
}

TEST_CASE("output failures and usage errors") {
  auto r = run("decide " + fx("all_three_satisfied.json") + " --out /nonexistent/dir/out.json");
  CHECK(r.code == 4);

  const auto out = scratch() / "decision.json";
  r = run("decide " + fx("all_three_satisfied.json") + " --out " + quote(out.string()));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(dismed::read_text_file(out))["decision"].is_object());

  CHECK(run("frobnicate").code == 2);
  CHECK(run("sweep " + fx("all_three_satisfied.json")).code == 2);
}
