#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "matchkit/io.hpp"

using namespace matchkit;
using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(MATCHKIT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 256> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "matchkit_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  auto path = temp_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("check mgi reports the first violating pair") {
  std::string eq3 = write_file(
      "eq3.sig", R"({"format":1,"mode":"exact","symmetric":["1","0","0","1"]})");
  RunResult r = run("check mgi " + eq3);
  CHECK(r.status == 0);
  CHECK(r.out.find("fail") != std::string::npos);
  CHECK(r.out.find("beta=100") != std::string::npos);
  CHECK(r.out.find("gamma=011") != std::string::npos);

  RunResult j = run("--json check mgi " + eq3);
  json parsed = json::parse(j.out);
  CHECK(parsed["pass"] == false);
  CHECK(parsed["witness"]["beta"] == "100");
  CHECK(parsed["witness"]["gamma"] == "011");
}

TEST_CASE("decide emits a machine verdict") {
  std::string set = write_file(
      "set.json",
      R"({"format":1,"signatures":[{"name":"blow","mode":"exact","symmetric":["0","1","1","0"]}]})");
  RunResult r = run("--json decide " + set + " --variant pl-csp");
  CHECK(r.status == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["outcome"] == "poly");
  CHECK(parsed["class"] == "M_hat");

  RunResult hard = run("--json decide " + set + " --variant csp");
  json hj = json::parse(hard.out);
  CHECK(hj["outcome"] == "sharp-p-hard");

  // identical runs give byte-identical reports
  RunResult again = run("--json decide " + set + " --variant pl-csp");
  CHECK(again.out == r.out);
}

TEST_CASE("check perm flags broken permutations") {
  // F(12) = F(34) = 1, all other pairs 0
  std::string f = write_file("pairgate.sig",
                             R"({"format":1,"mode":"exact","arity":4,"entries":
["1","0","0","1","0","0","0","0","0","0","0","0","1","0","0","1"]})");
  RunResult good = run("check perm " + f + " \"1 2 3 4\"");
  CHECK(good.status == 0);
  CHECK(good.out.find("not preserved") == std::string::npos);
  RunResult bad = run("check perm " + f + " \"1 3 2 4\"");
  CHECK(bad.status == 0);
  CHECK(bad.out.find("not preserved") != std::string::npos);
}

TEST_CASE("eval subcommands answer the oracles") {
  std::string k4 = write_file("k4.json",
                              R"({"format":1,"kind":"graph","vertices":4,"edges":[
{"u":0,"v":1},{"u":0,"v":2},{"u":0,"v":3},{"u":1,"v":2},{"u":1,"v":3},{"u":2,"v":3}]})");
  RunResult r = run("eval pm " + k4);
  CHECK(r.status == 0);
  CHECK(r.out.find("Z = 3") != std::string::npos);

  std::string csp = write_file("csp.json",
                               R"({"format":1,"kind":"csp","variables":3,"constraints":[
{"signature":{"mode":"exact","symmetric":["0","1","1","0"]},"scope":[1,2,3]}]})");
  RunResult rc = run("eval csp " + csp);
  CHECK(rc.out.find("Z = 6") != std::string::npos);
}

TEST_CASE("transform applies a basis change") {
  std::string eq2 = write_file(
      "eq2.sig", R"({"format":1,"mode":"exact","symmetric":["1","0","1"]})");
  RunResult r = run("--json transform " + eq2 + " H2");
  CHECK(r.status == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["entries"] == json::array({"2", "0", "0", "2"}));
}

TEST_CASE("exit codes distinguish parse and precondition failures") {
  std::string broken = write_file("broken.sig", "{not json");
  CHECK(run("check mgi " + broken).status == 3);

  std::string eq3 = write_file(
      "eq3b.sig", R"({"format":1,"mode":"exact","symmetric":["1","0","0","1"]})");
  CHECK(run("synth star " + eq3).status == 2);  // not a permutable matchgate

  std::string set = write_file(
      "set2.json", R"({"format":1,"signatures":[{"mode":"exact","symmetric":["1","0","1"]}]})");
  CHECK(run("decide " + set + " --variant rd-csp --d 2").status == 2);
  CHECK(run("decide " + set + " --variant nonsense").status == 3);
  CHECK(run("no-such-command").status == 3);
  CHECK(run("--help").status == 0);
}

TEST_CASE("holant instances evaluate from files") {
  std::string inst = write_file("doubled.json",
                                R"({"format":1,"kind":"holant","edge_count":2,"vertices":[
{"signature":{"mode":"exact","symmetric":["1","0","1"]},"edges":[0,1]},
{"signature":{"mode":"exact","symmetric":["1","0","1"]},"edges":[0,1]}]})");
  RunResult r = run("eval holant " + inst);
  CHECK(r.status == 0);
  CHECK(r.out.find("Z = 2") != std::string::npos);
}

TEST_CASE("environment variables select mode and tolerance") {
  std::string f = write_file("float.sig",
                             R"({"format":1,"arity":1,"entries":["0.5","0.25"]})");
  std::string cmd = std::string("MATCHKIT_MODE=float ") + MATCHKIT_CLI_PATH +
                    " --json normalize " + f + " 2>&1";
  std::array<char, 256> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int rc = WEXITSTATUS(pclose(pipe));
  CHECK(rc == 0);
  json parsed = json::parse(out);
  CHECK(parsed["scale"] == "0.5");
}

TEST_CASE("classify prints the six memberships") {
  std::string blow = write_file(
      "blow.sig", R"({"format":1,"mode":"exact","symmetric":["0","1","1","0"]})");
  RunResult r = run("--json classify " + blow);
  CHECK(r.status == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["affine"] == false);
  CHECK(parsed["product"] == false);
  CHECK(parsed["matchgate_hat"] == true);
  CHECK(parsed["permutable_hat"] == true);
}
