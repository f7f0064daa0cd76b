// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" QLATTICE_CLI_PATH "\" " + args + " 2>cli_stderr.txt";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp("cli_stderr.txt");
  return r;
}

}  // namespace

TEST_CASE("build prints the space") {
  const auto r = run("build --kind zprime --n 2");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["elements"].size() == 5);
  CHECK(j["bottom"] == "⊥");
  CHECK(j["name"] == "Z'2");
}

TEST_CASE("bell reports the entangled marginals") {
  const auto r = run("bell");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["phi"]["13"] == "N⊗⊥ ⊓ Y⊗N");
  CHECK(j["phi"]["24"] == "⊥⊗⊥");
  CHECK(j["nonlocal"] == true);
  CHECK(j["lambda"].is_null());
}

TEST_CASE("verify runs a suite") {
  const auto r = run("verify --suite closure");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["suite"] == "closure");
  CHECK(j["pass"] == true);
  CHECK(j["failed"] == 0);
  bool counterexample = false;
  for (const auto& c : j["checks"]) counterexample = counterexample || c["name"] == "pre-closure counterexample";
  CHECK(counterexample);
  CHECK(run("verify --suite closure").out == r.out);
}

TEST_CASE("exit codes") {
  CHECK(run("build --kind foo").code == 2);
  CHECK(run("verify --suite nosuch").code == 2);
  spit("cli_bad.json", R"({"elements": ["⊥", "x"], "leq": [[0, 5]]})");
  const auto bad = run("build --in cli_bad.json");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("leq: id 5 out of range") != std::string::npos);
  CHECK(run("geometry --factors 3").code == 3);
  CHECK(run("tensor --kind zprime --na 2 --nb 2", "QLATTICE_CAP_OVERRIDE=10").code == 3);
  CHECK(run("tensor --kind zprime --na 2 --nb 2 --cap-elements 10").code == 3);
  CHECK(run("tensor --kind zprime --na 2 --nb 2", "QLATTICE_CAP_OVERRIDE=1000000").code == 0);
}

TEST_CASE("DOT export round trips through --in") {
  const auto dot = run("build --kind zprime --n 3 --format dot");
  REQUIRE(dot.code == 0);
  spit("cli_space.dot", dot.out);
  const auto back = run("build --in cli_space.dot --format dot");
  REQUIRE(back.code == 0);
  CHECK(back.out == dot.out);
  const auto js = run("build --in cli_space.dot");
  CHECK(js.out == run("build --kind zprime --n 3").out);
}
