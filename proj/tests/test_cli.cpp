#include "doctest.h"

#include "stripconf/cli.hpp"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace stripconf;
using Json = nlohmann::ordered_json;

namespace {

struct Process {
  int code = -1;
  std::string out;
};

Process run_binary(const std::string& args) {
  std::string cmd = std::string(STRIPCONF_CLI_PATH) + " " + args + " 2>/dev/null";
  Process p;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), f)) p.out.append(buf.data(), n);
  int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

cli::RunConfig config(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  c.use_cache = false;
  c.format = cli::Format::json;
  c.timestamp = false;
  return c;
}

Json result_of(const cli::CommandResult& r) {
  auto j = Json::parse(r.output);
  CHECK(j["schema"] == 1);
  return j["result"];
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("betti in process") {
  auto c = config("betti");
  c.n = 3;
  c.w = 2;
  auto r = cli::run(c);
  CHECK(r.exit_code == 0);
  CHECK(result_of(r)["betti"] == Json::array({1, 7}));
  c.n = 2;
  CHECK(result_of(cli::run(c))["betti"] == Json::array({1, 1}));
  c.n = 0;
  CHECK(result_of(cli::run(c))["betti"] == Json::array({1}));
}

TEST_CASE("reduce in process") {
  auto c = config("reduce");
  c.w = 3;
  c.expression = "W(3)|W(2,1)";
  c.format = cli::Format::table;
  auto r = cli::run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "W(2,1)|W(3)\n");
  c.quotient = 1;
  CHECK(cli::run(c).output == "0\n");
}

TEST_CASE("usage and resource errors") {
  auto c = config("betti");
  c.w = 2;
  CHECK(cli::run(c).exit_code == cli::usage_error);
  c.n = 9;
  c.w = 4;
  c.max_cells = 1000;
  auto r = cli::run(c);
  CHECK(r.exit_code == cli::resource_refused);
  CHECK_FALSE(r.error.empty());
  auto bad = config("reduce");
  bad.w = 2;
  bad.expression = "W(1,2)|W(3)";
  CHECK(cli::run(bad).exit_code == cli::usage_error);
  CHECK(cli::run(config("nonsense")).exit_code == cli::usage_error);
}

TEST_CASE("stability and basis in process") {
  auto c = config("stability");
  c.k = 5;
  c.w = 4;
  auto j = result_of(cli::run(c));
  CHECK(j["b"] == 1);
  CHECK(j["generation_degree"] == 10);
  auto b = config("basis");
  b.n = 3;
  b.w = 2;
  b.k = 1;
  CHECK(result_of(cli::run(b))["elements"].size() == 7);
}

TEST_CASE("verify scopes pass") {
  auto c = config("verify");
  c.n = 4;
  c.w = 2;
  for (std::string scope : {"boundary", "basis", "decomposition"}) {
    c.scope = scope;
    CHECK(cli::run(c).exit_code == 0);
  }
  c.scope = "bogus";
  CHECK(cli::run(c).exit_code == cli::usage_error);
}

TEST_CASE("reduce with an action and rejected inputs") {
  auto c = config("reduce");
  c.w = 2;
  c.format = cli::Format::table;
  c.expression = "W(2,1)|W(3)";
  c.act = "(1 3)";
  CHECK(cli::run(c).output == "W(3,2)|W(1)\n");
  c.act.reset();
  c.expression = "AF(W(1),W(2))";
  auto r = cli::run(c);
  CHECK(r.exit_code == cli::usage_error);
  CHECK(r.error.find("W(1)|W(2)") != std::string::npos);
  CHECK(r.error.find("W(2)|W(1)") != std::string::npos);
  c.expression = "W(1,";
  r = cli::run(c);
  CHECK(r.exit_code == cli::usage_error);
  CHECK(r.error.find("offset") != std::string::npos);
}

TEST_CASE("relation verification at w=2") {
  auto c = config("verify");
  c.w = 2;
  c.scope = "relations";
  c.max_labels = 5;
  CHECK(cli::run(c).exit_code == 0);
}

TEST_CASE("binary end to end") {
  auto cache = std::filesystem::temp_directory_path() / "stripconf-cli-test";
  std::filesystem::remove_all(cache);
  auto p = run_binary("betti --n 3 --w 2 --format json --no-timestamp --cache-dir " + cache.string());
  CHECK(p.code == 0);
  auto j = Json::parse(p.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "betti");
  CHECK(j["result"]["betti"] == Json::array({1, 7}));
  CHECK(std::filesystem::exists(cache));
  auto again = run_binary("betti --n 3 --w 2 --format json --no-timestamp --cache-dir " + cache.string());
  CHECK(again.out == p.out);
  std::filesystem::remove_all(cache);

  auto r = run_binary("reduce --w 3 --expr 'W(3)|W(2,1)'");
  CHECK(r.code == 0);
  CHECK(r.out == "W(2,1)|W(3)\n");
  CHECK(run_binary("betti --w 2").code == 2);
  CHECK(run_binary("betti --n 3 --w 2 --format xml").code == 2);
  CHECK(run_binary("betti --n 9 --w 4 --max-cells 1000 --no-cache").code == 3);
}

}  // TEST_SUITE
