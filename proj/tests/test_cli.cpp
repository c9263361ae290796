#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nucleo/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = nucleo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_game(const std::string& body) {
  static int counter = 0;
  std::string path = "cli_test_game_" + std::to_string(counter++) + ".json";
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("compute emits the payoff and stage table") {
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  auto r = run({"compute", "--game", path, "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["payoff"] == json({"1/3", "1/3", "1/3"}));
  REQUIRE(doc["stages"].size() == 1);
  CHECK(doc["stages"][0]["epsilon"] == "1/3");
  CHECK(doc["stages"][0]["tight_count"] == "3");
  std::remove(path.c_str());
}

TEST_CASE("--stages dumps the full history") {
  auto path = write_game(R"({"quota":4,"weights":[2,2]})");
  auto r = run({"compute", "--game", path, "--format", "json", "--stages"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  REQUIRE(doc["stages"].size() == 2);
  CHECK(doc["stages"][0]["epsilon"] == "0");
  CHECK(doc["stages"][1]["epsilon"] == "-1/2");
  CHECK(doc["stages"][0]["interior_point"] == json({"1/2", "1/2"}));
  CHECK(doc["stages"][0].contains("generated_constraints"));
  std::remove(path.c_str());
}

TEST_CASE("least-core") {
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  auto r = run({"least-core", "--game", path, "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["epsilon"] == "1/3");
  CHECK(doc["payoff"] == json({"1/3", "1/3", "1/3"}));
  std::remove(path.c_str());
}

TEST_CASE("profile reports top distinct deficits") {
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  auto r = run({"profile", "--game", path, "--payoff", "1/2,1/2,0", "--j", "3",
                "--format", "json"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["values"] == json({"1/2", "0", "-1/2"}));
  CHECK(doc["counts"] == json({"2", "4", "2"}));
  std::remove(path.c_str());
}

TEST_CASE("verify round-trips the computed payoff") {
  auto path = write_game(R"({"quota":3,"weights":[2,1,1]})");
  auto computed = run({"compute", "--game", path, "--format", "json"});
  REQUIRE(computed.code == 0);
  auto doc = json::parse(computed.out);
  std::string payoff;
  for (const auto& x : doc["payoff"]) {
    if (!payoff.empty()) payoff += ",";
    payoff += x.get<std::string>();
  }
  auto verified = run({"verify", "--game", path, "--payoff", payoff,
                       "--format", "json"});
  REQUIRE(verified.code == 0);
  CHECK(json::parse(verified.out)["match"] == true);

  auto wrong = run({"verify", "--game", path, "--payoff", "0,1/2,1/2",
                    "--format", "json"});
  REQUIRE(wrong.code == 0);
  CHECK(json::parse(wrong.out)["match"] == false);
  std::remove(path.c_str());
}

TEST_CASE("brute command is guarded") {
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  auto r = run({"brute", "--game", path, "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["payoff"] == json({"1/3", "1/3", "1/3"}));
  std::remove(path.c_str());

  // 13 agents exceeds the default guard; unanimity keeps the forced run cheap
  auto big = write_game(R"({"quota":13,"weights":[1,1,1,1,1,1,1,1,1,1,1,1,1]})");
  auto g = run({"brute", "--game", big, "--format", "json"});
  CHECK(g.code == 2);
  CHECK(json::parse(g.out)["error"]["code"] == 2);
  auto forced = run({"brute", "--game", big, "--guard-n", "13", "--format",
                     "json"});
  CHECK(forced.code == 0);
  CHECK(json::parse(forced.out)["payoff"][0] == "1/13");
  std::remove(big.c_str());
}

TEST_CASE("validation failures exit with code 1 and an error object") {
  auto path = write_game(R"({"quota":4,"weights":[2,1]})");
  auto r = run({"compute", "--game", path, "--format", "json"});
  CHECK(r.code == 1);
  auto doc = json::parse(r.out);
  CHECK(doc["error"]["code"] == 1);
  CHECK(doc["error"]["message"].get<std::string>().find(
            "grand coalition loses") != std::string::npos);
  std::remove(path.c_str());

  CHECK(run({"compute", "--game", "does_not_exist.json"}).code == 1);
  auto bad = write_game("not json at all");
  CHECK(run({"compute", "--game", bad}).code == 1);
  std::remove(bad.c_str());
  auto bad2 = write_game(R"({"quota":"2","weights":[1,1]})");
  CHECK(run({"compute", "--game", bad2}).code == 1);
  std::remove(bad2.c_str());
}

TEST_CASE("malformed flags exit with code 1") {
  CHECK(run({"compute"}).code == 1);
  CHECK(run({"unknown-command"}).code == 1);
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  CHECK(run({"profile", "--game", path}).code == 1);  // payoff required
  CHECK(run({"profile", "--game", path, "--payoff", "1/0,0,0"}).code == 1);
  CHECK(run({"profile", "--game", path, "--payoff", "1,0"}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("identical game and seed give byte-identical JSON") {
  auto path = write_game(R"({"quota":7,"weights":[5,3,2,1,1]})");
  auto a = run({"compute", "--game", path, "--seed", "42", "--format", "json",
                "--stages"});
  auto b = run({"compute", "--game", path, "--seed", "42", "--format", "json",
                "--stages"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::remove(path.c_str());
}

TEST_CASE("NUCLEO_SEED is the seed fallback") {
  auto path = write_game(R"({"quota":7,"weights":[5,3,2,1,1]})");
  setenv("NUCLEO_SEED", "42", 1);
  auto env = run({"compute", "--game", path, "--format", "json", "--stages"});
  unsetenv("NUCLEO_SEED");
  auto flag = run({"compute", "--game", path, "--seed", "42", "--format",
                   "json", "--stages"});
  CHECK(env.out == flag.out);
  std::remove(path.c_str());
}

TEST_CASE("text format renders one field per line") {
  auto path = write_game(R"({"quota":2,"weights":[1,1,1]})");
  auto r = run({"least-core", "--game", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("epsilon: 1/3") != std::string::npos);
  CHECK(r.out.find("payoff:") != std::string::npos);
  std::remove(path.c_str());
}
