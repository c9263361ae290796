#include "nucleo/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nucleo/dp.hpp"
#include "nucleo/enumeration.hpp"
#include "nucleo/errors.hpp"
#include "nucleo/game.hpp"
#include "nucleo/solver.hpp"

namespace nucleo::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string game_path;
  std::string payoff_str;
  int j = 0;  // 0 = default (n + 1)
  std::uint64_t seed = 0;
  std::string format = "text";
  int guard_n = 0;  // 0 = module defaults
  bool stages = false;
};

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open game file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error("game file is not valid JSON: " +
                           std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("quota") || !doc.contains("weights"))
    throw validation_error(
        "game file must be an object with \"quota\" and \"weights\"");
  if (!doc["quota"].is_number_integer())
    throw validation_error("\"quota\" must be an integer");
  if (!doc["weights"].is_array())
    throw validation_error("\"weights\" must be an array of integers");
  std::vector<long long> weights;
  for (const auto& w : doc["weights"]) {
    if (!w.is_number_integer())
      throw validation_error("\"weights\" must be an array of integers");
    weights.push_back(w.get<long long>());
  }
  return Game::validate(std::move(weights), doc["quota"].get<long long>());
}

PayoffVector parse_payoff(const Game& game, const std::string& s) {
  if (s.empty()) throw validation_error("--payoff is required");
  auto p = parse_rat_list(s);
  if (static_cast<int>(p.size()) != game.agent_count())
    throw validation_error("payoff length does not match the agent count");
  return p;
}

json payoff_json(const PayoffVector& p) {
  json a = json::array();
  for (const Rat& x : p) a.push_back(rat_str(x));
  return a;
}

json stages_json(const std::vector<StageRecord>& stages, bool full) {
  json a = json::array();
  for (const auto& rec : stages) {
    json s;
    s["epsilon"] = rat_str(rec.epsilon);
    s["tight_count"] = count_str(rec.tight_count);
    if (full) {
      s["index"] = rec.index;
      s["interior_point"] = payoff_json(rec.interior_point);
      s["generated_constraints"] = rec.generated.size();
    }
    a.push_back(std::move(s));
  }
  return a;
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.format == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  // flat, line-oriented text rendering
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << key << ":\n";
      for (const auto& row : value) {
        out << " ";
        for (const auto& [k, v] : row.items())
          out << " " << k << "=" << (v.is_string() ? v.get<std::string>()
                                                   : v.dump());
        out << "\n";
      }
    } else if (value.is_array()) {
      out << key << ":";
      for (const auto& v : value)
        out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
      out << "\n";
    } else {
      out << key << ": "
          << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
    }
  }
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  Game game = load_game(cfg.game_path);
  const int n = game.agent_count();
  json doc;

  if (cfg.command == "compute") {
    SolverConfig sc;
    sc.seed = cfg.seed;
    auto result = nucleolus(game, sc);
    doc["payoff"] = payoff_json(result.payoff);
    doc["stages"] = stages_json(result.stages, cfg.stages);
  } else if (cfg.command == "least-core") {
    SolverConfig sc;
    sc.seed = cfg.seed;
    auto result = least_core(game, sc);
    doc["epsilon"] = rat_str(result.epsilon);
    doc["payoff"] = payoff_json(result.payoff);
  } else if (cfg.command == "profile") {
    auto p = parse_payoff(game, cfg.payoff_str);
    int j = cfg.j > 0 ? cfg.j : n + 1;
    auto tables = build_tables(game, p, j);
    auto profile = top_deficits(tables, game, j);
    json values = json::array();
    json counts = json::array();
    for (const Rat& v : profile.values) values.push_back(rat_str(v));
    for (const Count& c : profile.counts) counts.push_back(count_str(c));
    doc["values"] = std::move(values);
    doc["counts"] = std::move(counts);
  } else if (cfg.command == "verify") {
    auto p = parse_payoff(game, cfg.payoff_str);
    int guard = cfg.guard_n > 0 ? cfg.guard_n : kDefaultBruteLpGuard;
    auto expected = brute_nucleolus(game, guard);
    doc["match"] = (p == expected);
    doc["expected"] = payoff_json(expected);
  } else if (cfg.command == "brute") {
    int guard = cfg.guard_n > 0 ? cfg.guard_n : kDefaultBruteLpGuard;
    doc["payoff"] = payoff_json(brute_nucleolus(game, guard));
  } else {
    throw validation_error("unknown command: " + cfg.command);
  }

  emit(cfg, doc, out);
  return 0;
}

int fail(const RunConfig& cfg, int code, const std::string& message,
         std::ostream& out, std::ostream& err) {
  if (cfg.format == "json") {
    json doc;
    doc["error"]["code"] = code;
    doc["error"]["message"] = message;
    out << doc.dump(2) << "\n";
  }
  err << "error: " << message << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact least-core and nucleolus solver for weighted voting "
               "games"};
  app.require_subcommand(1);

  bool seed_given = false;
  auto add_common = [&](CLI::App* sub, bool with_payoff) {
    sub->add_option("--game", cfg.game_path, "Game file (JSON)")->required();
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "Randomization seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--guard-n", cfg.guard_n,
                    "Agent-count limit for exponential-time commands");
    if (with_payoff)
      sub->add_option("--payoff", cfg.payoff_str,
                      "Comma-separated rational payoffs, e.g. 1/2,1/2,0")
          ->required();
  };

  auto* compute = app.add_subcommand("compute", "Compute the nucleolus");
  add_common(compute, false);
  compute->add_flag("--stages", cfg.stages, "Dump the full stage history");
  add_common(app.add_subcommand("least-core", "Compute the least-core value"),
             false);
  auto* profile =
      app.add_subcommand("profile", "Top distinct deficits of a payoff");
  add_common(profile, true);
  profile->add_option("--j", cfg.j, "Number of deficit levels");
  add_common(app.add_subcommand("verify",
                                "Check a payoff against the reference solver"),
             true);
  add_common(app.add_subcommand("brute", "Reference nucleolus (guarded)"),
             false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    return fail(cfg, 1, e.what(), out, err);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!seed_given) {
    if (const char* env = std::getenv("NUCLEO_SEED"))
      cfg.seed = std::strtoull(env, nullptr, 10);
  }

  try {
    return dispatch(cfg, out);
  } catch (const validation_error& e) {
    return fail(cfg, 1, e.what(), out, err);
  } catch (const guard_error& e) {
    return fail(cfg, 2, e.what(), out, err);
  } catch (const contract_error& e) {
    return fail(cfg, 3, e.what(), out, err);
  }
}

}  // namespace nucleo::cli
