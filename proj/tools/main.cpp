// Copyright 2026 The Reachgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// reachgame command-line tool. Every report is a JSON object with
// "manifest", "result" and "warnings".

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reachgame/classify.hpp"
#include "reachgame/errors.hpp"
#include "reachgame/game_forms.hpp"
#include "reachgame/io.hpp"
#include "reachgame/mdp.hpp"
#include "reachgame/oracle.hpp"
#include "reachgame/synthesize.hpp"
#include "reachgame/values.hpp"

namespace {

using reachgame::ConcurrentGame;
using reachgame::Error;
using reachgame::ErrorCode;
using reachgame::StateSet;
using reachgame::Valuation;
using reachgame::io::canonical_number;
using reachgame::io::Json;

constexpr const char* kVersion = "0.1.0";

struct Globals {
  double tol = 1e-6;
  std::size_t max_iter = 1'000'000;
  double theta_eq = 1e-7;
  double theta_strict = 1e-6;
  bool force = false;
  bool json = false;
  bool pretty = false;
  bool timing = false;
  unsigned threads = 1;
};

struct Input {
  std::string path;
  std::string digest;
};

// FNV-1a, 64 bit. Identifies inputs in the manifest; not a security hash.
std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Run {
 public:
  Run(std::string command, const Globals& g) : command_(std::move(command)), g_(g) {}

  Json load(const std::string& path) {
    const auto text = reachgame::io::read_text_file(path);
    inputs_.push_back({path, digest_of(text)});
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput, "'" + path + "' is not valid JSON: " + e.what());
    }
  }

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void warn(const std::string& w) { warnings_.push_back(w); }
  void warn_all(const std::vector<std::string>& ws) {
    for (const auto& w : ws) warn(w);
  }

  Json manifest() const {
    Json m;
    m["command"] = command_;
    m["tool_version"] = kVersion;
    Json inputs = Json::array();
    for (const auto& in : inputs_) inputs.push_back({{"path", in.path}, {"digest", in.digest}});
    m["inputs"] = std::move(inputs);
    m["tolerances"] = {{"tol", g_.tol},
                       {"max_iter", g_.max_iter},
                       {"theta_eq", g_.theta_eq},
                       {"theta_strict", g_.theta_strict}};
    if (seed_) m["seed"] = *seed_;
    if (g_.timing) {
      m["wall_clock_seconds"] =
          canonical_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count());
    }
    return m;
  }

  void emit(Json result) const {
    Json out;
    out["manifest"] = manifest();
    out["result"] = std::move(result);
    out["warnings"] = warnings_;
    std::cout << out.dump(g_.pretty ? 2 : -1) << "\n";
  }

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  Globals g_;
  std::vector<Input> inputs_;
  std::vector<std::string> warnings_;
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

reachgame::FixpointOptions fixpoint_options(const Globals& g) {
  reachgame::FixpointOptions o;
  o.tol = g.tol;
  o.max_iter = g.max_iter;
  return o;
}

reachgame::Tolerances tolerances(const Globals& g) {
  reachgame::Tolerances t;
  t.theta_eq = g.theta_eq;
  t.theta_strict = g.theta_strict;
  return t;
}

Json valuation_json(const ConcurrentGame& game, const Valuation& v) {
  Json out = Json::object();
  for (std::size_t q = 0; q < v.size(); ++q) out[game.state_names()[q]] = canonical_number(v[q]);
  return out;
}

Json set_json(const std::vector<std::string>& names, const StateSet& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out.push_back(names[i]);
  }
  return out;
}

Json mixed_json(const std::vector<std::string>& actions, const reachgame::MixedAction& m) {
  Json out = Json::object();
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (m[a] > 0.0) out[actions[a]] = canonical_number(m[a]);
  }
  return out;
}

std::size_t state_arg(const ConcurrentGame& game, const std::string& name) {
  auto q = game.state_index(name);
  if (!q) throw Error(ErrorCode::kUnknownIdentifier, "unknown state '" + name + "'");
  return *q;
}

void cmd_solve(Run& run, const Globals& g, const std::string& path) {
  const auto game = reachgame::io::parse_game(run.load(path));
  const auto v = reachgame::solve_values(game, fixpoint_options(g));
  run.warn_all(v.warnings);
  Json r;
  r["values"] = valuation_json(game, v.values);
  r["iterations"] = v.kleene.iterations;
  r["residual"] = canonical_number(v.residual);
  r["converged"] = v.converged;
  r["zero_set"] = set_json(game.state_names(), v.zero_set);
  r["lower"] = valuation_json(game, v.lower);
  r["upper"] = valuation_json(game, v.upper);
  r["gap"] = canonical_number(v.gap);
  r["upper_certified"] = v.upper_selected;
  run.emit(std::move(r));
}

reachgame::ClassificationReport classify_game(Run& run, const Globals& g, const ConcurrentGame& game) {
  const auto v = reachgame::solve_values(game, fixpoint_options(g));
  auto report = reachgame::classify_with_values(game, v, tolerances(g), g.force);
  run.warn_all(report.warnings);
  return report;
}

Json report_json(const ConcurrentGame& game, const reachgame::ClassificationReport& rep) {
  const auto& names = game.state_names();
  Json r;
  r["values"] = valuation_json(game, rep.values);
  r["zero_set"] = set_json(names, rep.zero_set);
  r["max_states"] = set_json(names, rep.max_states);
  r["submax_states"] = set_json(names, rep.submax_states);
  Json hier = Json::array();
  for (const auto& round : rep.sec_hierarchy) {
    Json levels = Json::array();
    for (const auto& level : round) levels.push_back(set_json(names, level));
    hier.push_back(std::move(levels));
  }
  r["sec_hierarchy"] = std::move(hier);
  Json bad = Json::array();
  for (const auto& b : rep.bad_iterations) bad.push_back(set_json(names, b));
  r["bad_iterations"] = std::move(bad);
  Json wit = Json::object();
  for (std::size_t q = 0; q < names.size(); ++q) {
    Json w;
    w["action"] = mixed_json(game.action_names(reachgame::Player::kA), rep.witnesses[q]);
    w["level"] = rep.witness_level[q];
    wit[names[q]] = std::move(w);
  }
  r["witnesses"] = std::move(wit);
  r["tolerances"] = {{"theta_eq", rep.tolerances.theta_eq},
                     {"theta_strict", rep.tolerances.theta_strict},
                     {"pattern_cap", rep.tolerances.pattern_cap}};
  r["min_margin"] = canonical_number(rep.min_margin);
  r["value_gap"] = canonical_number(rep.value_gap);
  r["converged"] = rep.converged;
  Json summary = Json::array();
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %-14s %-8s %s", "state", "value", "class", "sec-level");
  summary.push_back(line);
  for (std::size_t q = 0; q < names.size(); ++q) {
    std::snprintf(line, sizeof line, "%-16s %-14.12g %-8s %d", names[q].c_str(), canonical_number(rep.values[q]),
                  rep.submax_states[q] ? "submax" : "max", rep.witness_level[q]);
    summary.push_back(line);
  }
  r["summary"] = std::move(summary);
  return r;
}

void cmd_classify(Run& run, const Globals& g, const std::string& path) {
  const auto game = reachgame::io::parse_game(run.load(path));
  const auto rep = classify_game(run, g, game);
  run.emit(report_json(game, rep));
}

void cmd_synthesize(Run& run, const Globals& g, const std::string& path, const std::string& player, double epsilon) {
  const auto game = reachgame::io::parse_game(run.load(path));
  Json r;
  if (player == "a" || player == "A") {
    const auto rep = classify_game(run, g, game);
    const auto s = reachgame::synthesize_a(game, rep, epsilon);
    run.warn_all(s.warnings);
    r["strategy"] = reachgame::io::strategy_to_json(s.strategy, game);
    Json ver;
    ver["verified"] = s.verified;
    ver["epsilon"] = canonical_number(s.epsilon);
    ver["epsilon_used"] = canonical_number(s.epsilon_used);
    ver["eta"] = canonical_number(s.eta);
    ver["values"] = valuation_json(game, rep.values);
    ver["guarantee"] = valuation_json(game, s.guarantee);
    ver["evaluated"] = valuation_json(game, s.evaluated);
    Json prov = Json::object();
    for (std::size_t q = 0; q < game.state_count(); ++q) {
      Json p;
      p["kind"] = std::string(reachgame::provenance_name(s.provenance[q]));
      if (s.level[q] >= 0) p["level"] = s.level[q];
      prov[game.state_names()[q]] = std::move(p);
    }
    ver["provenance"] = std::move(prov);
    r["verification"] = std::move(ver);
  } else {
    const auto v = reachgame::solve_values(game, fixpoint_options(g));
    run.warn_all(v.warnings);
    const auto s = reachgame::synthesize_b(game, v.values);
    if (!s.verified) run.warn("Player-B strategy lets Player A exceed the values by more than 1e-4");
    r["strategy"] = reachgame::io::strategy_to_json(s.strategy, game);
    r["verification"] = {{"verified", s.verified},
                         {"values", valuation_json(game, v.values)},
                         {"evaluated", valuation_json(game, s.evaluated)}};
  }
  run.emit(std::move(r));
}

void cmd_evaluate(Run& run, const std::string& path, const std::vector<std::string>& strategies) {
  const auto game = reachgame::io::parse_game(run.load(path));
  std::optional<reachgame::PositionalStrategy> sa;
  std::optional<reachgame::PositionalStrategy> sb;
  for (const auto& file : strategies) {
    auto s = reachgame::io::parse_strategy(run.load(file), game);
    auto& slot = s.player == reachgame::Player::kA ? sa : sb;
    if (slot) throw Error(ErrorCode::kInvalidInput, "two strategies given for the same player");
    slot = std::move(s);
  }
  Json r;
  if (sa && sb) {
    r["mode"] = "pair";
    r["values"] = valuation_json(game, reachgame::evaluate_pair(game, *sa, *sb));
  } else if (sa) {
    const auto res = reachgame::evaluate_against_best_b(game, *sa);
    r["mode"] = "against-best-b";
    r["values"] = valuation_json(game, res.values);
    r["witness"] = reachgame::io::strategy_to_json(res.witness, game);
  } else {
    const auto res = reachgame::evaluate_against_best_a(game, *sb);
    r["mode"] = "against-best-a";
    r["values"] = valuation_json(game, res.values);
    r["witness"] = reachgame::io::strategy_to_json(res.witness, game);
  }
  run.emit(std::move(r));
}

void cmd_simulate(Run& run, const Globals& g, const std::string& path, const std::string& fa,
                  const std::string& fb, const std::string& from, const reachgame::oracle::SimulationConfig& base) {
  const auto game = reachgame::io::parse_game(run.load(path));
  const auto sa = reachgame::io::parse_strategy(run.load(fa), game);
  const auto sb = reachgame::io::parse_strategy(run.load(fb), game);
  if (sa.player != reachgame::Player::kA || sb.player != reachgame::Player::kB) {
    throw Error(ErrorCode::kInvalidInput, "simulate expects a Player-A then a Player-B strategy file");
  }
  run.set_seed(base.seed);
  auto cfg = base;
  cfg.threads = g.threads;
  const auto est = reachgame::oracle::simulate(game, sa, sb, state_arg(game, from), cfg);
  Json r;
  r["from"] = from;
  r["runs"] = est.runs;
  r["horizon"] = cfg.horizon;
  r["estimate"] = canonical_number(est.p);
  r["stderr"] = canonical_number(est.std_error);
  run.emit(std::move(r));
}

void cmd_gameform_check(Run& run, const Globals& g, const std::string& path, std::size_t samples,
                        std::uint64_t seed) {
  const auto form = reachgame::io::parse_game_form(run.load(path));
  run.set_seed(seed);
  const auto det = reachgame::is_determined(form);
  Json r;
  r["determined"] = det.determined;
  if (!det.determined) r["counterexample_E"] = set_json(form.outcome_names(), det.counterexample);
  const auto f = reachgame::rm_falsify(form, samples, seed, tolerances(g));
  Json rm;
  rm["samples"] = f.samples_tried;
  if (f.counterexample_found) {
    rm["verdict"] = "not RM: counterexample found";
    rm["alpha"] = reachgame::io::partial_valuation_to_json(*f.alpha, form);
    rm["v_alpha"] = canonical_number(f.verdict->v_alpha);
  } else {
    rm["verdict"] = "no counterexample found (" + std::to_string(f.samples_tried) + " samples)";
  }
  r["rm_falsification"] = std::move(rm);
  run.emit(std::move(r));
}

void cmd_gameform_embed(Run& run, const Globals& g, const std::string& path, const std::string& alpha_path) {
  const auto form = reachgame::io::parse_game_form(run.load(path));
  const auto alpha = reachgame::io::parse_partial_valuation(run.load(alpha_path), form);
  const auto game = reachgame::embed_three_state(form, alpha);
  const auto verdict = reachgame::rm_wrt(form, alpha, tolerances(g));
  Json r;
  r["game"] = reachgame::io::game_to_json(game);
  r["v_alpha"] = canonical_number(verdict.v_alpha);
  r["rm"] = verdict.rm;
  if (verdict.witness) {
    Json w;
    w["rows"] = verdict.witness->rows;
    w["tight_columns"] = verdict.witness->tight_columns;
    Json mix = Json::array();
    for (double p : verdict.witness->witness) mix.push_back(canonical_number(p));
    w["strategy"] = std::move(mix);
    r["witness"] = std::move(w);
  }
  run.emit(std::move(r));
}

Json error_json(const Run* run, const Error& e) {
  Json err;
  err["code"] = std::string(reachgame::error_name(e.code()));
  err["message"] = e.what();
  err["details"] = e.details();
  Json out;
  if (run != nullptr) out["manifest"] = run->manifest();
  out["error"] = std::move(err);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for concurrent stochastic reachability games"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Value-iteration stopping step")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "Value-iteration cap");
  app.add_option("--theta-eq", g.theta_eq, "Tolerance for 'equals the value'")->check(CLI::PositiveNumber);
  app.add_option("--theta-strict", g.theta_strict, "Minimum slack for strict inequalities")
      ->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "Classify even if values did not converge");
  app.add_flag("--json", g.json, "Compact JSON output (default)");
  app.add_flag("--pretty", g.pretty, "Indented JSON output");
  app.add_flag("--timing", g.timing, "Record wall-clock time in the manifest");
  app.add_option("--threads", g.threads, "Worker cap for simulation")->check(CLI::PositiveNumber);

  std::string game_path;
  auto* solve = app.add_subcommand("solve", "Game values by value iteration");
  solve->add_option("game", game_path, "Game file")->required();

  auto* classify = app.add_subcommand("classify", "Maximizable / sub-maximizable states");
  classify->add_option("game", game_path, "Game file")->required();

  std::string player = "a";
  double epsilon = 0.01;
  auto* synth = app.add_subcommand("synthesize", "Positional strategy synthesis");
  synth->add_option("game", game_path, "Game file")->required();
  synth->add_option("--player", player, "a or b")->check(CLI::IsMember({"a", "b", "A", "B"}));
  synth->add_option("--epsilon", epsilon, "Player-A slack on sub-maximizable states")->check(CLI::PositiveNumber);

  std::vector<std::string> strategy_files;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate positional strategies");
  evaluate->add_option("game", game_path, "Game file")->required();
  evaluate->add_option("strategies", strategy_files, "One or two strategy files")->required()->expected(1, 2);

  std::string fa;
  std::string fb;
  std::string from;
  reachgame::oracle::SimulationConfig sim;
  sim.runs = 100000;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of P(horizon, target)");
  simulate->add_option("game", game_path, "Game file")->required();
  simulate->add_option("strategy_a", fa, "Player-A strategy file")->required();
  simulate->add_option("strategy_b", fb, "Player-B strategy file")->required();
  simulate->add_option("--from", from, "Start state")->required();
  simulate->add_option("--runs", sim.runs, "Number of runs")->check(CLI::PositiveNumber);
  simulate->add_option("--horizon", sim.horizon, "Steps per run")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "RNG seed");

  auto* gameform = app.add_subcommand("gameform", "Game-form audits");
  gameform->require_subcommand(1);
  std::string form_path;
  std::string alpha_path;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  auto* check = gameform->add_subcommand("check", "Determinacy and RM falsification");
  check->add_option("form", form_path, "Game-form file")->required();
  check->add_option("--samples", samples, "Partial valuations to sample")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "RNG seed");
  auto* embed = gameform->add_subcommand("embed", "Three-state game of a form and partial valuation");
  embed->add_option("form", form_path, "Game-form file")->required();
  embed->add_option("--alpha", alpha_path, "Partial valuation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
  }
  Run run(command, g);
  try {
    if (solve->parsed()) {
      cmd_solve(run, g, game_path);
    } else if (classify->parsed()) {
      cmd_classify(run, g, game_path);
    } else if (synth->parsed()) {
      cmd_synthesize(run, g, game_path, player, epsilon);
    } else if (evaluate->parsed()) {
      cmd_evaluate(run, game_path, strategy_files);
    } else if (simulate->parsed()) {
      cmd_simulate(run, g, game_path, fa, fb, from, sim);
    } else if (check->parsed()) {
      cmd_gameform_check(run, g, form_path, samples, seed);
    } else if (embed->parsed()) {
      cmd_gameform_embed(run, g, form_path, alpha_path);
    }
  } catch (const Error& e) {
    std::cerr << error_json(&run, e).dump(g.pretty ? 2 : -1) << "\n";
    return 1;
  }
  return 0;
}
