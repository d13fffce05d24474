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

#include "reachgame/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "reachgame/errors.hpp"

namespace reachgame::io {

namespace {

[[noreturn]] void bad_input(const std::string& msg) { throw Error(ErrorCode::kInvalidInput, msg); }

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad_input(std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::vector<std::string> string_list(const Json& value, const char* what) {
  if (!value.is_array()) bad_input(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) bad_input(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

double parse_decimal(std::string_view text) {
  double x = 0.0;
  auto trimmed = text;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), x);
  if (ec != std::errc() || ptr != trimmed.data() + trimmed.size()) {
    bad_input("cannot parse probability '" + std::string(text) + "'");
  }
  return x;
}

}  // namespace

double parse_probability(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    const double num = parse_decimal(std::string_view(text).substr(0, slash));
    const double den = parse_decimal(std::string_view(text).substr(slash + 1));
    if (den == 0.0) bad_input("zero denominator in '" + text + "'");
    return num / den;
  }
  bad_input("probability must be a number or a fraction string, got " + value.dump());
}

GameDescription parse_game_description(const Json& doc) {
  GameDescription desc;
  desc.states = string_list(require(doc, "states"), "states");
  const auto& target = require(doc, "target");
  if (!target.is_string()) bad_input("target must be a string");
  desc.target = target.get<std::string>();
  desc.actions_a = string_list(require(doc, "actions_a"), "actions_a");
  desc.actions_b = string_list(require(doc, "actions_b"), "actions_b");

  const auto& nature = require(doc, "nature");
  if (!nature.is_object()) bad_input("nature must be an object");
  for (const auto& [name, row] : nature.items()) {
    if (!row.is_object()) bad_input("nature['" + name + "'] must be an object");
    std::vector<std::pair<std::string, double>> entries;
    for (const auto& [state, p] : row.items()) entries.emplace_back(state, parse_probability(p));
    desc.nature.emplace_back(name, std::move(entries));
  }

  const auto& delta = require(doc, "delta");
  if (!delta.is_object()) bad_input("delta must be an object");
  for (const auto& [state, table] : delta.items()) {
    if (!table.is_array()) bad_input("delta['" + state + "'] must be a matrix");
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : table) rows.push_back(string_list(row, "delta row"));
    desc.delta.emplace_back(state, std::move(rows));
  }
  return desc;
}

ConcurrentGame parse_game(const Json& doc) { return ConcurrentGame::validate(parse_game_description(doc)); }

Json game_to_json(const ConcurrentGame& game) {
  const auto desc = game.describe();
  Json doc;
  doc["states"] = desc.states;
  doc["target"] = desc.target;
  doc["actions_a"] = desc.actions_a;
  doc["actions_b"] = desc.actions_b;
  Json nature = Json::object();
  for (const auto& [name, row] : desc.nature) {
    Json r = Json::object();
    for (const auto& [state, p] : row) r[state] = p;
    nature[name] = std::move(r);
  }
  doc["nature"] = std::move(nature);
  Json delta = Json::object();
  for (const auto& [state, table] : desc.delta) delta[state] = table;
  doc["delta"] = std::move(delta);
  return doc;
}

GameForm parse_game_form(const Json& doc) {
  auto outcomes = string_list(require(doc, "outcomes"), "outcomes");
  const auto& table = require(doc, "table");
  if (!table.is_array() || table.empty()) bad_input("table must be a non-empty matrix");
  const std::size_t rows = table.size();
  std::size_t cols = 0;
  std::vector<std::size_t> cells;
  for (const auto& row : table) {
    auto names = string_list(row, "table row");
    if (cols == 0) cols = names.size();
    if (names.size() != cols) throw Error(ErrorCode::kDimensionMismatch, "ragged game form table");
    for (const auto& n : names) {
      auto it = std::find(outcomes.begin(), outcomes.end(), n);
      if (it == outcomes.end()) throw Error(ErrorCode::kUnknownIdentifier, "unknown outcome '" + n + "'");
      cells.push_back(static_cast<std::size_t>(it - outcomes.begin()));
    }
  }
  return GameForm(std::move(outcomes), rows, cols, std::move(cells));
}

Json game_form_to_json(const GameForm& form) {
  Json doc;
  doc["outcomes"] = form.outcome_names();
  Json table = Json::array();
  for (std::size_t a = 0; a < form.rows(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < form.cols(); ++b) row.push_back(form.outcome_names()[form.outcome(a, b)]);
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  return doc;
}

PositionalStrategy parse_strategy(const Json& doc, const ConcurrentGame& game) {
  PositionalStrategy s;
  const auto& player = require(doc, "player");
  if (!player.is_string()) bad_input("player must be \"A\" or \"B\"");
  const auto p = player.get<std::string>();
  if (p == "A" || p == "a") {
    s.player = Player::kA;
  } else if (p == "B" || p == "b") {
    s.player = Player::kB;
  } else {
    bad_input("player must be \"A\" or \"B\"");
  }
  const auto& choices = require(doc, "choices");
  if (!choices.is_object()) bad_input("choices must be an object");
  const std::size_t n = game.action_count(s.player);
  s.choices.assign(game.state_count(), MixedAction{});
  for (const auto& [state, choice] : choices.items()) {
    auto q = game.state_index(state);
    if (!q) throw Error(ErrorCode::kUnknownIdentifier, "strategy names unknown state '" + state + "'");
    if (!choice.is_object()) bad_input("choice at '" + state + "' must be an object");
    MixedAction act(n, 0.0);
    for (const auto& [action, prob] : choice.items()) {
      auto a = game.action_index(s.player, action);
      if (!a) throw Error(ErrorCode::kUnknownIdentifier, "strategy names unknown action '" + action + "'");
      act[*a] = parse_probability(prob);
    }
    s.choices[*q] = std::move(act);
  }
  for (std::size_t q = 0; q < s.choices.size(); ++q) {
    if (s.choices[q].empty()) bad_input("strategy has no choice for state '" + game.state_names()[q] + "'");
  }
  validate_strategy(game, s);
  return s;
}

Json strategy_to_json(const PositionalStrategy& strategy, const ConcurrentGame& game) {
  Json doc;
  doc["player"] = strategy.player == Player::kA ? "A" : "B";
  Json choices = Json::object();
  const auto& actions = game.action_names(strategy.player);
  for (std::size_t q = 0; q < strategy.choices.size(); ++q) {
    Json c = Json::object();
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (strategy.choices[q][a] > 0.0) c[actions[a]] = canonical_number(strategy.choices[q][a]);
    }
    choices[game.state_names()[q]] = std::move(c);
  }
  doc["choices"] = std::move(choices);
  return doc;
}

PartialValuation parse_partial_valuation(const Json& doc, const GameForm& form) {
  PartialValuation alpha;
  const std::size_t n = form.outcome_count();
  alpha.values.assign(n, 0.0);
  alpha.unvalued.assign(n, false);
  std::vector<bool> seen(n, false);
  auto mark = [&](const std::string& name) -> std::size_t {
    auto o = form.outcome_index(name);
    if (!o) throw Error(ErrorCode::kUnknownIdentifier, "unknown outcome '" + name + "'");
    if (seen[*o]) bad_input("outcome '" + name + "' listed twice in the partial valuation");
    seen[*o] = true;
    return *o;
  };
  if (doc.contains("defined")) {
    const auto& defined = doc.at("defined");
    if (!defined.is_object()) bad_input("defined must be an object");
    for (const auto& [name, value] : defined.items()) alpha.values[mark(name)] = parse_probability(value);
  }
  if (doc.contains("unvalued")) {
    for (const auto& name : string_list(doc.at("unvalued"), "unvalued")) alpha.unvalued[mark(name)] = true;
  }
  for (std::size_t o = 0; o < n; ++o) {
    if (!seen[o]) bad_input("outcome '" + form.outcome_names()[o] + "' is neither defined nor unvalued");
  }
  validate_partial_valuation(form, alpha);
  return alpha;
}

Json partial_valuation_to_json(const PartialValuation& alpha, const GameForm& form) {
  Json doc;
  Json defined = Json::object();
  Json unvalued = Json::array();
  for (std::size_t o = 0; o < form.outcome_count(); ++o) {
    if (alpha.unvalued[o]) {
      unvalued.push_back(form.outcome_names()[o]);
    } else {
      defined[form.outcome_names()[o]] = canonical_number(alpha.values[o]);
    }
  }
  doc["defined"] = std::move(defined);
  doc["unvalued"] = std::move(unvalued);
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad_input("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

double canonical_number(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

}  // namespace reachgame::io
