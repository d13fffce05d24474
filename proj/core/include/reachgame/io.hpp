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

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "reachgame/game.hpp"

namespace reachgame::io {

using Json = nlohmann::ordered_json;

// Accepts a JSON number or an exact fraction string such as "3/4".
double parse_probability(const Json& value);

// Canonical game file:
//   {"states":[...], "target":"...", "actions_a":[...], "actions_b":[...],
//    "nature":{"d":{"q":p,...},...}, "delta":{"q":[["d",...],...],...}}
GameDescription parse_game_description(const Json& doc);
ConcurrentGame parse_game(const Json& doc);
Json game_to_json(const ConcurrentGame& game);

// {"outcomes":[...], "table":[["x","y"],["y","z"]]}
GameForm parse_game_form(const Json& doc);
Json game_form_to_json(const GameForm& form);

// {"player":"A", "choices":{"q0":{"a1":0.9,"a2":0.1},...}}
// Actions missing from a choice get probability 0.
PositionalStrategy parse_strategy(const Json& doc, const ConcurrentGame& game);
Json strategy_to_json(const PositionalStrategy& strategy, const ConcurrentGame& game);

// {"defined":{"y":1.0}, "unvalued":["x"]}; every outcome must appear in
// exactly one of the two.
PartialValuation parse_partial_valuation(const Json& doc, const GameForm& form);
Json partial_valuation_to_json(const PartialValuation& alpha, const GameForm& form);

// Reads and parses a JSON file; kFileNotFound / kInvalidInput on failure.
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Rounds to 12 significant digits so that dumped JSON is canonical.
double canonical_number(double x);

}  // namespace reachgame::io
