// Copyright 2026 The mperobust Authors.
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

#ifndef MPEROBUST_IO_H_
#define MPEROBUST_IO_H_

// JSON documents for games, strategy profiles and per-player value functions.
//
// Game document:
//   {"players": 2, "states": ["1", ...], "actions": [["1","2"], ["1","2"]],
//    "gamma": 0.9,
//    "transitions": {"1|1,1": [0.4, 0.4, 0.2], ...},
//    "rewards": [{"1|1,1": 1.0, ...}, {...}],
//    "metric": [[0, 1, 2], ...]}            (optional)
// Keys are "state|a1,a2,..." in joint-action order.
//
// Profile document: {"players": 2, "strategies": [[[p, ...], ...], ...]},
// one row per state for each player. Unknown top-level fields are ignored.
//
// Value document: {"values": [[v(s1), ...], ...]}, one array per player.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mperobust/game.h"

namespace mperobust {

// Throws ParseError on malformed text and ValidationError if the game parses
// but violates an invariant.
MarkovGame parse_game(std::string_view text);
std::string serialize_game(const MarkovGame& game);

StrategyProfile parse_profile(std::string_view text);
// `extra_json` is spliced in as additional top-level members, e.g. a
// certificate. It must be empty or a comma-free-terminated member list.
std::string serialize_profile(const StrategyProfile& profile,
                              std::string_view extra_json = {});

std::vector<ValueFunction> parse_values(std::string_view text);
std::string serialize_values(const std::vector<ValueFunction>& values);

// Reads a whole file; throws ParseError with the path as locus on failure.
std::string read_text_file(const std::filesystem::path& path);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace mperobust

#endif  // MPEROBUST_IO_H_
