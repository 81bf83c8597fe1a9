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

#include "mperobust/io.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "mperobust/errors.h"

namespace mperobust {
namespace {

using nlohmann::json;

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + byte, '\n');
    throw ParseError(fmt::format("line {}", line), e.what());
  }
}

const json& Field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(name, "missing field");
  return *it;
}

double Number(const json& v, const std::string& locus) {
  if (!v.is_number()) throw ParseError(locus, "expected a number");
  return v.get<double>();
}

std::vector<double> NumberArray(const json& v, const std::string& locus) {
  if (!v.is_array()) throw ParseError(locus, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(Number(v[k], fmt::format("{}[{}]", locus, k)));
  }
  return out;
}

std::vector<std::vector<double>> NumberMatrix(const json& v,
                                              const std::string& locus) {
  if (!v.is_array()) throw ParseError(locus, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(NumberArray(v[k], fmt::format("{}[{}]", locus, k)));
  }
  return out;
}

std::vector<std::string> StringArray(const json& v, const std::string& locus) {
  if (!v.is_array() || v.empty()) {
    throw ParseError(locus, "expected a nonempty array of strings");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_string()) {
      throw ParseError(fmt::format("{}[{}]", locus, k), "expected a string");
    }
    out.push_back(v[k].get<std::string>());
    if (!seen.insert(out.back()).second) {
      throw ParseError(fmt::format("{}[{}]", locus, k),
                       "duplicate label \"" + out.back() + "\"");
    }
  }
  return out;
}

// "state|a1,a2,..." keys in storage order.
std::vector<std::string> PairKeys(
    const std::vector<std::string>& states,
    const std::vector<std::vector<std::string>>& actions) {
  std::vector<std::string> joint = {""};
  for (std::size_t i = 0; i < actions.size(); ++i) {
    std::vector<std::string> next;
    for (const auto& prefix : joint) {
      for (const auto& a : actions[i]) {
        next.push_back(i == 0 ? a : prefix + "," + a);
      }
    }
    joint = std::move(next);
  }
  std::vector<std::string> keys;
  for (const auto& s : states) {
    for (const auto& j : joint) keys.push_back(s + "|" + j);
  }
  return keys;
}

// Checks that `obj` has exactly the expected keys.
void CheckKeys(const json& obj, const std::vector<std::string>& keys,
               const std::string& locus) {
  if (!obj.is_object()) throw ParseError(locus, "expected an object");
  for (const auto& key : keys) {
    if (!obj.contains(key)) {
      throw ParseError(locus, "missing key \"" + key + "\"");
    }
  }
  if (obj.size() != keys.size()) {
    const std::set<std::string> expected(keys.begin(), keys.end());
    for (const auto& item : obj.items()) {
      if (!expected.count(item.key())) {
        throw ParseError(locus, "unexpected key \"" + item.key() + "\"");
      }
    }
  }
}

std::string NumberList(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ", ";
    out += format_number(values[k]);
  }
  return out + "]";
}

std::string StringList(const std::vector<std::string>& values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ", ";
    out += json(values[k]).dump();
  }
  return out + "]";
}

}  // namespace

std::string format_number(double value) { return json(value).dump(); }

MarkovGame parse_game(std::string_view text) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) throw ParseError("", "game document must be an object");

  const json& players_field = Field(doc, "players");
  if (!players_field.is_number_integer() || players_field.get<long long>() < 1) {
    throw ParseError("players", "expected a positive integer");
  }
  const auto num_players = players_field.get<std::size_t>();
  auto states = StringArray(Field(doc, "states"), "states");

  const json& actions_field = Field(doc, "actions");
  if (!actions_field.is_array() || actions_field.size() != num_players) {
    throw ParseError("actions", fmt::format("expected {} action lists",
                                            num_players));
  }
  std::vector<std::vector<std::string>> actions;
  for (std::size_t i = 0; i < num_players; ++i) {
    actions.push_back(
        StringArray(actions_field[i], fmt::format("actions[{}]", i)));
  }
  const double gamma = Number(Field(doc, "gamma"), "gamma");

  const auto keys = PairKeys(states, actions);
  const json& trans_field = Field(doc, "transitions");
  CheckKeys(trans_field, keys, "transitions");
  std::vector<double> transitions;
  transitions.reserve(keys.size() * states.size());
  for (const auto& key : keys) {
    const std::string locus = "transitions[\"" + key + "\"]";
    auto row = NumberArray(trans_field.at(key), locus);
    if (row.size() != states.size()) {
      throw ParseError(locus, fmt::format("expected {} probabilities, got {}",
                                          states.size(), row.size()));
    }
    transitions.insert(transitions.end(), row.begin(), row.end());
  }

  const json& rew_field = Field(doc, "rewards");
  if (!rew_field.is_array() || rew_field.size() != num_players) {
    throw ParseError("rewards",
                     fmt::format("expected {} reward tables", num_players));
  }
  std::vector<std::vector<double>> rewards(num_players);
  for (std::size_t i = 0; i < num_players; ++i) {
    const std::string locus = fmt::format("rewards[{}]", i);
    CheckKeys(rew_field[i], keys, locus);
    for (const auto& key : keys) {
      rewards[i].push_back(
          Number(rew_field[i].at(key), locus + "[\"" + key + "\"]"));
    }
  }

  std::optional<StateMetric> metric;
  if (auto it = doc.find("metric"); it != doc.end()) {
    auto rows = NumberMatrix(*it, "metric");
    if (rows.size() != states.size()) {
      throw ParseError("metric", "expected one row per state");
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].size() != states.size()) {
        throw ParseError(fmt::format("metric[{}]", k),
                         "expected one entry per state");
      }
    }
    metric.emplace(rows);
  }

  MarkovGame game(std::move(states), std::move(actions),
                  std::move(transitions), std::move(rewards), gamma,
                  std::move(metric));
  if (auto violations = validate_game(game); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return game;
}

std::string serialize_game(const MarkovGame& game) {
  const auto keys = PairKeys(game.state_names(), game.action_sets());
  std::string out = "{\n";
  out += fmt::format("  \"players\": {},\n", game.num_players());
  out += "  \"states\": " + StringList(game.state_names()) + ",\n";
  out += "  \"actions\": [";
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (i > 0) out += ", ";
    out += StringList(game.action_sets()[i]);
  }
  out += "],\n";
  out += "  \"gamma\": " + format_number(game.discount()) + ",\n";
  out += "  \"transitions\": {\n";
  const std::size_t nj = game.num_joint_actions();
  for (std::size_t k = 0; k < keys.size(); ++k) {
    out += "    " + json(keys[k]).dump() + ": " +
           NumberList(game.transition_row(k / nj, k % nj)) +
           (k + 1 < keys.size() ? ",\n" : "\n");
  }
  out += "  },\n";
  out += "  \"rewards\": [\n";
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out += "    {\n";
    for (std::size_t k = 0; k < keys.size(); ++k) {
      out += "      " + json(keys[k]).dump() + ": " +
             format_number(game.rewards(i)[k]) +
             (k + 1 < keys.size() ? ",\n" : "\n");
    }
    out += i + 1 < game.num_players() ? "    },\n" : "    }\n";
  }
  out += "  ]";
  if (game.metric()) {
    out += ",\n  \"metric\": [";
    const auto rows = game.metric()->ToRows();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k > 0) out += ", ";
      out += NumberList(rows[k]);
    }
    out += "]";
  }
  out += "\n}\n";
  return out;
}

StrategyProfile parse_profile(std::string_view text) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) {
    throw ParseError("", "profile document must be an object");
  }
  const json& strategies = Field(doc, "strategies");
  if (!strategies.is_array() || strategies.empty()) {
    throw ParseError("strategies", "expected one strategy per player");
  }
  if (auto it = doc.find("players"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<std::size_t>() != strategies.size()) {
      throw ParseError("players", "does not match the number of strategies");
    }
  }
  std::vector<MarkovStrategy> out;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const std::string locus = fmt::format("strategies[{}]", i);
    auto rows = NumberMatrix(strategies[i], locus);
    if (rows.empty() || rows.front().empty()) {
      throw ParseError(locus, "strategy must have at least one row");
    }
    for (std::size_t s = 0; s < rows.size(); ++s) {
      if (rows[s].size() != rows.front().size()) {
        throw ParseError(fmt::format("{}[{}]", locus, s),
                         "rows have different lengths");
      }
    }
    out.push_back(MarkovStrategy::FromRows(rows));
  }
  return StrategyProfile(std::move(out));
}

std::string serialize_profile(const StrategyProfile& profile,
                              std::string_view extra_json) {
  std::string out = "{\n";
  out += fmt::format("  \"players\": {},\n", profile.num_players());
  out += "  \"strategies\": [\n";
  for (std::size_t i = 0; i < profile.num_players(); ++i) {
    out += "    [";
    const auto rows = profile[i].ToRows();
    for (std::size_t s = 0; s < rows.size(); ++s) {
      if (s > 0) out += ", ";
      out += NumberList(rows[s]);
    }
    out += i + 1 < profile.num_players() ? "],\n" : "]\n";
  }
  out += "  ]";
  if (!extra_json.empty()) {
    out += ",\n  ";
    out += extra_json;
  }
  out += "\n}\n";
  return out;
}

std::vector<ValueFunction> parse_values(std::string_view text) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) throw ParseError("", "value document must be an object");
  std::vector<ValueFunction> out;
  for (auto& row : NumberMatrix(Field(doc, "values"), "values")) {
    out.emplace_back(std::move(row));
  }
  return out;
}

std::string serialize_values(const std::vector<ValueFunction>& values) {
  std::string out = "{\"values\": [";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += NumberList(values[i].view());
  }
  return out + "]}\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace mperobust
