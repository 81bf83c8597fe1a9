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

#include "mperobust/cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "mperobust/bounds.h"
#include "mperobust/errors.h"
#include "mperobust/experiments.h"
#include "mperobust/game_engine.h"
#include "mperobust/io.h"
#include "mperobust/ipm.h"
#include "mperobust/mpe_solver.h"

namespace mperobust {
namespace {

std::string Num(double x) { return fmt::format("{:.17g}", x); }

MarkovGame LoadGame(const std::string& path) {
  return parse_game(read_text_file(path));
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw ParseError(path.string(), "cannot write file");
}

int Validate(const std::string& path, std::ostream& out) {
  const std::string text = read_text_file(path);
  try {
    parse_game(text);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) out << v << '\n';
    return kExitDomain;
  }
  out << "valid\n";
  return kExitOk;
}

int Certify(const std::string& game_path, const std::string& profile_path,
            double tol, std::ostream& out) {
  const MarkovGame game = LoadGame(game_path);
  const StrategyProfile profile =
      parse_profile(read_text_file(profile_path));
  const auto cert = certify_profile(game, profile, tol);
  const auto alpha = cert.alpha();
  out << "player,alpha,raw_alpha\n";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out << i + 1 << ',' << Num(alpha[i]) << ',' << Num(cert.raw_alpha[i])
        << '\n';
  }
  return kExitOk;
}

int Bound(const std::string& game_path, const std::string& approx_path,
          const std::string& ipm, const std::string& values_path,
          std::ostream& out, std::ostream& err) {
  const MarkovGame g = LoadGame(game_path);
  const MarkovGame g_hat = LoadGame(approx_path);
  const IpmKind kind =
      ipm == "tv" ? IpmKind::kTotalVariation : IpmKind::kWasserstein;
  std::vector<ValueFunction> v_hat;
  if (!values_path.empty()) {
    v_hat = parse_values(read_text_file(values_path));
  } else {
    const SolveResult solved = solve_mpe(g_hat);
    fmt::print(err, "solved approximate game: max alpha {} ({})\n",
               Num(solved.certificate.max_alpha()),
               solved.converged ? "converged" : "not converged");
    v_hat = solved.values;
  }
  const auto report = robustness_report(g, g_hat, kind, v_hat);
  out << "quantity,player,value\n";
  out << "ipm,all," << ipm_name(kind) << '\n';
  out << "epsilon,all," << Num(report.epsilon) << '\n';
  out << "delta,all," << Num(report.delta) << '\n';
  if (report.lipschitz) {
    out << "L_r,all," << Num(report.lipschitz->reward) << '\n';
    out << "L_P,all," << Num(report.lipschitz->transition) << '\n';
  }
  auto rows = [&](const char* name, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << name << ',' << i + 1 << ',' << Num(v[i]) << '\n';
    }
  };
  rows("delta_term", report.delta_term);
  rows("rho", report.rho);
  rows("alpha_instance", report.alpha_instance);
  rows("alpha_ipm", report.alpha_ipm);
  for (std::size_t i = 0; i < report.alpha_structural.size(); ++i) {
    const auto& c = report.alpha_structural[i];
    out << "alpha_structural," << i + 1 << ',' << (c ? Num(*c) : "n/a") << '\n';
  }
  return kExitOk;
}

int Solve(const std::string& game_path, const SolveOptions& options,
          const std::string& out_path, std::ostream& out, std::ostream& err) {
  const MarkovGame game = LoadGame(game_path);
  const SolveResult result = solve_mpe(game, options);
  std::string cert = "\"certificate\": {\"alpha\": [";
  const auto alpha = result.certificate.alpha();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    cert += (i ? ", " : "") + format_number(alpha[i]);
  }
  cert += fmt::format("], \"converged\": {}, \"iterations\": {}}}",
                      result.converged ? "true" : "false", result.iterations);
  const std::string doc = serialize_profile(result.profile, cert);
  if (out_path.empty()) {
    out << doc;
  } else {
    WriteFile(out_path, doc);
  }
  fmt::print(err, "max alpha {} after {} iterations ({})\n",
             Num(result.certificate.max_alpha()), result.iterations,
             result.converged ? "converged" : "not converged");
  return result.converged ? kExitOk : kExitDomain;
}

struct SampleSizeArgs {
  double alpha = 0.0;
  double p = 0.0;
  double span = 0.0;
  std::size_t states = 0;
  std::vector<std::size_t> actions;
  std::size_t players = 0;
  double gamma = 0.0;
};

int SampleSize(const SampleSizeArgs& a, std::ostream& out) {
  const std::size_t players = a.players ? a.players : a.actions.size();
  if (players != a.actions.size()) {
    throw DomainError(fmt::format("--players {} but {} action counts given",
                                  players, a.actions.size()));
  }
  out << sample_size_game(a.alpha, a.p, a.span, a.states, a.actions, players,
                          a.gamma)
      << '\n';
  return kExitOk;
}

struct ExperimentArgs {
  std::string game;
  std::uint64_t n = 0;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::string out;
  std::string summary;
  std::size_t threads = 0;
  double tol = 1e-8;
};

int Experiment(const ExperimentArgs& a, std::ostream& err) {
  const MarkovGame game = LoadGame(a.game);
  ExperimentOptions options;
  options.threads = a.threads;
  options.solver_tol = a.tol;
  const auto records = run_experiments(game, a.n, a.trials, a.seed, options);
  std::ostringstream trials_csv, summary_csv;
  write_records_csv(trials_csv, records, game.num_players());
  const auto summary = summarize(records);
  write_summary_csv(summary_csv, summary);
  std::filesystem::path summary_path = a.summary;
  if (summary_path.empty()) {
    summary_path = a.out;
    summary_path.replace_filename(summary_path.stem().string() + "_summary" +
                                  summary_path.extension().string());
  }
  WriteFile(a.out, trials_csv.str());
  WriteFile(summary_path, summary_csv.str());
  fmt::print(err, "{} trials written to {}, summary to {}\n", records.size(),
             a.out, summary_path.string());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Robustness and sample complexity of Markov perfect equilibria"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string game_path, second_path, values_path, out_path, ipm = "tv";
  double tol = kDefaultTolerance;

  auto* validate = app.add_subcommand("validate", "Check a game file");
  validate->add_option("game", game_path, "Game file")->required();
  validate->callback([&] { action = [&] { return Validate(game_path, out); }; });

  auto* certify = app.add_subcommand(
      "certify", "Certify a strategy profile as an alpha-MPE");
  certify->add_option("game", game_path, "Game file")->required();
  certify->add_option("profile", second_path, "Profile file")->required();
  certify->add_option("--tol", tol, "Optimal-value tolerance")
      ->check(CLI::PositiveNumber);
  certify->callback([&] {
    action = [&] { return Certify(game_path, second_path, tol, out); };
  });

  auto* bound = app.add_subcommand(
      "bound", "Robustness bounds for an MPE of an approximate game");
  bound->add_option("game", game_path, "Original game file")->required();
  bound->add_option("approx", second_path, "Approximate game file")
      ->required();
  bound->add_option("--ipm", ipm, "Transition metric")
      ->check(CLI::IsMember({"tv", "w1"}));
  bound->add_option("--values", values_path,
                    "Value functions of the approximate game's MPE; solved "
                    "for when omitted");
  bound->callback([&] {
    action = [&] {
      return Bound(game_path, second_path, ipm, values_path, out, err);
    };
  });

  SolveOptions solve_options;
  auto* solve = app.add_subcommand("solve", "Compute an MPE of a two-player game");
  solve->add_option("game", game_path, "Game file")->required();
  solve->add_option("--tol", solve_options.tol, "Certification target")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solve_options.max_iter,
                    "Value-iteration sweeps per attempt")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", solve_options.seed, "Seed for restarts");
  solve->add_option("--out", out_path, "Write the profile here, not stdout");
  solve->callback([&] {
    action = [&] {
      return Solve(game_path, solve_options, out_path, out, err);
    };
  });

  SampleSizeArgs ss;
  auto* sample = app.add_subcommand(
      "sample-size", "Samples per state-action pair for an alpha-MPE");
  sample->add_option("--alpha", ss.alpha, "Target alpha")->required();
  sample->add_option("--p", ss.p, "Failure probability")->required();
  sample->add_option("--span", ss.span, "Span of the rewards")->required();
  sample->add_option("--states", ss.states, "Number of states")->required();
  sample->add_option("--actions", ss.actions, "Action count per player")
      ->required();
  sample->add_option("--players", ss.players,
                     "Number of players (defaults to the number of --actions)");
  sample->add_option("--gamma", ss.gamma, "Discount factor")->required();
  sample->callback([&] { action = [&] { return SampleSize(ss, out); }; });

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand(
      "experiment", "Generative-model experiments on a two-player game");
  experiment->add_option("game", ex.game, "True game file")->required();
  experiment->add_option("--n", ex.n, "Samples per state-action pair")
      ->required();
  experiment->add_option("--trials", ex.trials, "Number of trials");
  experiment->add_option("--seed", ex.seed, "Master seed");
  experiment->add_option("--out", ex.out, "Per-trial CSV")->required();
  experiment->add_option("--summary", ex.summary,
                         "Summary CSV (default: <out>_summary.csv)");
  experiment->add_option("--threads", ex.threads, "Worker threads (0: all)");
  experiment->add_option("--tol", ex.tol, "Solver certification target")
      ->check(CLI::PositiveNumber);
  experiment->callback([&] { action = [&] { return Experiment(ex, err); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "invalid input:\n";
    for (const auto& v : e.violations()) err << "  " << v << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace mperobust
