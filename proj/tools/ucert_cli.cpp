// Copyright 2026 The ucert Authors
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

// ucert: entropic uncertainty bounds from effective anti-commutators.
//
// Exit codes: 0 success, 1 usage, 2 input, 3 infeasible, 4 violation.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucert/io.hpp"
#include "ucert/ucert.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitViolation = 4;

constexpr std::uint64_t kDefaultSeed = 42;

using ucert::io::json;

/// Relative output paths resolve against $UCERT_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (const char* dir = std::getenv("UCERT_OUTPUT_DIR"); dir != nullptr && p.is_relative()) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

template <typename Writer>
void emit(const std::string& out_path, Writer&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  const auto path = resolve_output(out_path);
  std::ofstream out(path);
  if (!out) throw ucert::InputError("cannot write '" + path.string() + "'");
  write(out);
}

void emit_json(const std::string& out_path, const json& j) {
  emit(out_path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::vector<ucert::RenyiOrder> parse_orders(const std::vector<std::string>& specs) {
  std::vector<ucert::RenyiOrder> orders;
  for (const auto& s : specs) orders.push_back(ucert::io::parse_order(s));
  return orders;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic uncertainty bounds from effective anti-commutators"};
  app.require_subcommand(1);

  std::string t_path;
  std::string g_path;
  std::string out_path;
  std::string alpha = "shannon";
  std::vector<std::string> alphas;
  double epsilon = 0.0;
  int points = 200;
  int grid = 51;
  std::size_t samples = 100000;
  int m = 0;
  std::size_t rounds = 100000;
  bool exact = false;
  std::size_t trials = 10000;
  std::size_t max_m = 5;
  std::uint64_t seed = kDefaultSeed;

  auto* bound_cmd = app.add_subcommand("bound", "Bound H_alpha(X|K) from an anti-commutation matrix");
  bound_cmd->add_option("--t", t_path, "JSON file {\"m\": M, \"entries\": [[...]]}")->required();
  bound_cmd->add_option("--alpha", alpha, "Order: shannon, inf, or alpha > 1 outside (1.5, 2)");

  auto* ellipse_cmd = app.add_subcommand("ellipse", "Boundary of the allowed (g1, g2) region");
  ellipse_cmd->add_option("--epsilon", epsilon, "Effective anti-commutator in [-1, 1]")->required();
  ellipse_cmd->add_option("--points", points, "Number of boundary samples (>= 3)");
  ellipse_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* compare_cmd = app.add_subcommand("compare", "Table of q_MU, q_ac and q_opt over the overlap");
  compare_cmd->add_option("--grid", grid, "Number of overlaps in [1/2, 1] (>= 2)");
  compare_cmd->add_option("--samples", samples, "State samples per q_opt evaluation");
  compare_cmd->add_option("--seed", seed, "Random seed");
  compare_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* certify_cmd = app.add_subcommand("certify", "Simulate device-independent certification");
  certify_cmd->add_option("--m", m, "Number of settings (>= 2)")->required();
  certify_cmd->add_option("--rounds", rounds, "Rounds per correlator");
  certify_cmd->add_option("--seed", seed, "Random seed");
  certify_cmd->add_option("--alpha", alphas, "Order(s) to bound (repeatable)");
  certify_cmd->add_flag("--exact", exact, "Use exact correlators (infinite statistics)");
  certify_cmd->add_option("--out", out_path, "JSON output path (stdout if omitted)");

  auto* sound_cmd = app.add_subcommand("soundness", "Check the bounds on random realizable instances");
  sound_cmd->add_option("--trials", trials, "Number of random instances");
  sound_cmd->add_option("--max-m", max_m, "Largest number of observables");
  sound_cmd->add_option("--seed", seed, "Random seed");
  sound_cmd->add_option("--alpha", alphas, "Order(s) to check (repeatable)");
  sound_cmd->add_option("--out", out_path, "JSON output path (stdout if omitted)");

  auto* construct_cmd = app.add_subcommand("construct", "Realize (g, T) as a state and observables");
  construct_cmd->add_option("--g", g_path, "JSON file {\"m\": M, \"g\": [...]}")->required();
  construct_cmd->add_option("--t", t_path, "JSON file {\"m\": M, \"entries\": [[...]]}")->required();
  construct_cmd->add_option("--out", out_path, "JSON output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) {
      const auto order = ucert::io::parse_order(alpha);
      const auto t = ucert::io::anticommutation_from_json(ucert::io::read_json_file(t_path));
      std::cout << ucert::io::bound_to_json(ucert::bound(order, t)).dump(2) << '\n';
    } else if (ellipse_cmd->parsed()) {
      if (!(std::abs(epsilon) <= 1.0)) throw ucert::io::UsageError("--epsilon must lie in [-1, 1]");
      if (points < 3) throw ucert::io::UsageError("--points must be at least 3");
      const auto pts = ucert::ellipse_boundary(epsilon, points);
      emit(out_path, [&](std::ostream& os) { ucert::io::write_ellipse_csv(os, pts); });
    } else if (compare_cmd->parsed()) {
      if (grid < 2) throw ucert::io::UsageError("--grid must be at least 2");
      if (samples < 2) throw ucert::io::UsageError("--samples must be at least 2");
      const auto rows =
          ucert::compare_curve(ucert::overlap_grid(static_cast<std::size_t>(grid)), seed, samples);
      emit(out_path, [&](std::ostream& os) { ucert::io::write_compare_csv(os, rows); });
    } else if (certify_cmd->parsed()) {
      if (m < 2) throw ucert::io::UsageError("--m must be at least 2");
      if (!exact && rounds < 1) throw ucert::io::UsageError("--rounds must be positive");
      const auto orders = parse_orders(alphas.empty() ? std::vector<std::string>{"shannon"} : alphas);
      const auto rep = ucert::certify_pipeline(m, exact ? 0 : rounds, seed, orders);
      emit_json(out_path, ucert::io::certification_to_json(rep));
    } else if (sound_cmd->parsed()) {
      if (trials < 1) throw ucert::io::UsageError("--trials must be positive");
      if (max_m < 1) throw ucert::io::UsageError("--max-m must be positive");
      const auto orders = parse_orders(
          alphas.empty() ? std::vector<std::string>{"shannon", "1.2", "1.5", "2", "3", "inf"}
                         : alphas);
      const auto rep = ucert::verify_soundness(trials, max_m, orders, seed);
      emit_json(out_path, ucert::io::soundness_to_json(rep));
      if (!rep.passed()) {
        std::cerr << "soundness: " << rep.failures.size() << " violation(s)\n";
        return kExitViolation;
      }
    } else if (construct_cmd->parsed()) {
      const auto g = ucert::io::expectation_from_json(ucert::io::read_json_file(g_path));
      const auto t = ucert::io::anticommutation_from_json(ucert::io::read_json_file(t_path));
      const auto real = ucert::construct_realization(g, t);
      emit_json(out_path, ucert::io::realization_to_json(real));
    }
  } catch (const ucert::io::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ucert::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ucert::UnsupportedOrderError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
