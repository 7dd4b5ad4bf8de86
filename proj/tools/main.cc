// Copyright 2026 The lmimd Authors
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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char** argv) {
  using lmimd::cli::Mode;

  CLI::App app{"Fluid simulator for the Linear MIMD congestion controller"};
  lmimd::cli::RunConfig config;
  std::string mode = "simulate";
  std::uint64_t seed = 0;

  app.add_option("--scenario", config.scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", config.out, "Output directory")
      ->capture_default_str();
  app.add_option("--mode", mode, "simulate | bwtest | audit | opt")
      ->check(CLI::IsMember({"simulate", "bwtest", "audit", "opt"}))
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", seed, "Override the loss policy seed");
  app.add_option("--sweep-epsilon", config.sweep_epsilon,
                 "Comma-separated epsilon values")
      ->delimiter(',');
  app.add_option("--sweep-duration", config.sweep_duration,
                 "Comma-separated duration multipliers")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lmimd::cli::kExitValidation;
  }

  static const std::map<std::string, Mode> kModes = {
      {"simulate", Mode::kSimulate},
      {"bwtest", Mode::kBandwidthTest},
      {"audit", Mode::kAudit},
      {"opt", Mode::kOpt}};
  config.mode = kModes.at(mode);
  if (*seed_opt) config.seed = seed;

  return lmimd::cli::Run(config, std::cout, std::cerr);
}
