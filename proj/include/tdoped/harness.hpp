// Copyright 2026 The tdoped Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdoped/doped.hpp"
#include "tdoped/learner.hpp"

namespace tdoped {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct ExperimentConfig {
  std::string kind = "learn";  // prepare | compress | learn | test | sweep
  int n = 4;
  int t = 1;  // number of non-Gaussian gates
  int kappa = 4;
  double eps = 0.25;
  double delta = 1.0 / 3.0;
  double eps_a = 0.0;
  double eps_b = 0.4;
  std::uint64_t seed = 1;
  std::string mode = "exact";  // exact | sampled
  int trials = 1;
  bool haar = true;
  double c_tom = 1.0;
  std::optional<std::uint64_t> corr_shots;  // per commuting group
  std::optional<std::uint64_t> loop_shots;
  std::optional<std::uint64_t> tom_shots;
  std::optional<std::uint64_t> test_shots;  // tester total
  std::string output;
  std::string csv;
  bool timing = false;

  // Sweep grid; unset axes fall back to the scalar field, an explicitly
  // empty axis makes the grid empty.
  std::string sweep_kind = "learn";
  std::optional<std::vector<int>> grid_n;
  std::optional<std::vector<int>> grid_t;
  std::optional<std::vector<int>> grid_kappa;
  std::optional<std::vector<double>> grid_eps;
};

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Throws PreconditionError naming the violated condition.
void validate(const ExperimentConfig& c);

struct ResultDocument {
  nlohmann::json document;
  std::string csv;
  bool accepted = true;
};

ResultDocument run(const ExperimentConfig& c);
ResultDocument sweep(const ExperimentConfig& c);

/// Compression level used by the learn and test kinds.
int learn_level(const ExperimentConfig& c);
int test_level(const ExperimentConfig& c);

/// The random circuit of a given cell and trial, as drawn by run().
DopedCircuit trial_circuit(const ExperimentConfig& c, int cell, int trial);
/// Reproduces the learner output of a run() trial.
LearnResult learn_trial(const ExperimentConfig& c, int cell, int trial);
LearnBudget trial_budget(const ExperimentConfig& c);

std::string csv_header();

}  // namespace tdoped
