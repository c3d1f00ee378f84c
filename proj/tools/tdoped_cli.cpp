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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tdoped/errors.hpp"
#include "tdoped/harness.hpp"

namespace {

using tdoped::ExperimentConfig;
using tdoped::PreconditionError;

constexpr int kExitPrecondition = 2;
constexpr int kExitStatistical = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
}

template <typename T>
std::optional<std::vector<T>> parse_axis(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  std::vector<T> out;
  std::stringstream ss(*text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      if constexpr (std::is_same_v<T, int>) {
        out.push_back(std::stoi(item, &used));
      } else {
        out.push_back(std::stod(item, &used));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError("bad grid value '" + item + "'");
    }
  }
  return out;
}

void add_common(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--n", c.n, "Number of qubits (modes)");
  sub->add_option("--t", c.t, "Number of non-Gaussian gates");
  sub->add_option("--kappa", c.kappa, "Majorana locality of each non-Gaussian gate");
  sub->add_option("--eps", c.eps, "Target trace distance");
  sub->add_option("--delta", c.delta, "Failure probability");
  sub->add_option("--eps-a", c.eps_a, "Tester closeness parameter");
  sub->add_option("--eps-b", c.eps_b, "Tester farness parameter");
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option("--mode", c.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  sub->add_option("--trials", c.trials, "Number of trials");
  sub->add_option("--c-tom", c.c_tom, "Tomography budget constant");
  sub->add_option("--corr-shots", c.corr_shots, "Correlation shots per commuting group");
  sub->add_option("--loop-shots", c.loop_shots, "Post-selection loop length");
  sub->add_option("--tom-shots", c.tom_shots, "Copies handed to tomography");
  sub->add_option("--test-shots", c.test_shots, "Tester total sample count");
  sub->add_flag("--non-haar", [&c](std::int64_t) { c.haar = false; }, "Draw Gaussian layers from random rotations");
  sub->add_option("-o,--output", c.output, "Result document path");
  sub->add_option("--csv", c.csv, "CSV path");
  sub->add_flag("--timing", c.timing, "Record wall-clock time in the document");
}

void resolve_outputs(ExperimentConfig& c) {
  const char* dir = std::getenv("TDOPED_OUTPUT_DIR");
  if (!dir || !*dir) return;
  const std::string stem = std::string(dir) + "/" + c.kind + "-seed" + std::to_string(c.seed);
  if (c.output.empty()) c.output = stem + ".json";
  if (c.csv.empty()) c.csv = stem + ".csv";
}

int run_experiment(ExperimentConfig c, const std::string& circuit_out, const std::string& learned_out) {
  resolve_outputs(c);
  const tdoped::ResultDocument res = tdoped::run(c);
  const std::string text = res.document.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    write_file(c.output, text);
  }
  if (!c.csv.empty()) write_file(c.csv, res.csv);
  if (!circuit_out.empty()) write_file(circuit_out, tdoped::serialize_circuit(tdoped::trial_circuit(c, 0, 0)));
  if (!learned_out.empty()) write_file(learned_out, tdoped::serialize_learned(tdoped::learn_trial(c, 0, 0).state));
  return res.accepted ? 0 : kExitStatistical;
}

int run_verify(const std::string& learned_path, const std::string& circuit_path, const std::string& output) {
  const tdoped::LearnedState learned = tdoped::parse_learned(read_file(learned_path));
  const tdoped::DopedCircuit circuit = tdoped::parse_circuit(read_file(circuit_path));
  const tdoped::VerifyReport r = tdoped::verify(learned, tdoped::prepare(circuit));
  const nlohmann::json doc = {{"trace_distance", r.trace_distance},
                              {"fidelity", r.fidelity},
                              {"tomography_term", r.tomography_term},
                              {"compression_term", r.compression_term},
                              {"postselect_rate", r.postselect_rate}};
  if (output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_file(output, doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate, compress, learn and test t-doped fermionic Gaussian states"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::string circuit_out, learned_out, learned_in, circuit_in, verify_out;
  std::optional<std::string> grid_n, grid_t, grid_kappa, grid_eps;

  for (const char* kind : {"prepare", "compress", "learn", "test", "sweep"}) {
    auto* sub = app.add_subcommand(kind, std::string("Run the ") + kind + " experiment");
    add_common(sub, cfg);
    sub->callback([&cfg, kind] { cfg.kind = kind; });
    if (std::string(kind) == "prepare" || std::string(kind) == "learn") {
      sub->add_option("--circuit-out", circuit_out, "Write the trial-0 circuit here");
    }
    if (std::string(kind) == "learn") sub->add_option("--learned-out", learned_out, "Write the trial-0 learned state here");
    if (std::string(kind) == "sweep") {
      sub->add_option("--sweep-kind", cfg.sweep_kind, "Experiment run in every cell");
      sub->add_option("--grid-n", grid_n, "Comma-separated n values");
      sub->add_option("--grid-t", grid_t, "Comma-separated t values");
      sub->add_option("--grid-kappa", grid_kappa, "Comma-separated kappa values");
      sub->add_option("--grid-eps", grid_eps, "Comma-separated eps values");
    }
  }
  auto* ver = app.add_subcommand("verify", "Compare a learned state with the circuit that produced it");
  ver->add_option("--learned", learned_in, "Learned-state document")->required();
  ver->add_option("--circuit", circuit_in, "Circuit document")->required();
  ver->add_option("-o,--output", verify_out, "Report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitPrecondition;
  }

  try {
    if (ver->parsed()) return run_verify(learned_in, circuit_in, verify_out);
    cfg.grid_n = parse_axis<int>(grid_n);
    cfg.grid_t = parse_axis<int>(grid_t);
    cfg.grid_kappa = parse_axis<int>(grid_kappa);
    cfg.grid_eps = parse_axis<double>(grid_eps);
    return run_experiment(cfg, circuit_out, learned_out);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
