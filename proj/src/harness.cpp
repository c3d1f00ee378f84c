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

#include "tdoped/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "tdoped/errors.hpp"
#include "tdoped/metrology.hpp"

namespace tdoped {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kColumns = {
    "kind",      "cell",          "trial",       "n",          "t",          "kappa",      "eps",
    "status",    "trace_distance", "fidelity",   "postselect_rate", "residual", "gaussian_dimension",
    "lambda_hat", "verdict",      "copies",      "metric",     "metric_mean", "metric_q10", "metric_q50",
    "metric_q90", "success_rate"};

const std::set<std::string> kKinds = {"prepare", "compress", "learn", "test", "sweep"};

constexpr double kCompressTol = 1e-8;
// Rounding floor on squared exact distances when deciding the promise side.
constexpr double kExactSlack = 1e-9;

const char* primary_metric(const std::string& kind) {
  if (kind == "prepare") return "gaussian_dimension";
  if (kind == "compress") return "residual";
  if (kind == "test") return "lambda_hat";
  return "trace_distance";
}

Rng trial_rng(const ExperimentConfig& c, int cell, int trial) {
  return Rng::stream(c.seed, static_cast<std::uint64_t>(cell)).split(static_cast<std::uint64_t>(trial));
}

json optional_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

json trial_prepare(const ExperimentConfig& c, int cell, int trial) {
  const DopedCircuit circuit = trial_circuit(c, cell, trial);
  const StateVector psi = prepare(circuit);
  const NormalForm nf = normal_form(correlation_exact(psi));
  const GateCounts counts = report_gate_counts(circuit);
  json rec;
  rec["gaussian_dimension"] = gaussian_dimension(nf.lambdas);
  rec["lambdas"] = nf.lambdas;
  rec["norm"] = psi.norm();
  rec["gate_counts"] = {{"rotations", counts.rotations},
                        {"reflections", counts.reflections},
                        {"nongaussian_gates", counts.nongaussian_gates},
                        {"nongaussian_terms", counts.nongaussian_terms}};
  const int kt = c.kappa * c.t;
  rec["success"] = kt > c.n || rec["gaussian_dimension"].get<int>() >= c.n - kt;
  return rec;
}

json trial_compress(const ExperimentConfig& c, int cell, int trial) {
  const DopedCircuit circuit = trial_circuit(c, cell, trial);
  const StateVector psi = prepare(circuit);
  const CompressedForm cf = compress_state(circuit);
  const int gd = gaussian_dimension(correlation_exact(psi));
  json rec;
  rec["residual"] = cf.residual;
  rec["core_qubits"] = cf.core_qubits;
  rec["fidelity"] = fidelity(cf.reassemble(), psi);
  rec["gaussian_dimension"] = gd;
  rec["success"] = cf.residual <= kCompressTol && rec["fidelity"].get<double>() >= 1.0 - 1e-9 &&
                   gd >= c.n - cf.core_qubits;
  return rec;
}

json trial_learn(const ExperimentConfig& c, int cell, int trial) {
  json rec;
  rec["level"] = learn_level(c);
  try {
    const LearnResult res = learn_trial(c, cell, trial);
    const VerifyReport v = verify(res.state, prepare(trial_circuit(c, cell, trial)));
    rec["trace_distance"] = v.trace_distance;
    rec["fidelity"] = v.fidelity;
    rec["postselect_rate"] = v.postselect_rate;
    rec["tomography_term"] = v.tomography_term;
    rec["compression_term"] = v.compression_term;
    rec["copies"] = res.diagnostics.copies;
    rec["kept"] = res.diagnostics.kept;
    rec["pure_tomography"] = res.diagnostics.pure_tomography;
    rec["success"] = v.trace_distance <= c.eps;
  } catch (const BoostingFailure& e) {
    rec["status"] = "boosting_failure";
    rec["message"] = e.what();
    rec["success"] = false;
  } catch (const PostselectionError& e) {
    rec["status"] = "postselection_error";
    rec["message"] = e.what();
    rec["success"] = false;
  }
  return rec;
}

json trial_test(const ExperimentConfig& c, int cell, int trial) {
  const StateVector psi = prepare(trial_circuit(c, cell, trial));
  const int level = test_level(c);
  TesterConfig tc;
  tc.t = level;
  tc.eps_a = c.eps_a;
  tc.eps_b = c.eps_b;
  tc.delta = c.delta;
  tc.scheme = c.mode == "exact" ? Scheme::exact : Scheme::grouped;
  tc.shot_override = c.test_shots;
  StateSource source(psi);
  Rng rng = trial_rng(c, cell, trial).split(1);
  const TesterResult r = test_gaussian_dimension(source, tc, rng);

  // The promise: minimal distance either <= eps_A or >= eps_B.
  const DistanceBounds exact = distance_bounds(normal_form(correlation_exact(psi)).lambdas, level);
  std::string expected = "none";
  if (exact.upper * exact.upper <= c.eps_a * c.eps_a + kExactSlack) expected = "close";
  if (exact.lower >= c.eps_b) expected = "far";
  json rec;
  rec["level"] = level;
  rec["verdict"] = r.close ? "close" : "far";
  rec["expected"] = expected;
  rec["lambda_hat"] = r.lambda_hat;
  rec["eps_corr"] = r.eps_corr;
  rec["eps_test"] = r.eps_test;
  rec["total_shots"] = r.total_shots;
  rec["shots_per_group"] = r.shots_per_group;
  rec["copies"] = source.copies_used();
  rec["success"] = expected == "none" || expected == rec["verdict"].get<std::string>();
  return rec;
}

json run_trial(const ExperimentConfig& c, int cell, int trial) {
  json rec;
  if (c.kind == "prepare") rec = trial_prepare(c, cell, trial);
  else if (c.kind == "compress") rec = trial_compress(c, cell, trial);
  else if (c.kind == "learn") rec = trial_learn(c, cell, trial);
  else rec = trial_test(c, cell, trial);
  json out = {{"trial", trial}, {"status", rec.value("status", std::string("ok"))}};
  for (auto it = rec.begin(); it != rec.end(); ++it) out[it.key()] = it.value();
  return out;
}

struct Cell {
  json trials = json::array();
  json summary;
  bool accepted = true;
};

Cell run_cell(const ExperimentConfig& c, int cell) {
  Cell out;
  std::vector<double> metric;
  int successes = 0;
  for (int trial = 0; trial < c.trials; ++trial) {
    json rec = run_trial(c, cell, trial);
    if (rec.value("success", false)) ++successes;
    const char* key = primary_metric(c.kind);
    if (rec.contains(key) && rec[key].is_number()) metric.push_back(rec[key].get<double>());
    out.trials.push_back(std::move(rec));
  }
  const double rate = static_cast<double>(successes) / c.trials;
  out.summary = {{"trials", c.trials}, {"successes", successes}, {"success_rate", rate},
                 {"metric", primary_metric(c.kind)}};
  if (!metric.empty()) {
    double mean = 0.0;
    for (double m : metric) mean += m;
    out.summary["metric_mean"] = mean / static_cast<double>(metric.size());
    out.summary["metric_q10"] = quantile(metric, 0.1);
    out.summary["metric_q50"] = quantile(metric, 0.5);
    out.summary["metric_q90"] = quantile(metric, 0.9);
  }
  const bool statistical = c.kind == "learn" || c.kind == "test";
  out.accepted = statistical && c.mode == "sampled" ? rate >= 1.0 - c.delta : successes == c.trials;
  out.summary["accepted"] = out.accepted;
  return out;
}

std::string csv_value(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return "";
}

void append_row(std::ostringstream& os, const json& row) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) os << ',';
    os << (row.contains(kColumns[i]) ? csv_value(row[kColumns[i]]) : std::string());
  }
  os << '\n';
}

void append_cell_rows(std::ostringstream& os, const ExperimentConfig& c, int cell, const json& trials,
                      const json& summary, const std::string& status) {
  const json base = {{"kind", c.kind}, {"cell", cell}, {"n", c.n}, {"t", c.t}, {"kappa", c.kappa}, {"eps", c.eps}};
  for (const auto& rec : trials) {
    json row = base;
    for (auto it = rec.begin(); it != rec.end(); ++it) row[it.key()] = it.value();
    append_row(os, row);
  }
  json row = base;
  row["trial"] = "summary";
  row["status"] = status;
  for (auto it = summary.begin(); it != summary.end(); ++it) row[it.key()] = it.value();
  append_row(os, row);
}

template <typename T>
std::vector<T> axis(const std::optional<std::vector<T>>& grid, T fallback) {
  return grid ? *grid : std::vector<T>{fallback};
}

template <typename T>
T read_field(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j[key].is_null() ? j[key].get<T>() : fallback;
}

}  // namespace

std::string csv_header() {
  std::ostringstream os;
  for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
  os << '\n';
  return os.str();
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"kind", c.kind},
            {"n", c.n},
            {"t", c.t},
            {"kappa", c.kappa},
            {"eps", c.eps},
            {"delta", c.delta},
            {"eps_a", c.eps_a},
            {"eps_b", c.eps_b},
            {"seed", c.seed},
            {"mode", c.mode},
            {"trials", c.trials},
            {"haar", c.haar},
            {"c_tom", c.c_tom},
            {"corr_shots", optional_json(c.corr_shots)},
            {"loop_shots", optional_json(c.loop_shots)},
            {"tom_shots", optional_json(c.tom_shots)},
            {"test_shots", optional_json(c.test_shots)},
            {"output", c.output},
            {"csv", c.csv},
            {"timing", c.timing},
            {"sweep_kind", c.sweep_kind}};
  j["grid_n"] = c.grid_n ? json(*c.grid_n) : json(nullptr);
  j["grid_t"] = c.grid_t ? json(*c.grid_t) : json(nullptr);
  j["grid_kappa"] = c.grid_kappa ? json(*c.grid_kappa) : json(nullptr);
  j["grid_eps"] = c.grid_eps ? json(*c.grid_eps) : json(nullptr);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  static const std::set<std::string> known = {
      "kind",       "n",          "t",         "kappa",     "eps",    "delta",  "eps_a",
      "eps_b",      "seed",       "mode",      "trials",    "haar",   "c_tom",  "corr_shots",
      "loop_shots", "tom_shots",  "test_shots", "output",   "csv",    "timing", "sweep_kind",
      "grid_n",     "grid_t",     "grid_kappa", "grid_eps"};
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw PreconditionError("unknown config field '" + it.key() + "'");
  }
  try {
    ExperimentConfig c;
    c.kind = read_field(j, "kind", c.kind);
    c.n = read_field(j, "n", c.n);
    c.t = read_field(j, "t", c.t);
    c.kappa = read_field(j, "kappa", c.kappa);
    c.eps = read_field(j, "eps", c.eps);
    c.delta = read_field(j, "delta", c.delta);
    c.eps_a = read_field(j, "eps_a", c.eps_a);
    c.eps_b = read_field(j, "eps_b", c.eps_b);
    c.seed = read_field(j, "seed", c.seed);
    c.mode = read_field(j, "mode", c.mode);
    c.trials = read_field(j, "trials", c.trials);
    c.haar = read_field(j, "haar", c.haar);
    c.c_tom = read_field(j, "c_tom", c.c_tom);
    for (auto [key, field] : {std::pair{"corr_shots", &c.corr_shots}, std::pair{"loop_shots", &c.loop_shots},
                              std::pair{"tom_shots", &c.tom_shots}, std::pair{"test_shots", &c.test_shots}}) {
      if (j.contains(key) && !j[key].is_null()) *field = j[key].get<std::uint64_t>();
    }
    c.output = read_field(j, "output", c.output);
    c.csv = read_field(j, "csv", c.csv);
    c.timing = read_field(j, "timing", c.timing);
    c.sweep_kind = read_field(j, "sweep_kind", c.sweep_kind);
    for (auto [key, field] : {std::pair{"grid_n", &c.grid_n}, std::pair{"grid_t", &c.grid_t},
                              std::pair{"grid_kappa", &c.grid_kappa}}) {
      if (j.contains(key) && !j[key].is_null()) *field = j[key].get<std::vector<int>>();
    }
    if (j.contains("grid_eps") && !j["grid_eps"].is_null()) c.grid_eps = j["grid_eps"].get<std::vector<double>>();
    return c;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed config: ") + e.what());
  }
}

int learn_level(const ExperimentConfig& c) { return std::min(c.n, c.kappa * c.t); }
int test_level(const ExperimentConfig& c) { return std::min(c.kappa * c.t, c.n - 1); }

void validate(const ExperimentConfig& c) {
  if (!kKinds.count(c.kind)) throw PreconditionError("kind must be one of prepare, compress, learn, test, sweep");
  if (c.mode != "exact" && c.mode != "sampled") throw PreconditionError("mode must be exact or sampled");
  if (c.trials < 1) throw PreconditionError("trials must be at least 1");
  if (c.kind == "sweep") {
    if (!kKinds.count(c.sweep_kind) || c.sweep_kind == "sweep") {
      throw PreconditionError("sweep_kind must be one of prepare, compress, learn, test");
    }
    return;
  }
  if (c.n < 1) throw PreconditionError("n must be at least 1");
  if (c.n > kMaxStateQubits) throw EngineLimitError("n exceeds the statevector limit");
  if (c.t < 0) throw PreconditionError("t must be nonnegative");
  if (c.kappa < 0 || c.kappa > 2 * c.n) throw PreconditionError("kappa must lie in [0, 2n]");
  if (!(c.eps > 0.0 && c.eps <= 1.0)) throw PreconditionError("eps must lie in (0, 1]");
  if (!(c.delta > 0.0 && c.delta <= 1.0)) throw PreconditionError("delta must lie in (0, 1]");
  if (!(c.c_tom > 0.0)) throw PreconditionError("c_tom must be positive");
  for (const auto* o : {&c.corr_shots, &c.loop_shots, &c.tom_shots, &c.test_shots}) {
    if (*o && **o < 1) throw PreconditionError("shot overrides must be positive");
  }
  if (c.kind == "compress" && c.kappa * c.t > c.n) throw PreconditionError("compress requires kappa * t <= n");
  if (c.kind == "learn" && c.mode == "sampled" && learn_level(c) > kTomographyLimit) {
    throw EngineLimitError("sampled learning needs min(n, kappa t) <= " + std::to_string(kTomographyLimit));
  }
  if (c.kind == "test") {
    if (c.eps_a < 0.0) throw PreconditionError("eps_a must be nonnegative");
    if (!(c.eps_b > std::sqrt((c.n - test_level(c)) * c.eps_a))) {
      throw PreconditionError("test requires eps_b > sqrt((n - t) eps_a)");
    }
  }
}

DopedCircuit trial_circuit(const ExperimentConfig& c, int cell, int trial) {
  Rng rng = trial_rng(c, cell, trial).split(0);
  return random_doped_circuit(c.n, c.t, c.kappa, rng, c.haar);
}

LearnBudget trial_budget(const ExperimentConfig& c) {
  LearnBudget b = plan_budget(c.n, learn_level(c), c.eps, c.delta, c.c_tom);
  b.corr_shots_per_group = c.corr_shots;
  b.loop_override = c.loop_shots;
  b.tom_override = c.tom_shots;
  return b;
}

LearnResult learn_trial(const ExperimentConfig& c, int cell, int trial) {
  StateSource source(prepare(trial_circuit(c, cell, trial)));
  Rng rng = trial_rng(c, cell, trial).split(1);
  return learn(source, learn_level(c), trial_budget(c), parse_learn_mode(c.mode), rng);
}

ResultDocument run(const ExperimentConfig& c) {
  validate(c);
  if (c.kind == "sweep") return sweep(c);
  const auto start = std::chrono::steady_clock::now();
  const Cell cell = run_cell(c, 0);
  ResultDocument out;
  out.accepted = cell.accepted;
  out.document = {{"toolkit", "tdoped"},   {"version", kToolkitVersion}, {"seed", c.seed},
                  {"config", config_to_json(c)}, {"trials", cell.trials}, {"summary", cell.summary},
                  {"acceptance", cell.accepted}};
  if (c.kind == "learn") {
    const LearnBudget b = trial_budget(c);
    out.document["budget"] = {{"N_corr", b.N_corr},       {"N_tom", b.N_tom},
                              {"N_loop", b.N_loop},       {"eps_c", b.eps_c},
                              {"shots_per_group", b.shots_per_group()},
                              {"pure_tomography", b.pure_tomography},
                              {"overrides", {{"corr_shots", optional_json(c.corr_shots)},
                                             {"loop_shots", optional_json(c.loop_shots)},
                                             {"tom_shots", optional_json(c.tom_shots)}}}};
  }
  if (c.timing) {
    out.document["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  std::ostringstream os;
  os << csv_header();
  append_cell_rows(os, c, 0, cell.trials, cell.summary, "summary");
  out.csv = os.str();
  return out;
}

ResultDocument sweep(const ExperimentConfig& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  ResultDocument out;
  std::ostringstream os;
  os << csv_header();
  json cells = json::array();
  int index = 0;
  for (int n : axis(c.grid_n, c.n)) {
    for (int t : axis(c.grid_t, c.t)) {
      for (int kappa : axis(c.grid_kappa, c.kappa)) {
        for (double eps : axis(c.grid_eps, c.eps)) {
          ExperimentConfig cc = c;
          cc.kind = c.sweep_kind;
          cc.n = n;
          cc.t = t;
          cc.kappa = kappa;
          cc.eps = eps;
          json entry = {{"cell", index}, {"n", n}, {"t", t}, {"kappa", kappa}, {"eps", eps}};
          try {
            validate(cc);
            const Cell cell = run_cell(cc, index);
            entry["status"] = "ok";
            entry["trials"] = cell.trials;
            entry["summary"] = cell.summary;
            out.accepted = out.accepted && cell.accepted;
            append_cell_rows(os, cc, index, cell.trials, cell.summary, "summary");
          } catch (const std::exception& e) {
            entry["status"] = "error";
            entry["error"] = e.what();
            out.accepted = false;
            append_cell_rows(os, cc, index, json::array(), json{{"error", e.what()}}, "error");
          }
          cells.push_back(std::move(entry));
          ++index;
        }
      }
    }
  }
  out.document = {{"toolkit", "tdoped"}, {"version", kToolkitVersion}, {"seed", c.seed},
                  {"config", config_to_json(c)}, {"cells", cells}, {"acceptance", out.accepted}};
  if (c.timing) {
    out.document["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  out.csv = os.str();
  return out;
}

}  // namespace tdoped
