// Copyright 2026 The rqcsim Authors
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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rqcsim/measures.hpp"
#include "rqcsim/rng.hpp"
#include "rqcsim/rqc.hpp"
#include "rqcsim/tomography.hpp"
#include "verify.hpp"

namespace {

using namespace rqcsim;

struct RunSpec {
  std::string mode = "exact";
  std::string scenario = "stage2";
  std::string qwp = "in";
  double theta_start = 0.0;
  double theta_stop = std::numbers::pi / 2.0;
  int steps = 33;
  int atoms = 2;
  std::uint64_t shots = 8192;
  int reps = 10;
  double readout_p = 0.0;
  bool mitigate = false;
  std::uint64_t seed = 0;
  std::string out_path;  // empty -> stdout
  std::string format = "csv";
};

struct Row {
  double theta = 0.0;
  std::string scenario;
  std::string qwp;
  std::string target;
  double exact = 0.0;
  double predicted = 0.0;
  std::optional<double> estimate;
  std::optional<double> stddev;
};

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void validate_spec(const RunSpec& spec) {
  auto fail = [](const std::string& message) {
    throw std::invalid_argument(message);
  };
  if (spec.mode != "exact" && spec.mode != "tomography") {
    fail("--mode must be 'exact' or 'tomography'");
  }
  if (spec.scenario != "stage2" && spec.scenario != "stage5") {
    fail("--scenario must be 'stage2' or 'stage5'");
  }
  if (spec.qwp != "in" && spec.qwp != "out") {
    fail("--qwp must be 'in' or 'out'");
  }
  if (spec.steps < 1) fail("--steps must be at least 1");
  const double half_pi = std::numbers::pi / 2.0;
  if (!(spec.theta_start >= 0.0 && spec.theta_start <= half_pi) ||
      !(spec.theta_stop >= 0.0 && spec.theta_stop <= half_pi)) {
    fail("theta grid must lie within [0, pi/2]");
  }
  if (spec.theta_start > spec.theta_stop) {
    fail("--theta-start must not exceed --theta-stop");
  }
  if (spec.atoms != 1 && spec.atoms != 2) fail("--atoms must be 1 or 2");
  if (spec.shots < 1) fail("--shots must be at least 1");
  if (spec.reps < 1) fail("--reps must be at least 1");
  if (spec.readout_p < 0.0 || spec.readout_p >= 0.5) {
    fail("--readout-p must lie in [0, 0.5)");
  }
  if (spec.format != "csv" && spec.format != "json") {
    fail("--format must be 'csv' or 'json'");
  }
}

void load_config_file(const std::string& path, RunSpec& spec) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  nlohmann::json config;
  in >> config;
  if (!config.is_object()) {
    throw std::invalid_argument("config file must hold a flat JSON object");
  }
  for (const auto& [key, value] : config.items()) {
    if (key == "mode") spec.mode = value.get<std::string>();
    else if (key == "scenario") spec.scenario = value.get<std::string>();
    else if (key == "qwp") spec.qwp = value.get<std::string>();
    else if (key == "theta-start") spec.theta_start = value.get<double>();
    else if (key == "theta-stop") spec.theta_stop = value.get<double>();
    else if (key == "steps") spec.steps = value.get<int>();
    else if (key == "atoms") spec.atoms = value.get<int>();
    else if (key == "shots") spec.shots = value.get<std::uint64_t>();
    else if (key == "reps") spec.reps = value.get<int>();
    else if (key == "readout-p") spec.readout_p = value.get<double>();
    else if (key == "mitigate") spec.mitigate = value.get<bool>();
    else if (key == "seed") spec.seed = value.get<std::uint64_t>();
    else if (key == "out") spec.out_path = value.get<std::string>();
    else if (key == "format") spec.format = value.get<std::string>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

std::vector<Row> compute_rows(const RunSpec& spec) {
  const Scenario scenario =
      spec.scenario == "stage2" ? Scenario::Stage2 : Scenario::Stage5;
  const bool qwp_in = spec.qwp == "in";
  const std::vector<std::string> targets =
      scenario == Scenario::Stage2 ? std::vector<std::string>{"b"}
                                   : std::vector<std::string>{"e1", "e2"};
  const std::vector<std::string> qst_qubits =
      scenario == Scenario::Stage2
          ? std::vector<std::string>{"A", "b"}
          : std::vector<std::string>{"A", "b", "e1", "e2"};

  std::vector<Row> rows;
  for (int i = 0; i < spec.steps; ++i) {
    const double theta =
        spec.steps == 1
            ? spec.theta_start
            : spec.theta_start + (spec.theta_stop - spec.theta_start) * i /
                                     (spec.steps - 1);
    const RqcConfig cfg{theta, qwp_in, spec.atoms, {}, {}};
    const DensityMatrix omega = bob_state(scenario, cfg);
    const double predicted = predicted_irreality(scenario, cfg);

    std::vector<MeasureEstimate> estimates;
    if (spec.mode == "tomography") {
      ReconstructOptions options;
      options.shots = spec.shots;
      options.repetitions = spec.reps;
      options.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
      options.mitigate = spec.mitigate;
      if (spec.readout_p > 0.0 || spec.mitigate) {
        options.noise = ReadoutNoiseModel::uniform(
            spec.readout_p, static_cast<int>(qst_qubits.size()));
      }
      for (const auto& t : targets) {
        options.targets.push_back(MeasureTarget{t, {}});
      }
      const StageId branch = scenario == Scenario::Stage2
                                 ? StageId::Psi2Branch
                                 : StageId::Psi5Branch;
      const ReconstructionReport report =
          reconstruct(circuit_state(branch, cfg), qst_qubits, options);
      estimates = report.estimates;
    }

    for (std::size_t t = 0; t < targets.size(); ++t) {
      Row row;
      row.theta = theta;
      row.scenario = spec.scenario;
      row.qwp = spec.qwp;
      row.target = targets[t];
      row.exact = irreality(omega, MeasureTarget{targets[t], {}});
      row.predicted = predicted;
      if (!estimates.empty()) {
        row.estimate = estimates[t].mean;
        row.stddev = estimates[t].stddev;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string render_csv(const std::vector<Row>& rows, const RunSpec& spec) {
  std::ostringstream out;
  out << "theta_rad,scenario,qwp,target,irreality_exact,irreality_predicted,"
         "irreality_est,irreality_std,shots,repetitions,mitigated,seed\n";
  const bool tomo = spec.mode == "tomography";
  for (const Row& row : rows) {
    out << format_double(row.theta) << ',' << row.scenario << ',' << row.qwp
        << ',' << row.target << ',' << format_double(row.exact) << ','
        << format_double(row.predicted) << ',';
    if (row.estimate) out << format_double(*row.estimate);
    out << ',';
    if (row.stddev) out << format_double(*row.stddev);
    out << ',';
    if (tomo) out << spec.shots;
    out << ',';
    if (tomo) out << spec.reps;
    out << ',';
    if (tomo) out << (spec.mitigate ? "true" : "false");
    out << ',';
    if (tomo) out << spec.seed;
    out << '\n';
  }
  return out.str();
}

std::string render_json(const std::vector<Row>& rows, const RunSpec& spec) {
  const bool tomo = spec.mode == "tomography";
  nlohmann::json out = nlohmann::json::array();
  for (const Row& row : rows) {
    nlohmann::json record{
        {"theta_rad", row.theta},       {"scenario", row.scenario},
        {"qwp", row.qwp},               {"target", row.target},
        {"irreality_exact", row.exact}, {"irreality_predicted", row.predicted},
    };
    record["irreality_est"] =
        row.estimate ? nlohmann::json(*row.estimate) : nlohmann::json();
    record["irreality_std"] =
        row.stddev ? nlohmann::json(*row.stddev) : nlohmann::json();
    record["shots"] = tomo ? nlohmann::json(spec.shots) : nlohmann::json();
    record["repetitions"] = tomo ? nlohmann::json(spec.reps) : nlohmann::json();
    record["mitigated"] = tomo ? nlohmann::json(spec.mitigate) : nlohmann::json();
    record["seed"] = tomo ? nlohmann::json(spec.seed) : nlohmann::json();
    out.push_back(std::move(record));
  }
  return out.dump(2) + "\n";
}

int cmd_run(const RunSpec& spec) {
  validate_spec(spec);
  const std::vector<Row> rows = compute_rows(spec);
  const std::string rendered =
      spec.format == "csv" ? render_csv(rows, spec) : render_json(rows, spec);
  if (spec.out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out) {
      throw std::invalid_argument("cannot open output file: " +
                                  spec.out_path);
    }
    out << rendered;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reality-quantum-correlator simulator and tomography runner"};
  app.require_subcommand(1);

  RunSpec spec;
  std::string config_path;

  CLI::App* run = app.add_subcommand(
      "run", "Sweep theta and write irreality records as CSV or JSON");
  run->add_option("--config", config_path,
                  "Flat JSON file with defaults; explicit flags override");
  run->add_option("--mode", spec.mode, "exact | tomography");
  run->add_option("--scenario", spec.scenario, "stage2 | stage5");
  run->add_option("--qwp", spec.qwp, "in | out");
  run->add_option("--theta-start", spec.theta_start, "Grid start (radians)");
  run->add_option("--theta-stop", spec.theta_stop, "Grid stop (radians)");
  run->add_option("--steps", spec.steps, "Grid point count");
  run->add_option("--atoms", spec.atoms, "Atoms in the interferometer (1|2)");
  run->add_option("--shots", spec.shots, "Shots per tomography setting");
  run->add_option("--reps", spec.reps, "Tomography repetitions");
  run->add_option("--readout-p", spec.readout_p,
                  "Per-qubit readout flip probability");
  run->add_flag("--mitigate", spec.mitigate,
                "Invert the confusion matrix on recorded counts");
  run->add_option("--seed", spec.seed, "Base RNG seed");
  run->add_option("--out", spec.out_path, "Output path (default stdout)");
  run->add_option("--format", spec.format, "csv | json");

  bool inject_fault = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the oracle-vs-circuit and measure-identity self checks");
  verify->add_flag("--inject-fault", inject_fault)->group("");

  // The config file seeds the defaults before CLI11 binds explicit flags.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    try {
      if (arg == "--config" && i + 1 < argc) {
        load_config_file(argv[i + 1], spec);
      } else if (arg.rfind("--config=", 0) == 0) {
        load_config_file(arg.substr(9), spec);
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << '\n';
    return 1;
  }

  try {
    if (run->parsed()) {
      return cmd_run(spec);
    }
    return rqcsim::cli::run_verification(std::cout, inject_fault) ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return run->parsed() ? 1 : 2;
  }
}
