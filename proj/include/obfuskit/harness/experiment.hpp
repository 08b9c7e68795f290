// Copyright 2026 The Obfuskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBFUSKIT_HARNESS_EXPERIMENT_HPP
#define OBFUSKIT_HARNESS_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "obfuskit/attacks/report.hpp"
#include "obfuskit/harness/config.hpp"
#include "obfuskit/metrics.hpp"

namespace obfuskit {

struct SweepResult {
  double r = 0.0;
  AttackReport report;
  AccuracyCurve curve;
  /// Baseline (r = 0) validation accuracy minus this point's.
  double delta_acc = 0.0;
};

struct RunReport {
  std::string version;
  std::string config_echo;  // JSON text
  std::vector<SweepResult> entries;
  double wall_clock_sec = 0.0;

  /// Deterministic except for the wall_clock_sec field.
  std::string to_json_string() const;
};

/// Runs the configured scenario once per sweep value (the r = 0 baseline is
/// prepended when missing). Fully deterministic given the config and
/// master_seed, for any worker count.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Writes report.json, curves.csv and artifacts/*.pgm under cfg.output_dir.
void write_run_outputs(const RunReport& report, const ExperimentConfig& cfg);

}  // namespace obfuskit

#endif  // OBFUSKIT_HARNESS_EXPERIMENT_HPP
