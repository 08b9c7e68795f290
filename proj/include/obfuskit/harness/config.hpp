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

#ifndef OBFUSKIT_HARNESS_CONFIG_HPP
#define OBFUSKIT_HARNESS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "obfuskit/attacks/memorization.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"

namespace obfuskit {

/// Raised for malformed configs and bad CLI arguments (exit code 2).
/// Messages carry the offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Scenario { Memorization, Membership, Inversion, Property };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

/// Blob-generator parameters; also the family template for the property
/// scenario (which overrides centers_seed per family).
struct GeneratorConfig {
  int num_classes = 2;
  int dim = 64;
  int per_class = 50;
  uint64_t centers_seed = 1;
  uint64_t points_seed = 2;
  double spread = 30.0;
  Domain domain{0.0, 255.0};
  // Band of the domain the class centers are drawn from.
  double band_lo = 0.15;
  double band_hi = 0.85;
  bool quantize = false;
  int shape_h = 0;  // optional height x width for PGM dumps
  int shape_w = 0;
};

struct DatasetSource {
  std::string file;  // exactly one of file / generator
  std::optional<GeneratorConfig> generator;
};

enum class ObfuscationMode { Individual, Group };

struct ObfuscationConfig {
  ObfuscationMode mode = ObfuscationMode::Individual;
  double sigma = 0.0;
  double coord_ratio = 1.0 / 3.0;  // individual mode only
  std::vector<double> sweep_r = {0.0};
};

/// Architecture knobs; input_dim, num_classes and input_domain come from the
/// dataset at run time.
struct ModelConfig {
  ModelSpec::Arch arch = ModelSpec::Arch::Softmax;
  int hidden_width = 0;
  double reg_weight = 0.0;
  Activation activation = Activation::ReLU;

  ModelSpec resolve(int input_dim, int num_classes, Domain domain) const;
};

struct MembershipScenarioConfig {
  int target_train_size = 120;  // members; non-members get the same count
  int n_shadow = 30;
  int shadow_train_size = 120;
  int attack_epochs = 100;
  double attack_lr = 0.5;
};

struct MemorizationScenarioConfig {
  MemorizationMethod method = MemorizationMethod::Lsb;
  int lsb_bits = 16;
  double sign_weight = 10.0;
  int bits_per_feature = 8;
  int secret_count = 4;
};

struct InversionScenarioConfig {
  int target_class = 0;
  int steps = 500;
  double step_size = 0.0;  // <= 0 selects the solver default
};

struct PropertyScenarioConfig {
  int n_each = 40;
  int n_eval = 20;
  uint64_t with_centers_seed = 101;
  uint64_t without_centers_seed = 202;
  // Domain band each family's class centers are drawn from (fractions of
  // the domain width). The with-property family is one-sided; the without
  // family also covers the reflected centers.
  double with_band_lo = 0.15;
  double with_band_hi = 0.45;
  double without_band_lo = 0.15;
  double without_band_hi = 0.45;
  int attack_epochs = 200;
  double attack_lr = 0.1;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::Membership;
  DatasetSource dataset;
  ModelConfig model;
  TrainConfig train;  // per-stage seeds are derived from master_seed
  ObfuscationConfig obfuscation;
  MembershipScenarioConfig membership;
  MemorizationScenarioConfig memorization;
  InversionScenarioConfig inversion;
  PropertyScenarioConfig property;
  uint64_t master_seed = 0;
  std::string output_dir = "out";

  /// Normalized config (defaults filled in) as canonical JSON; embedded in
  /// reports so reruns are reproducible from the report alone.
  std::string echo;
};

/// Strict parser: unknown keys, missing fields and out-of-range values throw
/// ConfigError with the field path in the message.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Spec document of the `train` subcommand:
/// {"model": {...}, "train": {...}, "seed": n}.
struct TrainSpec {
  ModelConfig model;
  TrainConfig train;
  uint64_t seed = 0;
};
TrainSpec parse_train_spec(const std::string& json_text);

}  // namespace obfuskit

#endif  // OBFUSKIT_HARNESS_CONFIG_HPP
