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

#ifndef OBFUSKIT_ATTACKS_PROPERTY_HPP
#define OBFUSKIT_ATTACKS_PROPERTY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "obfuskit/attacks/membership.hpp"
#include "obfuskit/attacks/report.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/obfuscate.hpp"

namespace obfuskit {

/// White-box statistics of a model: (mean, population standard deviation) of
/// every parameter group, concatenated in group order.
std::vector<double> model_feature(const Model& model);

/// Meta-classifier over model_feature vectors, with the standardization
/// statistics of its own training set (features are standardized with
/// train-set statistics only).
struct PropertyAttackModel {
  std::vector<double> feat_mean;
  std::vector<double> feat_std;
  BinaryLogistic classifier;

  bool predict(const Model& model) const;  // true = "with property"
};

/// Draws one fresh dataset of a family; the argument seeds the draw.
using DatasetGenerator = std::function<Dataset(uint64_t draw_seed)>;

/// Blob family for property experiments. The plain variant draws per_class
/// points around fixed class centers inside a domain band. The mirrored
/// variant additionally covers the reflected centers with another per_class
/// points per class, giving the broader two-sided distribution that a
/// negated-augmented one-sided dataset resembles.
struct BlobFamilySpec {
  int num_classes = 2;
  int dim = 8;
  int per_class = 30;
  double spread = 25.0;
  Domain domain{0.0, 255.0};
  uint64_t centers_seed = 1;
  double band_lo = 0.15;
  double band_hi = 0.45;
  bool mirrored = false;
  bool quantize = false;
};

DatasetGenerator make_blob_family(const BlobFamilySpec& spec);

struct PropertyConfig {
  ModelSpec model;    // shadow architecture
  TrainConfig train;  // shadow training recipe; seeds derived per shadow
  int n_each = 40;    // shadow models per family
  int attack_epochs = 200;
  double attack_lr = 0.1;
};

/// Trains n_each shadow models per family on fresh generator draws and fits
/// the meta-classifier on their (model_feature, family) pairs.
PropertyAttackModel property_attack_train(const DatasetGenerator& family_with,
                                          const DatasetGenerator& family_without,
                                          const PropertyConfig& cfg,
                                          uint64_t seed);

/// Trains n evaluation models of one family; when defense is set, every
/// drawn dataset is whole-dataset group-obfuscated before training.
std::vector<Model> train_family_models(const DatasetGenerator& family, int n,
                                       const std::optional<GroupParams>& defense,
                                       const ModelSpec& spec,
                                       const TrainConfig& train, uint64_t seed,
                                       std::string_view stage);

/// Confusion matrix and F1 over held-out models ("with property" positive),
/// plus the fraction of with-property models classified as without.
AttackReport property_attack_eval(const PropertyAttackModel& attack,
                                  const std::vector<Model>& with_models,
                                  const std::vector<Model>& without_models);

}  // namespace obfuskit

#endif  // OBFUSKIT_ATTACKS_PROPERTY_HPP
