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

#include "obfuskit/attacks/property.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "obfuskit/harness/parallel.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

DatasetGenerator make_blob_family(const BlobFamilySpec& spec) {
  std::vector<std::vector<double>> centers =
      blob_centers_in_band(spec.num_classes, spec.dim, spec.centers_seed,
                           spec.band_lo, spec.band_hi, spec.domain);
  std::vector<std::vector<double>> reflected;
  if (spec.mirrored)
    for (const std::vector<double>& c : centers)
      reflected.push_back(negative(c, spec.domain));

  return [spec, centers, reflected](uint64_t draw_seed) {
    Dataset data = gen_blobs_at(centers, spec.per_class,
                                derive_seed(draw_seed, "side0"), spec.spread,
                                spec.domain);
    if (spec.mirrored) {
      Dataset other = gen_blobs_at(reflected, spec.per_class,
                                   derive_seed(draw_seed, "side1"),
                                   spec.spread, spec.domain);
      data.samples.insert(data.samples.end(), other.samples.begin(),
                          other.samples.end());
    }
    if (spec.quantize) data = quantize_to_integers(std::move(data));
    return data;
  };
}

std::vector<double> model_feature(const Model& model) {
  std::vector<double> feature;
  feature.reserve(2 * model.params.size());
  for (const ParamGroup& g : model.params) {
    double n = static_cast<double>(g.values.size());
    double mean = 0.0;
    for (double v : g.values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : g.values) var += (v - mean) * (v - mean);
    feature.push_back(mean);
    feature.push_back(std::sqrt(var / n));
  }
  return feature;
}

bool PropertyAttackModel::predict(const Model& model) const {
  std::vector<double> f = model_feature(model);
  if (f.size() != feat_mean.size())
    throw std::invalid_argument("property: feature length mismatch");
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = (f[i] - feat_mean[i]) / feat_std[i];
  return classifier.predict(f);
}

std::vector<Model> train_family_models(const DatasetGenerator& family, int n,
                                       const std::optional<GroupParams>& defense,
                                       const ModelSpec& spec,
                                       const TrainConfig& train_cfg,
                                       uint64_t seed, std::string_view stage) {
  std::vector<Model> models(static_cast<size_t>(n));
  uint64_t stage_seed = derive_seed(seed, stage);
  parallel_for(static_cast<size_t>(n), [&](size_t i) {
    Dataset data = family(derive_seed(stage_seed, "draw", i));
    if (defense)
      data = obfuscate_dataset_groups(data, {GroupSpec::whole()}, *defense,
                                      derive_seed(stage_seed, "defense", i));
    TrainConfig tc = train_cfg;
    tc.seed = derive_seed(stage_seed, "train", i);
    models[i] = train(init_model(spec, derive_seed(stage_seed, "init", i)),
                      data, tc);
  });
  return models;
}

PropertyAttackModel property_attack_train(const DatasetGenerator& family_with,
                                          const DatasetGenerator& family_without,
                                          const PropertyConfig& cfg,
                                          uint64_t seed) {
  if (cfg.n_each < 2)
    throw std::invalid_argument("property: n_each must be >= 2");

  // Both families share one seed schedule: swapping the family arguments
  // swaps the two shadow sets exactly, it does not reshuffle the draws.
  std::vector<Model> with_models =
      train_family_models(family_with, cfg.n_each, std::nullopt, cfg.model,
                          cfg.train, seed, "family");
  std::vector<Model> without_models =
      train_family_models(family_without, cfg.n_each, std::nullopt, cfg.model,
                          cfg.train, seed, "family");

  std::vector<std::vector<double>> features;
  std::vector<uint8_t> labels;
  for (const Model& m : with_models) {
    features.push_back(model_feature(m));
    labels.push_back(1);
  }
  for (const Model& m : without_models) {
    features.push_back(model_feature(m));
    labels.push_back(0);
  }

  size_t dim = features.front().size();
  PropertyAttackModel attack;
  attack.feat_mean.assign(dim, 0.0);
  attack.feat_std.assign(dim, 0.0);
  for (const auto& f : features)
    for (size_t i = 0; i < dim; ++i) attack.feat_mean[i] += f[i];
  for (double& v : attack.feat_mean) v /= static_cast<double>(features.size());
  for (const auto& f : features)
    for (size_t i = 0; i < dim; ++i) {
      double d = f[i] - attack.feat_mean[i];
      attack.feat_std[i] += d * d;
    }
  bool any_spread = false;
  for (double& v : attack.feat_std) {
    v = std::sqrt(v / static_cast<double>(features.size()));
    if (v > 0) any_spread = true;
    else v = 1.0;  // constant dimension carries no signal; leave it centered
  }
  if (!any_spread)
    throw std::invalid_argument("property: all shadow features identical");

  std::vector<std::vector<double>> standardized = features;
  for (auto& f : standardized)
    for (size_t i = 0; i < dim; ++i)
      f[i] = (f[i] - attack.feat_mean[i]) / attack.feat_std[i];

  attack.classifier =
      train_logistic(standardized, labels, cfg.attack_epochs, cfg.attack_lr,
                     derive_seed(seed, "meta"));
  return attack;
}

AttackReport property_attack_eval(const PropertyAttackModel& attack,
                                  const std::vector<Model>& with_models,
                                  const std::vector<Model>& without_models) {
  if (with_models.empty() || without_models.empty())
    throw std::invalid_argument("property: empty evaluation set");

  std::vector<bool> predictions, labels;
  for (const Model& m : with_models) {
    predictions.push_back(attack.predict(m));
    labels.push_back(true);
  }
  for (const Model& m : without_models) {
    predictions.push_back(attack.predict(m));
    labels.push_back(false);
  }

  AttackReport report;
  report.attack = "property";
  report.cm = confusion_binary(predictions, labels);
  report.f1_score = f1(*report.cm);
  report.aux["accuracy"] = report.cm->accuracy();
  report.aux["with_classified_without"] =
      report.cm->fn / (report.cm->tp + report.cm->fn);

  nlohmann::json echo;
  echo["with_models"] = with_models.size();
  echo["without_models"] = without_models.size();
  report.config_echo = echo.dump();
  return report;
}

}  // namespace obfuskit
