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

#include "obfuskit/attacks/inversion.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "obfuskit/metrics.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

std::vector<double> domain_midpoint(int dim, Domain domain) {
  return std::vector<double>(static_cast<size_t>(dim), domain.midpoint());
}

std::vector<double> invert_class(const Model& model, int cls, int steps,
                                 double step_size, std::vector<double> init,
                                 Domain domain) {
  if (steps < 1) throw std::invalid_argument("invert: steps must be >= 1");
  if (!(step_size > 0))
    throw std::invalid_argument("invert: step_size must be > 0");
  if (cls < 0 || cls >= model.spec.num_classes)
    throw std::invalid_argument("invert: class out of range");
  for (double v : init)
    if (!domain.contains(v))
      throw std::invalid_argument("invert: init outside domain");

  std::vector<double> x = std::move(init);
  double objective = log_prob(model, x, cls);

  std::vector<double> candidate(x.size());
  for (int step = 0; step < steps; ++step) {
    std::vector<double> grad = input_log_prob_gradient(model, x, cls);
    double eta = step_size;
    bool improved = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      for (size_t i = 0; i < x.size(); ++i)
        candidate[i] = domain.clip(x[i] + eta * grad[i]);
      double cand_obj = log_prob(model, candidate, cls);
      if (cand_obj > objective) {
        x = candidate;
        objective = cand_obj;
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;  // stationary up to the step resolution
  }
  return x;
}

AttackReport inversion_attack_eval(const Dataset& data, int target_class,
                                   const std::optional<GroupParams>& defense,
                                   const InversionConfig& cfg,
                                   AccuracyCurve* curve_out) {
  data.validate();
  if (target_class < 0 || target_class >= data.num_classes)
    throw std::invalid_argument("inversion: target class out of range");

  auto [train_ds, val_ds] = split(data, 0.5, derive_seed(cfg.seed, "split"));
  std::vector<double> true_mean = class_mean(train_ds, target_class);

  Dataset working =
      defense ? obfuscate_dataset_groups(train_ds,
                                         {GroupSpec::by_label(target_class)},
                                         *defense,
                                         derive_seed(cfg.seed, "defense"))
              : train_ds;

  TrainConfig tc = cfg.train;
  tc.seed = derive_seed(cfg.seed, "train");
  TrackedTraining tracked =
      train_tracked(init_model(cfg.model, derive_seed(cfg.seed, "init")),
                    working, tc, working, val_ds);
  if (curve_out) *curve_out = tracked.curve;

  double step = cfg.step_size > 0 ? cfg.step_size : 0.5 * data.domain.width();
  std::vector<double> start = domain_midpoint(data.dim, data.domain);
  double conf_init = std::exp(log_prob(tracked.model, start, target_class));
  std::vector<double> inverted =
      invert_class(tracked.model, target_class, cfg.steps, step, start,
                   data.domain);
  double conf_final = std::exp(log_prob(tracked.model, inverted, target_class));

  // Centered on the domain midpoint: directions, not offsets, are compared.
  double mid = data.domain.midpoint();
  std::vector<double> inv_centered(inverted.size()), mean_centered(inverted.size());
  for (size_t i = 0; i < inverted.size(); ++i) {
    inv_centered[i] = inverted[i] - mid;
    mean_centered[i] = true_mean[i] - mid;
  }

  AttackReport report;
  report.attack = "inversion";
  report.aux["cosine_similarity"] = cosine_similarity(inv_centered, mean_centered);
  report.aux["mse"] = mse(inverted, true_mean);
  report.aux["confidence_init"] = conf_init;
  report.aux["confidence_final"] = conf_final;
  report.aux["train_acc"] = accuracy(tracked.model, working);
  report.aux["val_acc"] = accuracy(tracked.model, val_ds);
  report.artifacts["inverted"] = inverted;
  report.artifacts["class_mean"] = true_mean;

  nlohmann::json echo;
  echo["target_class"] = target_class;
  echo["steps"] = cfg.steps;
  echo["step_size"] = step;
  echo["defended"] = defense.has_value();
  if (defense) {
    echo["aug_ratio"] = defense->aug_ratio;
    echo["sigma"] = defense->sigma;
  }
  report.config_echo = echo.dump();
  return report;
}

}  // namespace obfuskit
