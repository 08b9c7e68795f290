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

#include "obfuskit/attacks/membership.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "obfuskit/harness/parallel.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

double BinaryLogistic::prob(const std::vector<double>& x) const {
  if (x.size() != weights.size())
    throw std::invalid_argument("logistic: dimension mismatch");
  double z = bias;
  for (size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
  return 1.0 / (1.0 + std::exp(-z));
}

BinaryLogistic train_logistic(const std::vector<std::vector<double>>& features,
                              const std::vector<uint8_t>& labels, int epochs,
                              double learning_rate, uint64_t seed) {
  if (features.empty() || features.size() != labels.size())
    throw std::invalid_argument("logistic: bad training set");

  BinaryLogistic clf;
  clf.weights.assign(features.front().size(), 0.0);

  std::vector<size_t> order(features.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    Rng rng(derive_seed(seed, "logistic_epoch", static_cast<uint64_t>(epoch)));
    rng.shuffle(order);
    for (size_t idx : order) {
      const std::vector<double>& x = features[idx];
      double err = clf.prob(x) - static_cast<double>(labels[idx]);
      for (size_t i = 0; i < x.size(); ++i)
        clf.weights[i] -= learning_rate * err * x[i];
      clf.bias -= learning_rate * err;
    }
  }
  return clf;
}

std::vector<ShadowExample> collect_shadow_examples(const Dataset& pool,
                                                   const MembershipConfig& cfg,
                                                   uint64_t seed) {
  if (cfg.n_shadow < 1)
    throw std::invalid_argument("membership: n_shadow must be >= 1");
  if (cfg.shadow_train_size < 1)
    throw std::invalid_argument("membership: shadow_train_size must be >= 1");
  if (pool.size() < 2 * static_cast<size_t>(cfg.shadow_train_size))
    throw std::invalid_argument(
        "membership: pool too small for shadow train + validation sets");

  std::vector<std::vector<ShadowExample>> per_shadow(cfg.n_shadow);
  parallel_for(static_cast<size_t>(cfg.n_shadow), [&](size_t i) {
    Rng draw(derive_seed(seed, "shadow_draw", i));
    std::vector<size_t> perm = draw.permutation(pool.size());
    size_t sts = static_cast<size_t>(cfg.shadow_train_size);

    Dataset shadow_train;
    shadow_train.name = pool.name;
    shadow_train.dim = pool.dim;
    shadow_train.num_classes = pool.num_classes;
    shadow_train.domain = pool.domain;
    for (size_t k = 0; k < sts; ++k)
      shadow_train.samples.push_back(pool.samples[perm[k]]);

    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(seed, "shadow_train", i);
    Model shadow = train(init_model(cfg.model, derive_seed(seed, "shadow_init", i)),
                         shadow_train, tc);

    std::vector<ShadowExample>& rows = per_shadow[i];
    rows.reserve(2 * sts);
    for (size_t k = 0; k < 2 * sts; ++k) {
      const Sample& s = pool.samples[perm[k]];
      rows.push_back({predict_proba(shadow, s.features), s.label,
                      static_cast<uint8_t>(k < sts ? 1 : 0)});
    }
  });

  std::vector<ShadowExample> examples;
  examples.reserve(2 * static_cast<size_t>(cfg.shadow_train_size) *
                   cfg.n_shadow);
  for (auto& rows : per_shadow)
    for (ShadowExample& row : rows) examples.push_back(std::move(row));
  return examples;
}

MembershipAttackModel membership_attack_train(const Dataset& pool,
                                              const MembershipConfig& cfg,
                                              uint64_t seed) {
  std::vector<ShadowExample> examples =
      collect_shadow_examples(pool, cfg, seed);

  int C = cfg.model.num_classes;
  std::vector<std::vector<std::vector<double>>> xs(C);
  std::vector<std::vector<uint8_t>> ys(C);
  for (const ShadowExample& row : examples) {
    xs[row.true_class].push_back(row.confidence);
    ys[row.true_class].push_back(row.member);
  }

  MembershipAttackModel attack;
  attack.per_class.resize(C);
  for (int c = 0; c < C; ++c) {
    if (xs[c].empty()) {
      // No shadow sample of this class; keep the zero classifier, which
      // answers "in" for everything (bias 0 -> probability 0.5).
      attack.per_class[c].weights.assign(static_cast<size_t>(C), 0.0);
      continue;
    }
    attack.per_class[c] =
        train_logistic(xs[c], ys[c], cfg.attack_epochs, cfg.attack_lr,
                       derive_seed(seed, "attack_class", c));
  }
  return attack;
}

bool membership_infer(const MembershipAttackModel& attack, const Model& target,
                      const Sample& sample) {
  if (sample.label < 0 ||
      sample.label >= static_cast<int>(attack.per_class.size()))
    throw std::invalid_argument("membership: sample label out of range");
  std::vector<double> confidence = predict_proba(target, sample.features);
  return attack.per_class[sample.label].predict(confidence);
}

AttackReport membership_attack_eval(const Model& target,
                                    const std::vector<Sample>& members,
                                    const std::vector<Sample>& non_members,
                                    const MembershipAttackModel& attack) {
  if (members.empty() || non_members.empty())
    throw std::invalid_argument("membership: empty evaluation set");

  int C = static_cast<int>(attack.per_class.size());
  std::vector<bool> predictions, labels;
  std::vector<double> class_correct(C, 0.0), class_total(C, 0.0);

  auto run = [&](const std::vector<Sample>& set, bool is_member) {
    for (const Sample& s : set) {
      bool said_in = membership_infer(attack, target, s);
      predictions.push_back(said_in);
      labels.push_back(is_member);
      class_total[s.label] += 1;
      if (said_in == is_member) class_correct[s.label] += 1;
    }
  };
  run(members, true);
  run(non_members, false);

  AttackReport report;
  report.attack = "membership";
  report.cm = confusion_binary(predictions, labels);
  report.f1_score = f1(*report.cm);
  report.aux["accuracy"] = report.cm->accuracy();
  report.aux["balanced_accuracy"] = report.cm->balanced_accuracy();
  for (int c = 0; c < C; ++c)
    if (class_total[c] > 0)
      report.aux["class" + std::to_string(c) + "_accuracy"] =
          class_correct[c] / class_total[c];

  nlohmann::json echo;
  echo["members"] = members.size();
  echo["non_members"] = non_members.size();
  report.config_echo = echo.dump();
  return report;
}

}  // namespace obfuskit
