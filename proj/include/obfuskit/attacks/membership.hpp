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

#ifndef OBFUSKIT_ATTACKS_MEMBERSHIP_HPP
#define OBFUSKIT_ATTACKS_MEMBERSHIP_HPP

#include <cstdint>
#include <vector>

#include "obfuskit/attacks/report.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"

namespace obfuskit {

/// Binary logistic regression trained by plain SGD from zero weights.
struct BinaryLogistic {
  std::vector<double> weights;
  double bias = 0.0;

  double prob(const std::vector<double>& x) const;
  bool predict(const std::vector<double>& x) const { return prob(x) >= 0.5; }
};

BinaryLogistic train_logistic(const std::vector<std::vector<double>>& features,
                              const std::vector<uint8_t>& labels, int epochs,
                              double learning_rate, uint64_t seed);

/// One in/out classifier per target class, each reading the target model's
/// confidence vector for a queried sample.
struct MembershipAttackModel {
  std::vector<BinaryLogistic> per_class;
};

struct MembershipConfig {
  ModelSpec model;    // shadow models use the target's own algorithm
  TrainConfig train;  // and its training recipe; seeds are derived per shadow
  int n_shadow = 30;
  int shadow_train_size = 100;  // samples per shadow training set
  int attack_epochs = 100;
  double attack_lr = 0.5;
};

/// One labeled row of the attack classifier's training material: the shadow
/// model's confidence vector for a sample, the sample's true class, and
/// whether it was in the shadow's training set.
struct ShadowExample {
  std::vector<double> confidence;
  int true_class = 0;
  uint8_t member = 0;
};

/// Runs the shadow models and collects their labeled confidence vectors:
/// every shadow draws disjoint train/validation sets of equal size from the
/// pool, is trained like the target, and labels its own confidence vectors
/// in (1) or out (0). Deterministic given seed, for any worker count.
std::vector<ShadowExample> collect_shadow_examples(const Dataset& pool,
                                                   const MembershipConfig& cfg,
                                                   uint64_t seed);

/// Fits the per-class attack classifiers on collect_shadow_examples output;
/// rows are routed to the classifier of the sample's true class.
MembershipAttackModel membership_attack_train(const Dataset& pool,
                                              const MembershipConfig& cfg,
                                              uint64_t seed);

/// true = "in the training set".
bool membership_infer(const MembershipAttackModel& attack, const Model& target,
                      const Sample& sample);

/// Confusion matrix and F1 ("in" positive) over member/non-member sets,
/// plus balanced and per-class inference accuracy.
AttackReport membership_attack_eval(const Model& target,
                                    const std::vector<Sample>& members,
                                    const std::vector<Sample>& non_members,
                                    const MembershipAttackModel& attack);

}  // namespace obfuskit

#endif  // OBFUSKIT_ATTACKS_MEMBERSHIP_HPP
