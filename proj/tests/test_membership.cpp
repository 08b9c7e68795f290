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

#include <cmath>

#include "doctest.h"
#include "obfuskit/attacks/membership.hpp"
#include "obfuskit/rng.hpp"
#include "support.hpp"

using namespace obfuskit;

namespace {

MembershipConfig small_config(const Dataset& pool) {
  MembershipConfig cfg;
  cfg.model = ModelSpec::mlp(pool.dim, 8, pool.num_classes, pool.domain);
  cfg.train.epochs = 60;
  cfg.train.batch_size = 16;
  cfg.train.learning_rate = 0.5;
  cfg.n_shadow = 6;
  cfg.shadow_train_size = 40;
  cfg.attack_epochs = 50;
  cfg.attack_lr = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("train_logistic separates simple data and is deterministic") {
  std::vector<std::vector<double>> xs;
  std::vector<uint8_t> ys;
  Rng rng(1);
  for (int i = 0; i < 40; ++i) {
    double offset = i % 2 ? 2.0 : -2.0;
    xs.push_back({offset + rng.uniform(-0.5, 0.5)});
    ys.push_back(i % 2 ? 1 : 0);
  }
  BinaryLogistic a = train_logistic(xs, ys, 100, 0.5, 7);
  BinaryLogistic b = train_logistic(xs, ys, 100, 0.5, 7);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  for (size_t i = 0; i < xs.size(); ++i)
    CHECK(a.predict(xs[i]) == (ys[i] == 1));
}

TEST_CASE("zero-weight classifiers answer by bias sign alone") {
  MembershipAttackModel attack;
  attack.per_class.resize(2);
  attack.per_class[0].weights = {0.0, 0.0};
  attack.per_class[0].bias = 1.0;
  attack.per_class[1].weights = {0.0, 0.0};
  attack.per_class[1].bias = -1.0;

  Model target = init_model(ModelSpec::softmax(3, 2, {0, 255}), 1);
  Sample in_class0{{10.0, 20.0, 30.0}, 0};
  Sample in_class1{{10.0, 20.0, 30.0}, 1};
  CHECK(membership_infer(attack, target, in_class0));
  CHECK_FALSE(membership_infer(attack, target, in_class1));
}

TEST_CASE("shadow examples have the documented shape and counts") {
  Dataset pool = gen_blobs(3, 8, 60, 5, 6, 60.0, {0, 255});
  MembershipConfig cfg = small_config(pool);
  cfg.train.epochs = 10;  // counts only, no need to fit well

  std::vector<ShadowExample> rows =
      collect_shadow_examples(pool, cfg, 42);
  REQUIRE(rows.size() ==
          static_cast<size_t>(cfg.n_shadow) * 2 * cfg.shadow_train_size);

  // Expected per-class share is n_shadow * 2 * sts / C; allow sampling slack.
  std::vector<double> per_class(3, 0.0);
  size_t members = 0;
  for (const ShadowExample& row : rows) {
    REQUIRE(row.confidence.size() == 3);
    per_class[row.true_class] += 1;
    members += row.member;
  }
  CHECK(members == rows.size() / 2);
  double expected = static_cast<double>(rows.size()) / 3.0;
  for (double count : per_class) {
    CHECK(count > 0.5 * expected);
    CHECK(count < 1.5 * expected);
  }
}

TEST_CASE("attack classifier input length equals the class count") {
  Dataset pool = gen_blobs(3, 8, 60, 5, 6, 60.0, {0, 255});
  MembershipConfig cfg = small_config(pool);
  cfg.train.epochs = 10;
  MembershipAttackModel attack = membership_attack_train(pool, cfg, 42);
  REQUIRE(attack.per_class.size() == 3);
  for (const BinaryLogistic& clf : attack.per_class)
    CHECK(clf.weights.size() == 3);
}

TEST_CASE("attack training is deterministic") {
  Dataset pool = gen_blobs(2, 6, 50, 5, 6, 60.0, {0, 255});
  MembershipConfig cfg = small_config(pool);
  cfg.train.epochs = 15;
  MembershipAttackModel a = membership_attack_train(pool, cfg, 9);
  MembershipAttackModel b = membership_attack_train(pool, cfg, 9);
  REQUIRE(a.per_class.size() == b.per_class.size());
  for (size_t c = 0; c < a.per_class.size(); ++c) {
    CHECK(a.per_class[c].weights == b.per_class[c].weights);
    CHECK(a.per_class[c].bias == b.per_class[c].bias);
  }
}

TEST_CASE("overfit targets leak membership direction") {
  // Overlapping blobs + tiny training set -> memorization. Members should be
  // called "in" more often than non-members.
  Dataset data = gen_blobs(2, 8, 150, 31, 32, 95.0, {0, 255});
  Rng carve(9);
  std::vector<size_t> perm = carve.permutation(data.size());

  auto take = [&](size_t from, size_t count) {
    Dataset out;
    out.name = data.name;
    out.dim = data.dim;
    out.num_classes = data.num_classes;
    out.domain = data.domain;
    for (size_t k = from; k < from + count; ++k)
      out.samples.push_back(data.samples[perm[k]]);
    return out;
  };
  Dataset members = take(0, 40);
  Dataset non_members = take(40, 40);
  Dataset pool = take(80, data.size() - 80);

  MembershipConfig cfg;
  cfg.model = ModelSpec::mlp(data.dim, 16, data.num_classes, data.domain);
  cfg.train.epochs = 150;
  cfg.train.batch_size = 16;
  cfg.train.learning_rate = 0.5;
  cfg.n_shadow = 8;
  cfg.shadow_train_size = 40;
  cfg.attack_epochs = 60;
  cfg.attack_lr = 0.5;

  MembershipAttackModel attack = membership_attack_train(pool, cfg, 77);
  TrainConfig tc = cfg.train;
  tc.seed = 78;
  Model target = train(init_model(cfg.model, 79), members, tc);

  AttackReport report =
      membership_attack_eval(target, members.samples, non_members.samples, attack);
  REQUIRE(report.cm.has_value());
  double in_rate_members = report.cm->tp / (report.cm->tp + report.cm->fn);
  double in_rate_non = report.cm->fp / (report.cm->fp + report.cm->tn);
  CHECK(in_rate_members > in_rate_non);
  CHECK(report.f1_score.has_value());
  CHECK(report.aux.count("balanced_accuracy") == 1);
  CHECK(report.aux.count("class0_accuracy") == 1);
}

TEST_CASE("membership evaluation validates inputs") {
  MembershipAttackModel attack;
  attack.per_class.resize(2);
  attack.per_class[0].weights = {0.0, 0.0};
  attack.per_class[1].weights = {0.0, 0.0};
  Model target = init_model(ModelSpec::softmax(3, 2, {0, 255}), 1);
  std::vector<Sample> some = {{{1.0, 2.0, 3.0}, 0}};
  CHECK_THROWS(membership_attack_eval(target, {}, some, attack));
  CHECK_THROWS(membership_attack_eval(target, some, {}, attack));
}

TEST_CASE("attack training rejects undersized pools") {
  Dataset pool = gen_blobs(2, 4, 10, 1, 2, 20.0, {0, 255});
  MembershipConfig cfg = small_config(pool);
  cfg.shadow_train_size = 50;  // needs 100 samples, pool has 20
  CHECK_THROWS(membership_attack_train(pool, cfg, 1));
  cfg.shadow_train_size = 5;
  cfg.n_shadow = 0;
  CHECK_THROWS(membership_attack_train(pool, cfg, 1));
}
