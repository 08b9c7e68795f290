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
#include "obfuskit/attacks/inversion.hpp"
#include "obfuskit/metrics.hpp"
#include "support.hpp"

using namespace obfuskit;

namespace {

InversionConfig bench_config(const Dataset& data) {
  InversionConfig cfg;
  cfg.model = ModelSpec::softmax(data.dim, data.num_classes, data.domain);
  cfg.train.epochs = 120;
  cfg.train.batch_size = 16;
  cfg.train.learning_rate = 0.5;
  cfg.steps = 300;
  cfg.seed = 50;
  return cfg;
}

}  // namespace

TEST_CASE("inversion climbs the target confidence") {
  Dataset data = testing::two_blob_dataset(8, 40, 20.0, 51);
  ModelSpec spec = ModelSpec::softmax(data.dim, data.num_classes, data.domain);
  TrainConfig cfg;
  cfg.epochs = 100;
  cfg.batch_size = 16;
  cfg.learning_rate = 0.5;
  cfg.seed = 52;
  Model m = train(init_model(spec, 53), data, cfg);

  for (int cls = 0; cls < 2; ++cls) {
    std::vector<double> start = domain_midpoint(data.dim, data.domain);
    double before = std::exp(log_prob(m, start, cls));
    std::vector<double> x = invert_class(m, cls, 200, 128.0, start, data.domain);
    double after = std::exp(log_prob(m, x, cls));
    CHECK(after >= before);
    CHECK(after > 0.9);  // separable classes saturate
    for (double v : x) {
      CHECK(v >= 0.0);
      CHECK(v <= 255.0);
    }
  }
}

TEST_CASE("inversion recovers the class direction on separable blobs") {
  Dataset data = testing::two_blob_dataset(8, 40, 20.0, 54);
  ModelSpec spec = ModelSpec::softmax(data.dim, data.num_classes, data.domain);
  TrainConfig cfg;
  cfg.epochs = 120;
  cfg.batch_size = 16;
  cfg.learning_rate = 0.5;
  cfg.seed = 55;
  Model m = train(init_model(spec, 56), data, cfg);

  std::vector<double> mean = class_mean(data, 1);
  std::vector<double> start = domain_midpoint(data.dim, data.domain);
  std::vector<double> x = invert_class(m, 1, 300, 128.0, start, data.domain);

  double mid = data.domain.midpoint();
  std::vector<double> xc(x.size()), mc(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    xc[i] = x[i] - mid;
    mc[i] = mean[i] - mid;
  }
  CHECK(cosine_similarity(xc, mc) > 0.8);
}

TEST_CASE("invert_class validates its inputs") {
  Model m = init_model(ModelSpec::softmax(3, 2, {0, 255}), 1);
  std::vector<double> mid = domain_midpoint(3, {0, 255});
  CHECK_THROWS(invert_class(m, 5, 10, 1.0, mid, {0, 255}));   // bad class
  CHECK_THROWS(invert_class(m, 0, 0, 1.0, mid, {0, 255}));    // no steps
  CHECK_THROWS(invert_class(m, 0, 10, 0.0, mid, {0, 255}));   // no step size
  CHECK_THROWS(invert_class(m, 0, 10, 1.0, {300.0, 0.0, 0.0}, {0, 255}));
}

TEST_CASE("inversion eval reports similarity and accuracy") {
  Dataset data = testing::two_blob_dataset(8, 60, 20.0, 57);
  InversionConfig cfg = bench_config(data);

  AttackReport baseline = inversion_attack_eval(data, 1, std::nullopt, cfg);
  CHECK(baseline.aux.at("cosine_similarity") > 0.8);
  CHECK(baseline.aux.at("confidence_final") >=
        baseline.aux.at("confidence_init"));
  CHECK(baseline.artifacts.count("inverted") == 1);
  CHECK(baseline.artifacts.count("class_mean") == 1);

  SUBCASE("a zero-ratio defense changes nothing measurable") {
    AttackReport r0 =
        inversion_attack_eval(data, 1, GroupParams{0.0, 5.0}, cfg);
    CHECK(r0.aux == baseline.aux);
  }
  SUBCASE("curve output has one point per epoch") {
    AccuracyCurve curve;
    inversion_attack_eval(data, 1, std::nullopt, cfg, &curve);
    CHECK(curve.points.size() == static_cast<size_t>(cfg.train.epochs));
  }
  SUBCASE("bad target class is rejected") {
    CHECK_THROWS(inversion_attack_eval(data, 7, std::nullopt, cfg));
  }
}

TEST_CASE("full augmentation obscures the inverted direction") {
  Dataset data = testing::two_blob_dataset(8, 60, 20.0, 58);
  InversionConfig cfg = bench_config(data);

  AttackReport baseline = inversion_attack_eval(data, 1, std::nullopt, cfg);
  AttackReport defended =
      inversion_attack_eval(data, 1, GroupParams{1.0, 5.0}, cfg);
  CHECK(defended.aux.at("cosine_similarity") <
        baseline.aux.at("cosine_similarity"));
}
