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
#include "obfuskit/model.hpp"
#include "support.hpp"

using namespace obfuskit;

namespace {

Dataset tiny_blobs(int classes = 2, int dim = 4, int per_class = 20) {
  return gen_blobs(classes, dim, per_class, 3, 4, 20.0, {0, 255});
}

}  // namespace

TEST_CASE("init_model is deterministic and in range") {
  ModelSpec spec = ModelSpec::mlp(4, 8, 3, {0, 1});
  Model a = init_model(spec, 99);
  Model b = init_model(spec, 99);
  CHECK(get_parameters(a) == get_parameters(b));
  for (double v : get_parameters(a)) {
    CHECK(v >= -0.05);
    CHECK(v <= 0.05);
  }
  Model c = init_model(spec, 100);
  CHECK(get_parameters(a) != get_parameters(c));
}

TEST_CASE("parameter groups have the documented shapes") {
  Model softmax = init_model(ModelSpec::softmax(4, 3, {0, 1}), 1);
  REQUIRE(softmax.params.size() == 2);
  CHECK(softmax.params[0].rows == 4);
  CHECK(softmax.params[0].cols == 3);
  CHECK(softmax.params[1].rows == 3);
  CHECK(softmax.params[1].cols == 1);
  CHECK(softmax.parameter_count() == 15);

  Model mlp = init_model(ModelSpec::mlp(4, 8, 3, {0, 1}), 1);
  REQUIRE(mlp.params.size() == 4);
  CHECK(mlp.params[0].rows == 4);
  CHECK(mlp.params[0].cols == 8);
  CHECK(mlp.params[1].rows == 8);
  CHECK(mlp.params[2].rows == 8);
  CHECK(mlp.params[2].cols == 3);
  CHECK(mlp.params[3].rows == 3);
}

TEST_CASE("zero weights give log(2) loss for two classes") {
  ModelSpec spec = ModelSpec::softmax(3, 2, {0, 1});
  Model m = init_model(spec, 1);
  m = set_parameters(m, std::vector<double>(m.parameter_count(), 0.0));
  std::vector<Sample> batch = {{{0.2, 0.4, 0.9}, 0}, {{0.8, 0.1, 0.3}, 1}};
  LossGradient lg = loss_and_gradient(m, batch);
  CHECK(lg.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central finite differences") {
  for (uint64_t i = 0; i < 25; ++i) {
    testing::GradientCase c = testing::random_gradient_case(1000 + i);
    CHECK(testing::max_gradient_error(c.model, c.batch) <= 1e-4);
  }
}

TEST_CASE("regularizer shifts the loss by half the squared weights") {
  ModelSpec spec0 = ModelSpec::softmax(4, 3, {0, 1}, 0.0);
  ModelSpec spec1 = ModelSpec::softmax(4, 3, {0, 1}, 1.0);
  Model m0 = init_model(spec0, 7);
  Model m1 = init_model(spec1, 7);  // same parameters, different lambda

  std::vector<Sample> batch = {{{0.1, 0.2, 0.3, 0.4}, 1}};
  double l0 = loss_and_gradient(m0, batch).loss;
  double l1 = loss_and_gradient(m1, batch).loss;

  double sq = 0;
  for (double v : m0.params[0].values) sq += v * v;  // weights only
  CHECK(l1 - l0 == doctest::Approx(0.5 * sq).epsilon(1e-12));
}

TEST_CASE("lambda-only weight gradient is exactly lambda times weights") {
  // Inputs at the domain floor rescale to zero, so the data term contributes
  // nothing to the weight gradient and only the regularizer remains.
  ModelSpec spec = ModelSpec::softmax(4, 3, {0, 255}, 0.7);
  Model m = init_model(spec, 11);
  std::vector<Sample> batch = {{{0.0, 0.0, 0.0, 0.0}, 2}};
  LossGradient lg = loss_and_gradient(m, batch);
  for (size_t k = 0; k < m.params[0].values.size(); ++k)
    CHECK(lg.grads[0].values[k] == 0.7 * m.params[0].values[k]);
}

TEST_CASE("loss_and_gradient validates its inputs") {
  Model m = init_model(ModelSpec::softmax(4, 3, {0, 1}), 1);
  CHECK_THROWS(loss_and_gradient(m, {}));
  CHECK_THROWS(loss_and_gradient(m, {{{0.1, 0.2}, 0}}));  // wrong dim
}

TEST_CASE("zero epochs leave the parameters untouched") {
  Dataset d = tiny_blobs();
  ModelSpec spec = ModelSpec::softmax(d.dim, d.num_classes, d.domain);
  Model m = init_model(spec, 5);
  TrainConfig cfg;
  cfg.epochs = 0;
  Model out = train(m, d, cfg);
  CHECK(get_parameters(out) == get_parameters(m));
}

TEST_CASE("linearly separable two-class data trains to accuracy 1") {
  // 40 points in 2-D, classes on opposite sides of a margin.
  Dataset d;
  d.name = "sep";
  d.dim = 2;
  d.num_classes = 2;
  d.domain = {0.0, 1.0};
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    d.samples.push_back({{rng.uniform(0.0, 0.35), rng.uniform(0.0, 1.0)}, 0});
    d.samples.push_back({{rng.uniform(0.65, 1.0), rng.uniform(0.0, 1.0)}, 1});
  }
  ModelSpec spec = ModelSpec::softmax(2, 2, d.domain);
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.5;
  cfg.seed = 2;
  Model m = train(init_model(spec, 1), d, cfg);
  CHECK(accuracy(m, d) == 1.0);
}

TEST_CASE("full-batch training loss is non-increasing at a small step") {
  Dataset d = gen_blobs(2, 4, 15, 8, 9, 0.15, {0, 1});
  ModelSpec spec = ModelSpec::softmax(d.dim, d.num_classes, d.domain);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.batch_size = static_cast<int>(d.size());  // full batch
  cfg.learning_rate = 0.01;
  cfg.seed = 3;

  std::vector<double> losses;
  train(init_model(spec, 4), d, cfg, [&](int, const Model& m) {
    losses.push_back(loss_and_gradient(m, d.samples).loss);
  });
  REQUIRE(losses.size() == 50);
  for (size_t i = 1; i < losses.size(); ++i)
    CHECK(losses[i] <= losses[i - 1] + 1e-12);
}

TEST_CASE("predict_proba is a probability vector") {
  Model m = init_model(ModelSpec::mlp(6, 5, 4, {0, 255}), 17);
  Rng rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.uniform(0.0, 255.0);
    std::vector<double> p = predict_proba(m, x);
    REQUIRE(p.size() == 4);
    double sum = 0;
    for (double v : p) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("zero weights predict the uniform distribution") {
  Model m = init_model(ModelSpec::softmax(3, 4, {0, 1}), 1);
  m = set_parameters(m, std::vector<double>(m.parameter_count(), 0.0));
  std::vector<double> p = predict_proba(m, {0.5, 0.1, 0.9});
  for (double v : p) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("predict_proba rejects mismatched feature dimensions") {
  Model m = init_model(ModelSpec::softmax(3, 2, {0, 1}), 1);
  CHECK_THROWS(predict_proba(m, {0.5, 0.1}));
  CHECK_THROWS(predict_proba(m, {0.5, 0.1, 0.9, 0.2}));
}

TEST_CASE("accuracy counts argmax matches") {
  // Hand-built model: predicts class 0 whenever the single feature is
  // positive after rescaling; 3 of the 4 samples below are labeled that way.
  ModelSpec spec = ModelSpec::softmax(1, 2, {0, 1});
  Model m = init_model(spec, 1);
  m = set_parameters(m, {2.0, 0.0, 0.0, 0.0});  // weight row, then biases
  Dataset d;
  d.name = "hand";
  d.dim = 1;
  d.num_classes = 2;
  d.domain = {0.0, 1.0};
  d.samples = {{{0.9}, 0}, {{0.7}, 0}, {{0.5}, 0}, {{0.2}, 1}};
  CHECK(accuracy(m, d) == doctest::Approx(0.75));

  for (const Sample& s : d.samples) {
    std::vector<double> p = predict_proba(m, s.features);
    int argmax = p[0] >= p[1] ? 0 : 1;
    CHECK(argmax == predict_label(m, s.features));
  }
}

TEST_CASE("get/set parameters round trip and index stably") {
  Model m = init_model(ModelSpec::mlp(4, 8, 3, {0, 1}), 23);
  std::vector<double> flat = get_parameters(m);
  CHECK(flat.size() == m.parameter_count());
  Model same = set_parameters(m, flat);
  CHECK(get_parameters(same) == flat);

  // Perturbing flat coordinate k lands in exactly one group slot.
  size_t k = 4 * 8 + 3;  // fourth entry of layer1/bias
  flat[k] += 1.0;
  Model bumped = set_parameters(m, flat);
  CHECK(bumped.params[1].values[3] == m.params[1].values[3] + 1.0);
  CHECK(bumped.params[0].values == m.params[0].values);
  CHECK(bumped.params[2].values == m.params[2].values);

  CHECK_THROWS(set_parameters(m, std::vector<double>(flat.size() - 1, 0.0)));
}

TEST_CASE("training is bit-deterministic") {
  Dataset d = tiny_blobs(3, 6, 15);
  ModelSpec spec = ModelSpec::mlp(d.dim, 8, d.num_classes, d.domain);
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.batch_size = 7;
  cfg.learning_rate = 0.2;
  cfg.seed = 77;
  Model a = train(init_model(spec, 5), d, cfg);
  Model b = train(init_model(spec, 5), d, cfg);
  CHECK(get_parameters(a) == get_parameters(b));
}

TEST_CASE("train validates the dataset") {
  ModelSpec spec = ModelSpec::softmax(4, 2, {0, 255});
  Model m = init_model(spec, 1);
  Dataset empty;
  empty.name = "empty";
  empty.dim = 4;
  empty.num_classes = 2;
  empty.domain = {0, 255};
  TrainConfig cfg;
  CHECK_THROWS(train(m, empty, cfg));

  Dataset wrong = tiny_blobs(2, 3, 5);  // dim 3 vs model dim 4
  CHECK_THROWS(train(m, wrong, cfg));
}

TEST_CASE("model json round trip is bit exact") {
  Model m = init_model(ModelSpec::mlp(5, 7, 3, {0, 255}, 0.01,
                                      Activation::Sigmoid),
                       31);
  std::string text = model_to_json_string(m);
  Model back = model_from_json_string(text);
  CHECK(get_parameters(back) == get_parameters(m));
  CHECK(back.spec.input_domain.hi == 255.0);
  CHECK(back.spec.reg_weight == 0.01);
}
