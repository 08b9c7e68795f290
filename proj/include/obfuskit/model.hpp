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

#ifndef OBFUSKIT_MODEL_HPP
#define OBFUSKIT_MODEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obfuskit/dataset.hpp"

namespace obfuskit {

enum class Activation { ReLU, Sigmoid };

/// Architecture and hyper-parameters of a learner: multinomial softmax
/// regression or a one-hidden-layer perceptron. Inputs are linearly rescaled
/// from input_domain to [0, 1] inside predict/train, so callers work in the
/// raw feature domain throughout.
struct ModelSpec {
  enum class Arch { Softmax, Mlp };

  Arch arch = Arch::Softmax;
  int hidden_width = 0;  // Mlp only, >= 1
  int input_dim = 0;
  int num_classes = 0;
  double reg_weight = 0.0;  // L2 coefficient on weight matrices
  Activation activation = Activation::ReLU;  // Mlp only
  Domain input_domain{0.0, 1.0};

  void validate() const;

  static ModelSpec softmax(int input_dim, int num_classes, Domain domain,
                           double reg_weight = 0.0);
  static ModelSpec mlp(int input_dim, int hidden_width, int num_classes,
                       Domain domain, double reg_weight = 0.0,
                       Activation activation = Activation::ReLU);
};

/// One named parameter group (a rows x cols matrix; cols == 1 for biases).
/// Weight groups participate in the L2 regularizer, bias groups do not.
struct ParamGroup {
  std::string name;
  int rows = 0;
  int cols = 0;
  bool is_weight = false;
  std::vector<double> values;  // row-major, rows * cols entries

  double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return values[static_cast<size_t>(r) * cols + c];
  }
};

struct Model {
  ModelSpec spec;
  std::vector<ParamGroup> params;

  size_t parameter_count() const;
};

/// Penalty that pushes the signs of the leading parameters toward a bit
/// string during training: weight * sum_i max(0, -b_i * theta_i) with
/// b_i = +1 for bit 1 and -1 for bit 0.
struct SignPenalty {
  std::vector<uint8_t> bits;  // 0/1 per leading flat parameter
  double weight = 0.0;        // > 0
};

struct TrainConfig {
  int epochs = 1;
  int batch_size = 32;
  double learning_rate = 0.1;
  uint64_t seed = 0;
  std::optional<SignPenalty> sign_penalty;

  void validate() const;
};

/// Gradient of the training loss, one group per model parameter group.
struct LossGradient {
  double loss = 0.0;
  std::vector<ParamGroup> grads;
};

/// Called after each completed epoch (1-based) during training.
using EpochHook = std::function<void(int epoch, const Model& model)>;

/// Fresh model with parameters drawn uniformly from [-0.05, 0.05].
Model init_model(const ModelSpec& spec, uint64_t seed);

/// Mean cross-entropy over the batch plus the L2 term, with analytic
/// gradients of the same shape as the parameters. Features are in the raw
/// domain. Throws on an empty batch or a dimension mismatch.
LossGradient loss_and_gradient(const Model& model,
                               const std::vector<Sample>& batch);

/// Mini-batch SGD: cfg.epochs passes over the dataset, reshuffled each epoch
/// from a per-epoch stream derived from cfg.seed. Bit-deterministic given
/// (model, data, cfg). epochs == 0 returns the model unchanged.
Model train(Model model, const Dataset& data, const TrainConfig& cfg,
            const EpochHook& hook = nullptr);

/// Class probabilities for one input (raw domain). Entries are nonnegative
/// and sum to 1.
std::vector<double> predict_proba(const Model& model,
                                  const std::vector<double>& features);

/// argmax class of predict_proba; ties break toward the lowest index.
int predict_label(const Model& model, const std::vector<double>& features);

/// Fraction of samples whose predicted label matches the ground truth.
double accuracy(const Model& model, const Dataset& data);

/// Flat white-box view of the parameters: get/set round-trip exactly and the
/// ordering is stable (group order, row-major within a group).
std::vector<double> get_parameters(const Model& model);
Model set_parameters(Model model, const std::vector<double>& flat);

/// d log p[cls] / d features at the given input (raw domain). Used by the
/// gradient-ascent inversion.
std::vector<double> input_log_prob_gradient(const Model& model,
                                            const std::vector<double>& features,
                                            int cls);

/// Log-probability of one class, computed stably from the logits.
double log_prob(const Model& model, const std::vector<double>& features,
                int cls);

// JSON (de)serialization. Parameter values survive bit-exactly, so models
// carrying mantissa-encoded payloads can be saved and reloaded.
std::string model_to_json_string(const Model& model);
Model model_from_json_string(const std::string& text);
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace obfuskit

#endif  // OBFUSKIT_MODEL_HPP
