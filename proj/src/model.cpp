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

#include "obfuskit/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

void ModelSpec::validate() const {
  if (input_dim < 1) throw std::invalid_argument("spec: input_dim must be >= 1");
  if (num_classes < 2)
    throw std::invalid_argument("spec: num_classes must be >= 2");
  if (reg_weight < 0)
    throw std::invalid_argument("spec: reg_weight must be >= 0");
  if (arch == Arch::Mlp && hidden_width < 1)
    throw std::invalid_argument("spec: hidden_width must be >= 1 for mlp");
  if (!(input_domain.lo < input_domain.hi))
    throw std::invalid_argument("spec: input_domain lo must be < hi");
}

ModelSpec ModelSpec::softmax(int input_dim, int num_classes, Domain domain,
                             double reg_weight) {
  ModelSpec s;
  s.arch = Arch::Softmax;
  s.input_dim = input_dim;
  s.num_classes = num_classes;
  s.input_domain = domain;
  s.reg_weight = reg_weight;
  s.validate();
  return s;
}

ModelSpec ModelSpec::mlp(int input_dim, int hidden_width, int num_classes,
                         Domain domain, double reg_weight,
                         Activation activation) {
  ModelSpec s;
  s.arch = Arch::Mlp;
  s.input_dim = input_dim;
  s.hidden_width = hidden_width;
  s.num_classes = num_classes;
  s.input_domain = domain;
  s.reg_weight = reg_weight;
  s.activation = activation;
  s.validate();
  return s;
}

void TrainConfig::validate() const {
  if (epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
  if (batch_size < 1)
    throw std::invalid_argument("train: batch_size must be >= 1");
  if (!(learning_rate > 0))
    throw std::invalid_argument("train: learning_rate must be > 0");
  if (sign_penalty && !(sign_penalty->weight > 0))
    throw std::invalid_argument("train: sign penalty weight must be > 0");
}

size_t Model::parameter_count() const {
  size_t n = 0;
  for (const ParamGroup& g : params) n += g.values.size();
  return n;
}

namespace {

std::vector<ParamGroup> group_shapes(const ModelSpec& spec) {
  std::vector<ParamGroup> groups;
  auto add = [&](const std::string& name, int rows, int cols, bool is_weight) {
    ParamGroup g;
    g.name = name;
    g.rows = rows;
    g.cols = cols;
    g.is_weight = is_weight;
    g.values.assign(static_cast<size_t>(rows) * cols, 0.0);
    groups.push_back(std::move(g));
  };
  if (spec.arch == ModelSpec::Arch::Softmax) {
    add("linear/weight", spec.input_dim, spec.num_classes, true);
    add("linear/bias", spec.num_classes, 1, false);
  } else {
    add("layer1/weight", spec.input_dim, spec.hidden_width, true);
    add("layer1/bias", spec.hidden_width, 1, false);
    add("layer2/weight", spec.hidden_width, spec.num_classes, true);
    add("layer2/bias", spec.num_classes, 1, false);
  }
  return groups;
}

double activate(Activation act, double a) {
  if (act == Activation::ReLU) return a > 0 ? a : 0.0;
  return 1.0 / (1.0 + std::exp(-a));
}

double activate_grad(Activation act, double a) {
  if (act == Activation::ReLU) return a > 0 ? 1.0 : 0.0;
  double s = 1.0 / (1.0 + std::exp(-a));
  return s * (1.0 - s);
}

// Intermediate values of one forward pass, kept for backprop.
struct Forward {
  std::vector<double> input;       // rescaled to [0,1]
  std::vector<double> hidden_pre;  // mlp pre-activations
  std::vector<double> hidden;      // mlp activations
  std::vector<double> logits;
  std::vector<double> proba;
};

void softmax_inplace(std::vector<double>& z) {
  double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

void run_forward(const Model& model, const std::vector<double>& features,
                 Forward& fwd) {
  const ModelSpec& spec = model.spec;
  if (static_cast<int>(features.size()) != spec.input_dim)
    throw std::invalid_argument("model: feature dimension mismatch");

  double scale = 1.0 / spec.input_domain.width();
  fwd.input.resize(spec.input_dim);
  for (int j = 0; j < spec.input_dim; ++j)
    fwd.input[j] = (features[j] - spec.input_domain.lo) * scale;

  if (spec.arch == ModelSpec::Arch::Softmax) {
    const ParamGroup& w = model.params[0];
    const ParamGroup& b = model.params[1];
    fwd.logits.assign(spec.num_classes, 0.0);
    for (int c = 0; c < spec.num_classes; ++c) fwd.logits[c] = b.values[c];
    for (int i = 0; i < spec.input_dim; ++i) {
      double xi = fwd.input[i];
      const double* row = &w.values[static_cast<size_t>(i) * spec.num_classes];
      for (int c = 0; c < spec.num_classes; ++c) fwd.logits[c] += xi * row[c];
    }
  } else {
    const ParamGroup& w1 = model.params[0];
    const ParamGroup& b1 = model.params[1];
    const ParamGroup& w2 = model.params[2];
    const ParamGroup& b2 = model.params[3];
    int h = spec.hidden_width;
    fwd.hidden_pre.assign(h, 0.0);
    for (int j = 0; j < h; ++j) fwd.hidden_pre[j] = b1.values[j];
    for (int i = 0; i < spec.input_dim; ++i) {
      double xi = fwd.input[i];
      const double* row = &w1.values[static_cast<size_t>(i) * h];
      for (int j = 0; j < h; ++j) fwd.hidden_pre[j] += xi * row[j];
    }
    fwd.hidden.resize(h);
    for (int j = 0; j < h; ++j)
      fwd.hidden[j] = activate(spec.activation, fwd.hidden_pre[j]);

    fwd.logits.assign(spec.num_classes, 0.0);
    for (int c = 0; c < spec.num_classes; ++c) fwd.logits[c] = b2.values[c];
    for (int j = 0; j < h; ++j) {
      double hj = fwd.hidden[j];
      const double* row = &w2.values[static_cast<size_t>(j) * spec.num_classes];
      for (int c = 0; c < spec.num_classes; ++c) fwd.logits[c] += hj * row[c];
    }
  }
  fwd.proba = fwd.logits;
  softmax_inplace(fwd.proba);
}

// Adds the per-sample cross-entropy gradient, scaled by inv_batch, into
// grads. fwd must hold the forward pass of this sample.
void accumulate_backward(const Model& model, const Forward& fwd, int label,
                         double inv_batch, std::vector<ParamGroup>& grads) {
  const ModelSpec& spec = model.spec;
  int C = spec.num_classes;

  std::vector<double> dz(C);
  for (int c = 0; c < C; ++c)
    dz[c] = (fwd.proba[c] - (c == label ? 1.0 : 0.0)) * inv_batch;

  if (spec.arch == ModelSpec::Arch::Softmax) {
    ParamGroup& gw = grads[0];
    ParamGroup& gb = grads[1];
    for (int i = 0; i < spec.input_dim; ++i) {
      double xi = fwd.input[i];
      double* row = &gw.values[static_cast<size_t>(i) * C];
      for (int c = 0; c < C; ++c) row[c] += xi * dz[c];
    }
    for (int c = 0; c < C; ++c) gb.values[c] += dz[c];
  } else {
    const ParamGroup& w2 = model.params[2];
    ParamGroup& gw1 = grads[0];
    ParamGroup& gb1 = grads[1];
    ParamGroup& gw2 = grads[2];
    ParamGroup& gb2 = grads[3];
    int h = spec.hidden_width;

    for (int j = 0; j < h; ++j) {
      double hj = fwd.hidden[j];
      double* row = &gw2.values[static_cast<size_t>(j) * C];
      for (int c = 0; c < C; ++c) row[c] += hj * dz[c];
    }
    for (int c = 0; c < C; ++c) gb2.values[c] += dz[c];

    std::vector<double> da(h);
    for (int j = 0; j < h; ++j) {
      double dh = 0.0;
      const double* row = &w2.values[static_cast<size_t>(j) * C];
      for (int c = 0; c < C; ++c) dh += row[c] * dz[c];
      da[j] = dh * activate_grad(spec.activation, fwd.hidden_pre[j]);
    }
    for (int i = 0; i < spec.input_dim; ++i) {
      double xi = fwd.input[i];
      double* row = &gw1.values[static_cast<size_t>(i) * h];
      for (int j = 0; j < h; ++j) row[j] += xi * da[j];
    }
    for (int j = 0; j < h; ++j) gb1.values[j] += da[j];
  }
}

double regularization_term(const Model& model) {
  if (model.spec.reg_weight == 0.0) return 0.0;
  double sq = 0.0;
  for (const ParamGroup& g : model.params) {
    if (!g.is_weight) continue;
    for (double v : g.values) sq += v * v;
  }
  return 0.5 * model.spec.reg_weight * sq;
}

void add_regularization_gradient(const Model& model,
                                 std::vector<ParamGroup>& grads) {
  if (model.spec.reg_weight == 0.0) return;
  for (size_t gi = 0; gi < model.params.size(); ++gi) {
    if (!model.params[gi].is_weight) continue;
    const std::vector<double>& v = model.params[gi].values;
    std::vector<double>& g = grads[gi].values;
    for (size_t k = 0; k < v.size(); ++k) g[k] += model.spec.reg_weight * v[k];
  }
}

// Hinge penalty on the signs of the leading flat parameters. Returns the
// penalty value and adds its subgradient into grads.
double add_sign_penalty(const Model& model, const SignPenalty& penalty,
                        std::vector<ParamGroup>& grads) {
  double total = 0.0;
  size_t bit = 0;
  for (size_t gi = 0; gi < model.params.size() && bit < penalty.bits.size();
       ++gi) {
    const std::vector<double>& v = model.params[gi].values;
    std::vector<double>& g = grads[gi].values;
    for (size_t k = 0; k < v.size() && bit < penalty.bits.size(); ++k, ++bit) {
      double target = penalty.bits[bit] ? 1.0 : -1.0;
      double margin = -target * v[k];
      if (margin > 0) {
        total += penalty.weight * margin;
        g[k] -= penalty.weight * target;
      }
    }
  }
  return total;
}

LossGradient batch_loss_gradient(const Model& model, const Dataset& data,
                                 const std::vector<size_t>& batch_indices,
                                 const SignPenalty* penalty) {
  LossGradient out;
  out.grads = group_shapes(model.spec);

  Forward fwd;
  double inv_batch = 1.0 / static_cast<double>(batch_indices.size());
  double ce = 0.0;
  for (size_t idx : batch_indices) {
    const Sample& s = data.samples[idx];
    if (s.label < 0 || s.label >= model.spec.num_classes)
      throw std::invalid_argument("model: label out of range for spec");
    run_forward(model, s.features, fwd);
    ce += -std::log(std::max(fwd.proba[s.label], 1e-300));
    accumulate_backward(model, fwd, s.label, inv_batch, out.grads);
  }
  out.loss = ce * inv_batch + regularization_term(model);
  add_regularization_gradient(model, out.grads);
  if (penalty) out.loss += add_sign_penalty(model, *penalty, out.grads);
  return out;
}

}  // namespace

Model init_model(const ModelSpec& spec, uint64_t seed) {
  spec.validate();
  Model model;
  model.spec = spec;
  model.params = group_shapes(spec);
  Rng rng(seed);
  for (ParamGroup& g : model.params)
    for (double& v : g.values) v = rng.uniform(-0.05, 0.05);
  return model;
}

LossGradient loss_and_gradient(const Model& model,
                               const std::vector<Sample>& batch) {
  if (batch.empty()) throw std::invalid_argument("loss: empty batch");
  Dataset view;
  view.name = "batch";
  view.dim = model.spec.input_dim;
  view.num_classes = model.spec.num_classes;
  view.domain = model.spec.input_domain;
  view.samples = batch;
  std::vector<size_t> all(batch.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return batch_loss_gradient(model, view, all, nullptr);
}

Model train(Model model, const Dataset& data, const TrainConfig& cfg,
            const EpochHook& hook) {
  cfg.validate();
  if (data.samples.empty()) throw std::invalid_argument("train: empty dataset");
  if (data.dim != model.spec.input_dim)
    throw std::invalid_argument("train: dataset dim does not match model");
  if (cfg.sign_penalty &&
      cfg.sign_penalty->bits.size() > model.parameter_count())
    throw std::invalid_argument("train: sign payload exceeds parameter count");

  const SignPenalty* penalty =
      cfg.sign_penalty ? &*cfg.sign_penalty : nullptr;
  size_t n = data.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng(derive_seed(cfg.seed, "epoch", static_cast<uint64_t>(epoch)));
    rng.shuffle(order);
    for (size_t start = 0; start < n; start += cfg.batch_size) {
      size_t end = std::min(n, start + cfg.batch_size);
      std::vector<size_t> batch(order.begin() + start, order.begin() + end);
      LossGradient lg = batch_loss_gradient(model, data, batch, penalty);
      for (size_t gi = 0; gi < model.params.size(); ++gi) {
        std::vector<double>& v = model.params[gi].values;
        const std::vector<double>& g = lg.grads[gi].values;
        for (size_t k = 0; k < v.size(); ++k) v[k] -= cfg.learning_rate * g[k];
      }
    }
    if (hook) hook(epoch + 1, model);
  }
  return model;
}

std::vector<double> predict_proba(const Model& model,
                                  const std::vector<double>& features) {
  Forward fwd;
  run_forward(model, features, fwd);
  return fwd.proba;
}

int predict_label(const Model& model, const std::vector<double>& features) {
  std::vector<double> p = predict_proba(model, features);
  int best = 0;
  for (int c = 1; c < static_cast<int>(p.size()); ++c)
    if (p[c] > p[best]) best = c;
  return best;
}

double accuracy(const Model& model, const Dataset& data) {
  if (data.samples.empty())
    throw std::invalid_argument("accuracy: empty dataset");
  size_t correct = 0;
  for (const Sample& s : data.samples)
    if (predict_label(model, s.features) == s.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<double> get_parameters(const Model& model) {
  std::vector<double> flat;
  flat.reserve(model.parameter_count());
  for (const ParamGroup& g : model.params)
    flat.insert(flat.end(), g.values.begin(), g.values.end());
  return flat;
}

Model set_parameters(Model model, const std::vector<double>& flat) {
  if (flat.size() != model.parameter_count())
    throw std::invalid_argument("set_parameters: length mismatch");
  size_t pos = 0;
  for (ParamGroup& g : model.params) {
    std::copy(flat.begin() + pos, flat.begin() + pos + g.values.size(),
              g.values.begin());
    pos += g.values.size();
  }
  return model;
}

double log_prob(const Model& model, const std::vector<double>& features,
                int cls) {
  if (cls < 0 || cls >= model.spec.num_classes)
    throw std::invalid_argument("log_prob: class out of range");
  Forward fwd;
  run_forward(model, features, fwd);
  double zmax = *std::max_element(fwd.logits.begin(), fwd.logits.end());
  double sum = 0.0;
  for (double z : fwd.logits) sum += std::exp(z - zmax);
  return fwd.logits[cls] - zmax - std::log(sum);
}

std::vector<double> input_log_prob_gradient(const Model& model,
                                            const std::vector<double>& features,
                                            int cls) {
  if (cls < 0 || cls >= model.spec.num_classes)
    throw std::invalid_argument("input_gradient: class out of range");
  const ModelSpec& spec = model.spec;
  Forward fwd;
  run_forward(model, features, fwd);

  int C = spec.num_classes;
  std::vector<double> dz(C);
  for (int c = 0; c < C; ++c)
    dz[c] = (c == cls ? 1.0 : 0.0) - fwd.proba[c];  // d log p_cls / d z

  std::vector<double> dinput(spec.input_dim, 0.0);
  if (spec.arch == ModelSpec::Arch::Softmax) {
    const ParamGroup& w = model.params[0];
    for (int i = 0; i < spec.input_dim; ++i) {
      const double* row = &w.values[static_cast<size_t>(i) * C];
      double acc = 0.0;
      for (int c = 0; c < C; ++c) acc += row[c] * dz[c];
      dinput[i] = acc;
    }
  } else {
    const ParamGroup& w1 = model.params[0];
    const ParamGroup& w2 = model.params[2];
    int h = spec.hidden_width;
    std::vector<double> da(h);
    for (int j = 0; j < h; ++j) {
      const double* row = &w2.values[static_cast<size_t>(j) * C];
      double dh = 0.0;
      for (int c = 0; c < C; ++c) dh += row[c] * dz[c];
      da[j] = dh * activate_grad(spec.activation, fwd.hidden_pre[j]);
    }
    for (int i = 0; i < spec.input_dim; ++i) {
      const double* row = &w1.values[static_cast<size_t>(i) * h];
      double acc = 0.0;
      for (int j = 0; j < h; ++j) acc += row[j] * da[j];
      dinput[i] = acc;
    }
  }
  double scale = 1.0 / spec.input_domain.width();
  for (double& v : dinput) v *= scale;
  return dinput;
}

namespace {

using nlohmann::json;

json spec_to_json(const ModelSpec& spec) {
  json j;
  j["arch"] = spec.arch == ModelSpec::Arch::Softmax ? "softmax" : "mlp";
  j["hidden_width"] = spec.hidden_width;
  j["input_dim"] = spec.input_dim;
  j["num_classes"] = spec.num_classes;
  j["reg_weight"] = spec.reg_weight;
  j["activation"] = spec.activation == Activation::ReLU ? "relu" : "sigmoid";
  j["input_domain"] = {spec.input_domain.lo, spec.input_domain.hi};
  return j;
}

ModelSpec spec_from_json(const json& j) {
  ModelSpec spec;
  std::string arch = j.at("arch").get<std::string>();
  if (arch == "softmax")
    spec.arch = ModelSpec::Arch::Softmax;
  else if (arch == "mlp")
    spec.arch = ModelSpec::Arch::Mlp;
  else
    throw std::invalid_argument("model json: unknown arch '" + arch + "'");
  spec.hidden_width = j.at("hidden_width").get<int>();
  spec.input_dim = j.at("input_dim").get<int>();
  spec.num_classes = j.at("num_classes").get<int>();
  spec.reg_weight = j.at("reg_weight").get<double>();
  std::string act = j.at("activation").get<std::string>();
  if (act == "relu")
    spec.activation = Activation::ReLU;
  else if (act == "sigmoid")
    spec.activation = Activation::Sigmoid;
  else
    throw std::invalid_argument("model json: unknown activation '" + act + "'");
  spec.input_domain.lo = j.at("input_domain").at(0).get<double>();
  spec.input_domain.hi = j.at("input_domain").at(1).get<double>();
  spec.validate();
  return spec;
}

}  // namespace

std::string model_to_json_string(const Model& model) {
  json j;
  j["spec"] = spec_to_json(model.spec);
  json params = json::array();
  for (const ParamGroup& g : model.params) {
    json pg;
    pg["name"] = g.name;
    pg["rows"] = g.rows;
    pg["cols"] = g.cols;
    pg["is_weight"] = g.is_weight;
    pg["values"] = g.values;
    params.push_back(std::move(pg));
  }
  j["params"] = std::move(params);
  return j.dump(2);
}

Model model_from_json_string(const std::string& text) {
  json j = json::parse(text);
  Model model;
  model.spec = spec_from_json(j.at("spec"));
  std::vector<ParamGroup> expected = group_shapes(model.spec);
  const json& params = j.at("params");
  if (params.size() != expected.size())
    throw std::invalid_argument("model json: wrong number of parameter groups");
  for (size_t gi = 0; gi < expected.size(); ++gi) {
    const json& pg = params.at(gi);
    ParamGroup& g = expected[gi];
    if (pg.at("name").get<std::string>() != g.name ||
        pg.at("rows").get<int>() != g.rows || pg.at("cols").get<int>() != g.cols)
      throw std::invalid_argument("model json: group " + std::to_string(gi) +
                                  " does not match spec");
    std::vector<double> values = pg.at("values").get<std::vector<double>>();
    if (values.size() != g.values.size())
      throw std::invalid_argument("model json: group " + std::to_string(gi) +
                                  " has wrong size");
    g.values = std::move(values);
  }
  model.params = std::move(expected);
  return model;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("model: cannot write " + path);
  out << model_to_json_string(model) << "\n";
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json_string(ss.str());
}

}  // namespace obfuskit
