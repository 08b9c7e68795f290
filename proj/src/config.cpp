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

#include "obfuskit/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace obfuskit {

using nlohmann::json;

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Memorization: return "memorization";
    case Scenario::Membership: return "membership";
    case Scenario::Inversion: return "inversion";
    case Scenario::Property: return "property";
  }
  return "?";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "memorization") return Scenario::Memorization;
  if (name == "membership") return Scenario::Membership;
  if (name == "inversion") return Scenario::Inversion;
  if (name == "property") return Scenario::Property;
  throw ConfigError("scenario: unknown scenario '" + name + "'");
}

ModelSpec ModelConfig::resolve(int input_dim, int num_classes,
                               Domain domain) const {
  ModelSpec spec;
  spec.arch = arch;
  spec.hidden_width = hidden_width;
  spec.input_dim = input_dim;
  spec.num_classes = num_classes;
  spec.reg_weight = reg_weight;
  spec.activation = activation;
  spec.input_domain = domain;
  spec.validate();
  return spec;
}

namespace {

// Strict-object helpers: every object is checked against its allowed key
// set, and all type/range errors name the full field path.

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError(path + ": unknown key '" + item.key() + "'");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(path + "." + key + ": missing required field");
  return *v;
}

double get_double(const json& obj, const std::string& path, const char* key,
                  std::optional<double> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required field");
  }
  if (!v->is_number())
    throw ConfigError(path + "." + key + ": expected a number");
  return v->get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            std::optional<int> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required field");
  }
  if (!v->is_number_integer())
    throw ConfigError(path + "." + key + ": expected an integer");
  return v->get<int>();
}

uint64_t get_seed(const json& obj, const std::string& path, const char* key,
                  std::optional<uint64_t> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required field");
  }
  if (!v->is_number_integer())
    throw ConfigError(path + "." + key + ": expected an integer seed");
  return v->get<uint64_t>();
}

std::string get_string(const json& obj, const std::string& path,
                       const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required field");
  }
  if (!v->is_string())
    throw ConfigError(path + "." + key + ": expected a string");
  return v->get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    throw ConfigError(path + "." + key + ": expected a boolean");
  return v->get<bool>();
}

GeneratorConfig parse_generator(const json& j, const std::string& path) {
  check_keys(j, path,
             {"num_classes", "dim", "per_class", "centers_seed", "points_seed",
              "spread", "domain", "band", "quantize", "shape"});
  GeneratorConfig g;
  g.num_classes = get_int(j, path, "num_classes");
  g.dim = get_int(j, path, "dim");
  g.per_class = get_int(j, path, "per_class");
  g.centers_seed = get_seed(j, path, "centers_seed", 1);
  g.points_seed = get_seed(j, path, "points_seed", 2);
  g.spread = get_double(j, path, "spread");
  const json& dom = require(j, path, "domain");
  if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() ||
      !dom[1].is_number())
    throw ConfigError(path + ".domain: expected [lo, hi]");
  g.domain.lo = dom[0].get<double>();
  g.domain.hi = dom[1].get<double>();
  if (const json* band = find(j, "band")) {
    if (!band->is_array() || band->size() != 2)
      throw ConfigError(path + ".band: expected [lo, hi]");
    g.band_lo = (*band)[0].get<double>();
    g.band_hi = (*band)[1].get<double>();
    if (!(g.band_lo >= 0 && g.band_lo < g.band_hi && g.band_hi <= 1))
      throw ConfigError(path + ".band: need 0 <= lo < hi <= 1");
  }
  g.quantize = get_bool(j, path, "quantize", false);
  if (const json* shape = find(j, "shape")) {
    if (!shape->is_array() || shape->size() != 2)
      throw ConfigError(path + ".shape: expected [height, width]");
    g.shape_h = (*shape)[0].get<int>();
    g.shape_w = (*shape)[1].get<int>();
    if (g.shape_h * g.shape_w != g.dim)
      throw ConfigError(path + ".shape: height * width must equal dim");
  }
  if (g.num_classes < 2)
    throw ConfigError(path + ".num_classes: must be >= 2");
  if (g.dim < 1) throw ConfigError(path + ".dim: must be >= 1");
  if (g.per_class < 1) throw ConfigError(path + ".per_class: must be >= 1");
  if (!(g.spread >= 0)) throw ConfigError(path + ".spread: must be >= 0");
  if (!(g.domain.lo < g.domain.hi))
    throw ConfigError(path + ".domain: lo must be < hi");
  return g;
}

DatasetSource parse_dataset(const json& j, const std::string& path) {
  check_keys(j, path, {"file", "generator"});
  DatasetSource src;
  const json* file = find(j, "file");
  const json* gen = find(j, "generator");
  if ((file != nullptr) == (gen != nullptr))
    throw ConfigError(path + ": exactly one of 'file' or 'generator' required");
  if (file) {
    if (!file->is_string())
      throw ConfigError(path + ".file: expected a string");
    src.file = file->get<std::string>();
  } else {
    src.generator = parse_generator(*gen, path + ".generator");
  }
  return src;
}

ModelConfig parse_model(const json& j, const std::string& path) {
  check_keys(j, path, {"arch", "hidden_width", "reg_weight", "activation"});
  ModelConfig m;
  std::string arch = get_string(j, path, "arch");
  if (arch == "softmax")
    m.arch = ModelSpec::Arch::Softmax;
  else if (arch == "mlp")
    m.arch = ModelSpec::Arch::Mlp;
  else
    throw ConfigError(path + ".arch: expected 'softmax' or 'mlp'");
  m.hidden_width = get_int(j, path, "hidden_width", 0);
  if (m.arch == ModelSpec::Arch::Mlp && m.hidden_width < 1)
    throw ConfigError(path + ".hidden_width: must be >= 1 for mlp");
  m.reg_weight = get_double(j, path, "reg_weight", 0.0);
  if (!(m.reg_weight >= 0))
    throw ConfigError(path + ".reg_weight: must be >= 0");
  std::string act = get_string(j, path, "activation", "relu");
  if (act == "relu")
    m.activation = Activation::ReLU;
  else if (act == "sigmoid")
    m.activation = Activation::Sigmoid;
  else
    throw ConfigError(path + ".activation: expected 'relu' or 'sigmoid'");
  return m;
}

TrainConfig parse_train(const json& j, const std::string& path) {
  check_keys(j, path, {"epochs", "batch_size", "learning_rate"});
  TrainConfig t;
  t.epochs = get_int(j, path, "epochs");
  t.batch_size = get_int(j, path, "batch_size", 32);
  t.learning_rate = get_double(j, path, "learning_rate");
  if (t.epochs < 0) throw ConfigError(path + ".epochs: must be >= 0");
  if (t.batch_size < 1) throw ConfigError(path + ".batch_size: must be >= 1");
  if (!(t.learning_rate > 0))
    throw ConfigError(path + ".learning_rate: must be > 0");
  return t;
}

ObfuscationConfig parse_obfuscation(const json& j, const std::string& path,
                                    Scenario scenario) {
  check_keys(j, path, {"mode", "sigma", "coord_ratio", "sweep_r"});
  ObfuscationConfig o;
  std::string mode = get_string(j, path, "mode");
  if (mode == "individual")
    o.mode = ObfuscationMode::Individual;
  else if (mode == "group")
    o.mode = ObfuscationMode::Group;
  else
    throw ConfigError(path + ".mode: expected 'individual' or 'group'");

  bool needs_individual = scenario == Scenario::Memorization ||
                          scenario == Scenario::Membership;
  if (needs_individual && o.mode != ObfuscationMode::Individual)
    throw ConfigError(path + ".mode: scenario '" +
                      scenario_name(scenario) + "' uses individual obfuscation");
  if (!needs_individual && o.mode != ObfuscationMode::Group)
    throw ConfigError(path + ".mode: scenario '" +
                      scenario_name(scenario) + "' uses group obfuscation");

  o.sigma = get_double(j, path, "sigma");
  if (!(o.sigma >= 0)) throw ConfigError(path + ".sigma: must be >= 0");
  o.coord_ratio = get_double(j, path, "coord_ratio", 1.0 / 3.0);
  if (!(o.coord_ratio >= 0 && o.coord_ratio <= 1))
    throw ConfigError(path + ".coord_ratio: must be in [0, 1]");

  const json& sweep = require(j, path, "sweep_r");
  if (!sweep.is_array() || sweep.empty())
    throw ConfigError(path + ".sweep_r: expected a non-empty array");
  o.sweep_r.clear();
  for (const json& v : sweep) {
    if (!v.is_number())
      throw ConfigError(path + ".sweep_r: expected numbers");
    double r = v.get<double>();
    bool individual = o.mode == ObfuscationMode::Individual;
    if (r < 0 || (individual && r > 1))
      throw ConfigError(path + ".sweep_r: value " + std::to_string(r) +
                        " out of range");
    o.sweep_r.push_back(r);
  }
  return o;
}

MembershipScenarioConfig parse_membership(const json& j,
                                          const std::string& path) {
  check_keys(j, path, {"target_train_size", "n_shadow", "shadow_train_size",
                       "attack_epochs", "attack_lr"});
  MembershipScenarioConfig a;
  a.target_train_size = get_int(j, path, "target_train_size");
  a.n_shadow = get_int(j, path, "n_shadow", 30);
  a.shadow_train_size = get_int(j, path, "shadow_train_size");
  a.attack_epochs = get_int(j, path, "attack_epochs", 100);
  a.attack_lr = get_double(j, path, "attack_lr", 0.5);
  if (a.target_train_size < 1)
    throw ConfigError(path + ".target_train_size: must be >= 1");
  if (a.n_shadow < 1) throw ConfigError(path + ".n_shadow: must be >= 1");
  if (a.shadow_train_size < 1)
    throw ConfigError(path + ".shadow_train_size: must be >= 1");
  if (a.attack_epochs < 1)
    throw ConfigError(path + ".attack_epochs: must be >= 1");
  if (!(a.attack_lr > 0)) throw ConfigError(path + ".attack_lr: must be > 0");
  return a;
}

MemorizationScenarioConfig parse_memorization(const json& j,
                                              const std::string& path) {
  check_keys(j, path, {"method", "lsb_bits", "sign_weight", "bits_per_feature",
                       "secret_count"});
  MemorizationScenarioConfig a;
  std::string method = get_string(j, path, "method");
  if (method == "lsb")
    a.method = MemorizationMethod::Lsb;
  else if (method == "sign")
    a.method = MemorizationMethod::Sign;
  else
    throw ConfigError(path + ".method: expected 'lsb' or 'sign'");
  a.lsb_bits = get_int(j, path, "lsb_bits", 16);
  a.sign_weight = get_double(j, path, "sign_weight", 10.0);
  a.bits_per_feature = get_int(j, path, "bits_per_feature", 8);
  a.secret_count = get_int(j, path, "secret_count", 4);
  if (a.lsb_bits < 1 || a.lsb_bits > 20)
    throw ConfigError(path + ".lsb_bits: must be in 1..20");
  if (!(a.sign_weight > 0))
    throw ConfigError(path + ".sign_weight: must be > 0");
  if (a.bits_per_feature < 1 || a.bits_per_feature > 8)
    throw ConfigError(path + ".bits_per_feature: must be in 1..8");
  if (a.secret_count < 1)
    throw ConfigError(path + ".secret_count: must be >= 1");
  return a;
}

InversionScenarioConfig parse_inversion(const json& j,
                                        const std::string& path) {
  check_keys(j, path, {"target_class", "steps", "step_size"});
  InversionScenarioConfig a;
  a.target_class = get_int(j, path, "target_class");
  a.steps = get_int(j, path, "steps", 500);
  a.step_size = get_double(j, path, "step_size", 0.0);
  if (a.target_class < 0)
    throw ConfigError(path + ".target_class: must be >= 0");
  if (a.steps < 1) throw ConfigError(path + ".steps: must be >= 1");
  return a;
}

PropertyScenarioConfig parse_property(const json& j, const std::string& path) {
  check_keys(j, path,
             {"n_each", "n_eval", "with_centers_seed", "without_centers_seed",
              "with_band", "without_band", "attack_epochs", "attack_lr"});
  PropertyScenarioConfig a;
  a.n_each = get_int(j, path, "n_each", 40);
  a.n_eval = get_int(j, path, "n_eval", 20);
  a.with_centers_seed = get_seed(j, path, "with_centers_seed");
  a.without_centers_seed = get_seed(j, path, "without_centers_seed");
  auto parse_band = [&](const char* key, double& lo, double& hi) {
    const json* band = find(j, key);
    if (!band) return;
    if (!band->is_array() || band->size() != 2)
      throw ConfigError(path + "." + key + ": expected [lo, hi]");
    lo = (*band)[0].get<double>();
    hi = (*band)[1].get<double>();
    if (!(lo >= 0 && lo < hi && hi <= 1))
      throw ConfigError(path + "." + key + ": need 0 <= lo < hi <= 1");
  };
  parse_band("with_band", a.with_band_lo, a.with_band_hi);
  parse_band("without_band", a.without_band_lo, a.without_band_hi);
  a.attack_epochs = get_int(j, path, "attack_epochs", 200);
  a.attack_lr = get_double(j, path, "attack_lr", 0.1);
  if (a.n_each < 2) throw ConfigError(path + ".n_each: must be >= 2");
  if (a.n_eval < 1) throw ConfigError(path + ".n_eval: must be >= 1");
  if (a.attack_epochs < 1)
    throw ConfigError(path + ".attack_epochs: must be >= 1");
  if (!(a.attack_lr > 0)) throw ConfigError(path + ".attack_lr: must be > 0");
  return a;
}

json echo_json(const ExperimentConfig& cfg) {
  json j;
  j["scenario"] = scenario_name(cfg.scenario);
  j["master_seed"] = cfg.master_seed;
  j["output_dir"] = cfg.output_dir;
  if (cfg.dataset.generator) {
    const GeneratorConfig& g = *cfg.dataset.generator;
    json gj;
    gj["num_classes"] = g.num_classes;
    gj["dim"] = g.dim;
    gj["per_class"] = g.per_class;
    gj["centers_seed"] = g.centers_seed;
    gj["points_seed"] = g.points_seed;
    gj["spread"] = g.spread;
    gj["domain"] = {g.domain.lo, g.domain.hi};
    gj["band"] = {g.band_lo, g.band_hi};
    gj["quantize"] = g.quantize;
    if (g.shape_h > 0) gj["shape"] = {g.shape_h, g.shape_w};
    j["dataset"] = {{"generator", gj}};
  } else {
    j["dataset"] = {{"file", cfg.dataset.file}};
  }
  j["model"] = {
      {"arch", cfg.model.arch == ModelSpec::Arch::Softmax ? "softmax" : "mlp"},
      {"hidden_width", cfg.model.hidden_width},
      {"reg_weight", cfg.model.reg_weight},
      {"activation",
       cfg.model.activation == Activation::ReLU ? "relu" : "sigmoid"}};
  j["train"] = {{"epochs", cfg.train.epochs},
                {"batch_size", cfg.train.batch_size},
                {"learning_rate", cfg.train.learning_rate}};
  json oj;
  oj["mode"] = cfg.obfuscation.mode == ObfuscationMode::Individual
                   ? "individual"
                   : "group";
  oj["sigma"] = cfg.obfuscation.sigma;
  if (cfg.obfuscation.mode == ObfuscationMode::Individual)
    oj["coord_ratio"] = cfg.obfuscation.coord_ratio;
  oj["sweep_r"] = cfg.obfuscation.sweep_r;
  j["obfuscation"] = oj;

  json aj;
  switch (cfg.scenario) {
    case Scenario::Membership:
      aj["target_train_size"] = cfg.membership.target_train_size;
      aj["n_shadow"] = cfg.membership.n_shadow;
      aj["shadow_train_size"] = cfg.membership.shadow_train_size;
      aj["attack_epochs"] = cfg.membership.attack_epochs;
      aj["attack_lr"] = cfg.membership.attack_lr;
      break;
    case Scenario::Memorization:
      aj["method"] =
          cfg.memorization.method == MemorizationMethod::Lsb ? "lsb" : "sign";
      aj["lsb_bits"] = cfg.memorization.lsb_bits;
      aj["sign_weight"] = cfg.memorization.sign_weight;
      aj["bits_per_feature"] = cfg.memorization.bits_per_feature;
      aj["secret_count"] = cfg.memorization.secret_count;
      break;
    case Scenario::Inversion:
      aj["target_class"] = cfg.inversion.target_class;
      aj["steps"] = cfg.inversion.steps;
      aj["step_size"] = cfg.inversion.step_size;
      break;
    case Scenario::Property:
      aj["n_each"] = cfg.property.n_each;
      aj["n_eval"] = cfg.property.n_eval;
      aj["with_centers_seed"] = cfg.property.with_centers_seed;
      aj["without_centers_seed"] = cfg.property.without_centers_seed;
      aj["with_band"] = {cfg.property.with_band_lo, cfg.property.with_band_hi};
      aj["without_band"] = {cfg.property.without_band_lo,
                            cfg.property.without_band_hi};
      aj["attack_epochs"] = cfg.property.attack_epochs;
      aj["attack_lr"] = cfg.property.attack_lr;
      break;
  }
  j["attack"] = aj;
  return j;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  check_keys(j, "config",
             {"scenario", "dataset", "model", "train", "obfuscation", "attack",
              "master_seed", "output_dir"});

  ExperimentConfig cfg;
  cfg.scenario =
      scenario_from_name(get_string(j, "config", "scenario"));
  cfg.dataset = parse_dataset(require(j, "config", "dataset"), "dataset");
  cfg.model = parse_model(require(j, "config", "model"), "model");
  cfg.train = parse_train(require(j, "config", "train"), "train");
  cfg.obfuscation = parse_obfuscation(require(j, "config", "obfuscation"),
                                      "obfuscation", cfg.scenario);
  cfg.master_seed = get_seed(j, "config", "master_seed");
  cfg.output_dir = get_string(j, "config", "output_dir", "out");

  const json& attack = require(j, "config", "attack");
  switch (cfg.scenario) {
    case Scenario::Membership:
      cfg.membership = parse_membership(attack, "attack");
      break;
    case Scenario::Memorization:
      cfg.memorization = parse_memorization(attack, "attack");
      break;
    case Scenario::Inversion:
      cfg.inversion = parse_inversion(attack, "attack");
      break;
    case Scenario::Property:
      cfg.property = parse_property(attack, "attack");
      if (!cfg.dataset.generator)
        throw ConfigError(
            "dataset: property scenario requires dataset.generator");
      break;
  }

  cfg.echo = echo_json(cfg).dump();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

TrainSpec parse_train_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec: invalid JSON: ") + e.what());
  }
  check_keys(j, "spec", {"model", "train", "seed"});
  TrainSpec spec;
  spec.model = parse_model(require(j, "spec", "model"), "spec.model");
  spec.train = parse_train(require(j, "spec", "train"), "spec.train");
  spec.seed = get_seed(j, "spec", "seed", 0);
  return spec;
}

}  // namespace obfuskit
