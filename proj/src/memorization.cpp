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

#include "obfuskit/attacks/memorization.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

void SecretCodec::validate() const {
  if (bits_per_feature < 1 || bits_per_feature > 8)
    throw std::invalid_argument("codec: bits_per_feature must be in 1..8");
  if (dim < 1) throw std::invalid_argument("codec: dim must be >= 1");
  if (count < 0) throw std::invalid_argument("codec: count must be >= 0");
}

SecretPayload samples_to_bits(const std::vector<std::vector<double>>& samples,
                              const SecretCodec& codec, Domain domain) {
  codec.validate();
  if (static_cast<int>(samples.size()) != codec.count)
    throw std::invalid_argument("codec: sample count mismatch");

  // 2^b levels spanning [lo, hi] endpoints included, round to nearest. At
  // 8 bits over a 0..255 domain integer values are encoded losslessly.
  int levels = 1 << codec.bits_per_feature;
  double scale = (levels - 1) / domain.width();

  SecretPayload payload;
  payload.codec = codec;
  payload.bits.reserve(codec.bit_count());
  for (const std::vector<double>& sample : samples) {
    if (static_cast<int>(sample.size()) != codec.dim)
      throw std::invalid_argument("codec: sample dim mismatch");
    for (double v : sample) {
      long level = std::lround((v - domain.lo) * scale);
      if (level < 0) level = 0;
      if (level >= levels) level = levels - 1;
      for (int b = codec.bits_per_feature - 1; b >= 0; --b)
        payload.bits.push_back(static_cast<uint8_t>((level >> b) & 1));
    }
  }
  return payload;
}

std::vector<std::vector<double>> bits_to_samples(const SecretPayload& payload,
                                                 Domain domain) {
  payload.codec.validate();
  if (payload.bits.size() != payload.codec.bit_count())
    throw std::invalid_argument("codec: bit-length mismatch");

  int levels = 1 << payload.codec.bits_per_feature;
  double scale = (levels - 1) / domain.width();

  std::vector<std::vector<double>> samples(payload.codec.count);
  size_t pos = 0;
  for (std::vector<double>& sample : samples) {
    sample.resize(payload.codec.dim);
    for (double& v : sample) {
      long level = 0;
      for (int b = 0; b < payload.codec.bits_per_feature; ++b)
        level = (level << 1) | payload.bits[pos++];
      v = domain.lo + static_cast<double>(level) / scale;
    }
  }
  return samples;
}

namespace {

void check_lsb_bits(int k_bits) {
  if (k_bits < 1 || k_bits > 20)
    throw std::invalid_argument("lsb: k_bits must be in 1..20");
}

}  // namespace

size_t lsb_capacity_bits(const Model& model, int k_bits) {
  check_lsb_bits(k_bits);
  return model.parameter_count() * static_cast<size_t>(k_bits);
}

Model lsb_encode(Model model, const SecretPayload& payload, int k_bits) {
  check_lsb_bits(k_bits);
  if (payload.bits.size() > lsb_capacity_bits(model, k_bits))
    throw std::invalid_argument("lsb: payload exceeds model capacity");

  std::vector<double> flat = get_parameters(model);
  for (size_t b = 0; b < payload.bits.size(); ++b) {
    size_t param = b / k_bits;
    int pos = k_bits - 1 - static_cast<int>(b % k_bits);  // MSB of window first
    uint64_t raw = std::bit_cast<uint64_t>(flat[param]);
    uint64_t mask = uint64_t{1} << pos;
    raw = payload.bits[b] ? (raw | mask) : (raw & ~mask);
    flat[param] = std::bit_cast<double>(raw);
  }
  return set_parameters(std::move(model), flat);
}

SecretPayload lsb_decode(const Model& model, const SecretCodec& codec,
                         int k_bits) {
  check_lsb_bits(k_bits);
  codec.validate();
  if (codec.bit_count() > lsb_capacity_bits(model, k_bits))
    throw std::invalid_argument("lsb: codec exceeds model capacity");

  std::vector<double> flat = get_parameters(model);
  SecretPayload payload;
  payload.codec = codec;
  payload.bits.resize(codec.bit_count());
  for (size_t b = 0; b < payload.bits.size(); ++b) {
    size_t param = b / k_bits;
    int pos = k_bits - 1 - static_cast<int>(b % k_bits);
    uint64_t raw = std::bit_cast<uint64_t>(flat[param]);
    payload.bits[b] = static_cast<uint8_t>((raw >> pos) & 1);
  }
  return payload;
}

Model sign_encode_train(const ModelSpec& spec, const Dataset& data,
                        const SecretPayload& payload, double sign_weight,
                        TrainConfig cfg) {
  Model model = init_model(spec, derive_seed(cfg.seed, "sign_init"));
  if (payload.bits.size() > model.parameter_count())
    throw std::invalid_argument("sign: payload exceeds parameter count");
  cfg.sign_penalty = SignPenalty{payload.bits, sign_weight};
  return train(std::move(model), data, cfg);
}

std::vector<uint8_t> sign_decode(const Model& model, size_t n) {
  std::vector<double> flat = get_parameters(model);
  if (n > flat.size())
    throw std::invalid_argument("sign: n exceeds parameter count");
  std::vector<uint8_t> bits(n);
  for (size_t i = 0; i < n; ++i) bits[i] = flat[i] >= 0.0 ? 1 : 0;
  return bits;
}

AttackReport memorization_attack_eval(
    const Dataset& data, const SensitiveSelection& sensitive,
    const std::optional<IndividualParams>& defense, const SecretCodec& codec,
    const MemorizationConfig& cfg, AccuracyCurve* curve_out) {
  codec.validate();
  sensitive.validate(data);
  if (codec.count != static_cast<int>(sensitive.indices.size()))
    throw std::invalid_argument("memorization: codec count != selection size");
  if (codec.dim != data.dim)
    throw std::invalid_argument("memorization: codec dim != dataset dim");

  // The adversary's view: the dataset after the customer-side defense.
  Dataset working =
      defense ? obfuscate_dataset_individual(data, sensitive, *defense,
                                             derive_seed(cfg.seed, "defense"))
              : data;

  std::vector<std::vector<double>> originals, observed;
  for (size_t idx : sensitive.indices) {
    originals.push_back(data.samples[idx].features);
    observed.push_back(working.samples[idx].features);
  }
  SecretPayload payload = samples_to_bits(observed, codec, data.domain);

  auto [train_ds, val_ds] =
      split(working, 1.0 - cfg.val_fraction, derive_seed(cfg.seed, "split"));

  TrainConfig tc = cfg.train;
  tc.seed = derive_seed(cfg.seed, "train");

  AttackReport report;
  report.attack = "memorization";

  SecretPayload decoded;
  if (cfg.method == MemorizationMethod::Lsb) {
    TrackedTraining tracked = train_tracked(
        init_model(cfg.model, derive_seed(cfg.seed, "init")), train_ds, tc,
        train_ds, val_ds);
    if (curve_out) *curve_out = tracked.curve;
    double acc_plain = accuracy(tracked.model, val_ds);
    Model encoded = lsb_encode(tracked.model, payload, cfg.lsb_bits);
    double acc_encoded = accuracy(encoded, val_ds);
    decoded = lsb_decode(encoded, codec, cfg.lsb_bits);
    report.aux["val_acc"] = acc_plain;
    report.aux["val_acc_encoded"] = acc_encoded;
    report.aux["train_acc"] = accuracy(encoded, train_ds);
  } else {
    // Baseline without the penalty, same seeds, for the accuracy cost.
    Model clean = train(init_model(cfg.model, derive_seed(cfg.seed, "init")),
                        train_ds, tc);
    TrainConfig tc_sign = tc;
    tc_sign.sign_penalty = SignPenalty{payload.bits, cfg.sign_weight};
    TrackedTraining tracked = train_tracked(
        init_model(cfg.model, derive_seed(cfg.seed, "init")), train_ds,
        tc_sign, train_ds, val_ds);
    if (curve_out) *curve_out = tracked.curve;
    decoded.codec = codec;
    decoded.bits = sign_decode(tracked.model, payload.bits.size());
    report.aux["val_acc"] = accuracy(tracked.model, val_ds);
    report.aux["val_acc_clean"] = accuracy(clean, val_ds);
    report.aux["train_acc"] = accuracy(tracked.model, train_ds);
  }

  size_t match = 0;
  for (size_t i = 0; i < payload.bits.size(); ++i)
    if (payload.bits[i] == decoded.bits[i]) ++match;
  report.aux["bit_recovery_rate"] =
      payload.bits.empty()
          ? 1.0
          : static_cast<double>(match) / static_cast<double>(payload.bits.size());

  std::vector<std::vector<double>> recovered =
      bits_to_samples(decoded, data.domain);

  double err_sum = 0.0, noised_err_sum = 0.0;
  size_t coords = 0, noised_coords = 0;
  for (size_t s = 0; s < originals.size(); ++s) {
    for (int j = 0; j < codec.dim; ++j) {
      double e = std::abs(recovered[s][j] - originals[s][j]);
      err_sum += e;
      ++coords;
      if (observed[s][j] != originals[s][j]) {
        noised_err_sum += e;
        ++noised_coords;
      }
    }
  }
  report.aux["mean_abs_error"] =
      coords ? err_sum / static_cast<double>(coords) : 0.0;
  if (noised_coords > 0) {
    report.aux["mean_abs_error_noised"] =
        noised_err_sum / static_cast<double>(noised_coords);
    report.aux["noised_coord_fraction"] =
        static_cast<double>(noised_coords) / static_cast<double>(coords);
  }

  for (size_t s = 0; s < recovered.size(); ++s) {
    report.artifacts["recovered_" + std::to_string(s)] = recovered[s];
    report.artifacts["original_" + std::to_string(s)] = originals[s];
  }

  nlohmann::json echo;
  echo["method"] = cfg.method == MemorizationMethod::Lsb ? "lsb" : "sign";
  echo["lsb_bits"] = cfg.lsb_bits;
  echo["sign_weight"] = cfg.sign_weight;
  echo["bits_per_feature"] = codec.bits_per_feature;
  echo["secret_count"] = codec.count;
  echo["defended"] = defense.has_value();
  report.config_echo = echo.dump();
  return report;
}

}  // namespace obfuskit
