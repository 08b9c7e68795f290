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

#ifndef OBFUSKIT_ATTACKS_MEMORIZATION_HPP
#define OBFUSKIT_ATTACKS_MEMORIZATION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "obfuskit/attacks/report.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/obfuscate.hpp"

namespace obfuskit {

/// How a batch of samples is packed into a bit string: each feature is
/// uniformly quantized to bits_per_feature bits (2^b levels spanning the
/// domain, endpoints included), features in order, MSB first.
struct SecretCodec {
  int bits_per_feature = 8;  // 1..8
  int dim = 0;               // features per sample
  int count = 0;             // number of samples

  size_t bit_count() const {
    return static_cast<size_t>(bits_per_feature) * dim * count;
  }
  void validate() const;
};

struct SecretPayload {
  std::vector<uint8_t> bits;  // 0/1
  SecretCodec codec;
};

SecretPayload samples_to_bits(const std::vector<std::vector<double>>& samples,
                              const SecretCodec& codec, Domain domain);
std::vector<std::vector<double>> bits_to_samples(const SecretPayload& payload,
                                                 Domain domain);

/// Number of payload bits a model can carry at k bits per parameter.
size_t lsb_capacity_bits(const Model& model, int k_bits);

/// Writes the payload into the k low-order mantissa bits of consecutive
/// parameters (flat order, MSB of each k-bit window first). Sign, exponent
/// and the untouched mantissa bits are preserved; decode inverts exactly.
Model lsb_encode(Model model, const SecretPayload& payload, int k_bits);
SecretPayload lsb_decode(const Model& model, const SecretCodec& codec,
                         int k_bits);

/// Trains a model whose leading parameter signs spell out the payload, by
/// adding the hinge penalty sign_weight * sum max(0, -b_i * theta_i) to the
/// training loss.
Model sign_encode_train(const ModelSpec& spec, const Dataset& data,
                        const SecretPayload& payload, double sign_weight,
                        TrainConfig cfg);

/// Reads bits off the signs of the first n flat parameters; nonnegative
/// parameters decode as 1.
std::vector<uint8_t> sign_decode(const Model& model, size_t n);

enum class MemorizationMethod { Lsb, Sign };

struct MemorizationConfig {
  MemorizationMethod method = MemorizationMethod::Lsb;
  int lsb_bits = 16;
  double sign_weight = 10.0;
  ModelSpec model;
  TrainConfig train;
  double val_fraction = 0.5;  // held-out share for accuracy reporting
  uint64_t seed = 0;
};

/// Full memorization pipeline: (optionally) obfuscate the sensitive samples,
/// encode the adversary's view of them into a trained model, decode, and
/// report bit recovery plus reconstruction error against the original
/// samples (overall and restricted to the defense-noised coordinates).
/// curve_out, when given, receives the per-epoch accuracy curve of the
/// carrier training run.
AttackReport memorization_attack_eval(
    const Dataset& data, const SensitiveSelection& sensitive,
    const std::optional<IndividualParams>& defense, const SecretCodec& codec,
    const MemorizationConfig& cfg, AccuracyCurve* curve_out = nullptr);

}  // namespace obfuskit

#endif  // OBFUSKIT_ATTACKS_MEMORIZATION_HPP
