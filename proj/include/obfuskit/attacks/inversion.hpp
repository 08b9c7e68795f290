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

#ifndef OBFUSKIT_ATTACKS_INVERSION_HPP
#define OBFUSKIT_ATTACKS_INVERSION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "obfuskit/attacks/report.hpp"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/obfuscate.hpp"

namespace obfuskit {

/// Projected gradient ascent on log p(cls | x) over the feature box. Each
/// step backtracks (halving the step) until the objective improves, so the
/// returned point's confidence is never below the initial one.
std::vector<double> invert_class(const Model& model, int cls, int steps,
                                 double step_size, std::vector<double> init,
                                 Domain domain);

/// Midpoint of the feature box, the default inversion start.
std::vector<double> domain_midpoint(int dim, Domain domain);

struct InversionConfig {
  ModelSpec model;
  TrainConfig train;
  int steps = 500;
  double step_size = 0.0;  // <= 0 selects half the domain width
  uint64_t seed = 0;
};

/// Trains a target on the (optionally group-obfuscated) training half of the
/// data, inverts the target class, and reports cosine similarity (midpoint-
/// centered) and MSE of the inversion against the class mean of the ORIGINAL
/// training samples.
AttackReport inversion_attack_eval(const Dataset& data, int target_class,
                                   const std::optional<GroupParams>& defense,
                                   const InversionConfig& cfg,
                                   AccuracyCurve* curve_out = nullptr);

}  // namespace obfuskit

#endif  // OBFUSKIT_ATTACKS_INVERSION_HPP
