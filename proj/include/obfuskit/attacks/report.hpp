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

#ifndef OBFUSKIT_ATTACKS_REPORT_HPP
#define OBFUSKIT_ATTACKS_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obfuskit/metrics.hpp"

namespace obfuskit {

/// Outcome of one attack evaluation: confusion counts when the attack makes
/// binary calls, scalar metrics in aux, and the attacker's-view artifacts
/// (recovered samples, inversions) so the result can be inspected directly.
struct AttackReport {
  std::string attack;
  std::optional<ConfusionMatrix> cm;
  std::optional<double> f1_score;
  std::map<std::string, double> aux;
  std::map<std::string, std::vector<double>> artifacts;
  std::string config_echo;  // JSON text

  std::string to_json_string() const;
};

}  // namespace obfuskit

#endif  // OBFUSKIT_ATTACKS_REPORT_HPP
