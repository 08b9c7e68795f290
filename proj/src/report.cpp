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

#include "obfuskit/attacks/report.hpp"

#include "json.hpp"

namespace obfuskit {

std::string AttackReport::to_json_string() const {
  nlohmann::json j;
  j["attack"] = attack;
  if (cm) {
    j["confusion"] = {
        {"tp", cm->tp}, {"fn", cm->fn}, {"fp", cm->fp}, {"tn", cm->tn}};
  }
  if (f1_score) j["f1"] = *f1_score;
  j["aux"] = aux;
  if (!artifacts.empty()) j["artifacts"] = artifacts;
  if (!config_echo.empty()) j["config"] = nlohmann::json::parse(config_echo);
  return j.dump();
}

}  // namespace obfuskit
