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

#include "obfuskit/obfuscate.hpp"

#include <cmath>
#include <stdexcept>

namespace obfuskit {

void IndividualParams::validate() const {
  if (!(coord_ratio >= 0.0 && coord_ratio <= 1.0))
    throw std::invalid_argument("obfuscate: coord_ratio must be in [0, 1]");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("obfuscate: sigma must be >= 0");
}

void GroupParams::validate() const {
  if (!(aug_ratio >= 0.0))
    throw std::invalid_argument("obfuscate: aug_ratio must be >= 0");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("obfuscate: sigma must be >= 0");
}

std::vector<double> obfuscate_individual_sample(
    const std::vector<double>& features, Domain domain,
    const IndividualParams& params, Rng& rng) {
  params.validate();
  std::vector<double> out = features;
  size_t d = out.size();
  size_t k = static_cast<size_t>(
      std::ceil(params.coord_ratio * static_cast<double>(d)));
  if (k == 0 || params.sigma == 0.0) return out;

  // Partial Fisher-Yates: the first k entries are a uniform draw without
  // replacement.
  std::vector<size_t> coords(d);
  for (size_t i = 0; i < d; ++i) coords[i] = i;
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + rng.index(d - i);
    std::swap(coords[i], coords[j]);
  }
  for (size_t i = 0; i < k; ++i) {
    size_t c = coords[i];
    out[c] = domain.clip(out[c] + rng.normal(0.0, params.sigma));
  }
  return out;
}

Dataset obfuscate_dataset_individual(const Dataset& data,
                                     const SensitiveSelection& sensitive,
                                     const IndividualParams& params,
                                     uint64_t seed) {
  params.validate();
  sensitive.validate(data);
  Dataset out = data;
  for (size_t idx : sensitive.indices) {
    Rng rng(derive_seed(seed, "individual", static_cast<uint64_t>(idx)));
    out.samples[idx].features = obfuscate_individual_sample(
        data.samples[idx].features, data.domain, params, rng);
  }
  return out;
}

std::vector<double> negative(const std::vector<double>& features,
                             Domain domain) {
  double s = domain.lo + domain.hi;
  std::vector<double> out(features.size());
  for (size_t i = 0; i < features.size(); ++i)
    out[i] = domain.clip(s - features[i]);
  return out;
}

std::vector<Sample> obfuscate_group(const std::vector<Sample>& group,
                                    const GroupSpec& spec, Domain domain,
                                    const GroupParams& params, Rng& rng) {
  params.validate();
  if (group.empty()) throw std::invalid_argument("obfuscate: empty group");
  if (spec.kind == GroupSpec::Kind::ByLabel)
    for (const Sample& s : group)
      if (s.label != spec.label)
        throw std::invalid_argument(
            "obfuscate: group sample label does not match spec");

  size_t n = group.size();
  size_t n_add = static_cast<size_t>(
      std::floor(params.aug_ratio * static_cast<double>(n)));
  std::vector<Sample> out = group;
  if (n_add == 0) return out;

  // Source samples come without replacement first; that way aug_ratio = 1
  // with zero noise reflects every member exactly once and the augmented
  // group's mean collapses onto the domain midpoint.
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);

  out.reserve(n + n_add);
  for (size_t i = 0; i < n_add; ++i) {
    size_t src = i < n ? perm[i] : rng.index(n);
    Sample synth;
    synth.features = negative(group[src].features, domain);
    if (params.sigma > 0.0)
      for (double& v : synth.features)
        v = domain.clip(v + rng.normal(0.0, params.sigma));
    synth.label =
        spec.kind == GroupSpec::Kind::ByLabel ? spec.label : group[src].label;
    out.push_back(std::move(synth));
  }
  return out;
}

Dataset obfuscate_dataset_groups(const Dataset& data,
                                 const std::vector<GroupSpec>& groups,
                                 const GroupParams& params, uint64_t seed) {
  params.validate();
  bool seen_whole = false;
  std::vector<bool> seen_label(static_cast<size_t>(data.num_classes), false);
  for (const GroupSpec& spec : groups) {
    if (spec.kind == GroupSpec::Kind::WholeDataset) {
      if (seen_whole)
        throw std::invalid_argument("obfuscate: whole-dataset group listed twice");
      seen_whole = true;
    } else {
      if (spec.label < 0 || spec.label >= data.num_classes)
        throw std::invalid_argument("obfuscate: group label out of range");
      if (seen_label[spec.label])
        throw std::invalid_argument("obfuscate: class " +
                                    std::to_string(spec.label) +
                                    " listed twice");
      seen_label[spec.label] = true;
    }
  }

  Dataset out = data;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    std::vector<size_t> indices = select_group(data, groups[gi]);
    std::vector<Sample> members;
    members.reserve(indices.size());
    for (size_t idx : indices) members.push_back(data.samples[idx]);

    Rng rng(derive_seed(seed, "group", static_cast<uint64_t>(gi)));
    std::vector<Sample> augmented =
        obfuscate_group(members, groups[gi], data.domain, params, rng);
    for (size_t i = members.size(); i < augmented.size(); ++i)
      out.samples.push_back(std::move(augmented[i]));
  }
  return out;
}

}  // namespace obfuskit
