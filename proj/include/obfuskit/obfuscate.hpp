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

#ifndef OBFUSKIT_OBFUSCATE_HPP
#define OBFUSKIT_OBFUSCATE_HPP

#include <cstdint>
#include <vector>

#include "obfuskit/dataset.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

/// Per-sample noising: Gaussian noise of scale sigma on a coord_ratio
/// fraction of the coordinates of each sensitive sample.
struct IndividualParams {
  double coord_ratio = 1.0 / 3.0;  // in [0, 1]
  double sigma = 0.0;              // >= 0

  void validate() const;
};

/// Group augmentation: for every sensitive group, append aug_ratio * |group|
/// synthetic samples built as noised negatives of group members.
struct GroupParams {
  double aug_ratio = 1.0;  // >= 0
  double sigma = 0.0;      // >= 0, small noise on the synthetic samples

  void validate() const;
};

/// Noises ceil(coord_ratio * d) coordinates, chosen uniformly without
/// replacement, with i.i.d. Gaussian noise, then clips to the domain. The
/// label is left unchanged by all individual obfuscation.
std::vector<double> obfuscate_individual_sample(
    const std::vector<double>& features, Domain domain,
    const IndividualParams& params, Rng& rng);

/// Replaces each selected sample by its obfuscated version in place; all
/// other samples are bit-identical. Per-sample noise streams derive from
/// (seed, sample index), so the result is independent of evaluation order.
Dataset obfuscate_dataset_individual(const Dataset& data,
                                     const SensitiveSelection& sensitive,
                                     const IndividualParams& params,
                                     uint64_t seed);

/// Reflection through the domain midpoint: lo + hi - x per coordinate.
/// An involution that stays inside the domain.
std::vector<double> negative(const std::vector<double>& features,
                             Domain domain);

/// Appends floor(aug_ratio * |group|) synthetic samples to the group. Source
/// samples are drawn without replacement until the group is exhausted, then
/// with replacement; each synthetic sample is clip(negative(x) + noise).
/// Synthetic labels: the spec's class for ByLabel groups, the source's own
/// label for WholeDataset groups. Original samples are preserved untouched.
std::vector<Sample> obfuscate_group(const std::vector<Sample>& group,
                                    const GroupSpec& spec, Domain domain,
                                    const GroupParams& params, Rng& rng);

/// Applies obfuscate_group to every listed group; synthetic samples are
/// appended after all original samples, groups in list order. Throws if two
/// specs name the same group.
Dataset obfuscate_dataset_groups(const Dataset& data,
                                 const std::vector<GroupSpec>& groups,
                                 const GroupParams& params, uint64_t seed);

}  // namespace obfuskit

#endif  // OBFUSKIT_OBFUSCATE_HPP
