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

#ifndef OBFUSKIT_DATASET_HPP
#define OBFUSKIT_DATASET_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace obfuskit {

/// Closed feature range [lo, hi]. All samples of a dataset live inside it and
/// every transform clips back into it.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double midpoint() const { return lo + (hi - lo) / 2.0; }
  double clip(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct Sample {
  std::vector<double> features;
  int label = 0;
};

/// Labeled dataset with declared feature domain. Invariants (dimensions,
/// label range, domain containment) are checked by validate(); every loader
/// and generator in this module validates before returning.
struct Dataset {
  std::string name;
  int dim = 0;
  int num_classes = 0;
  Domain domain;
  std::vector<Sample> samples;

  size_t size() const { return samples.size(); }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Indices of the sensitive samples inside a dataset. Unique, in range.
struct SensitiveSelection {
  std::vector<size_t> indices;

  void validate(const Dataset& data) const;
  static SensitiveSelection all(const Dataset& data);
};

/// A sensitive group: samples sharing a label, or the whole dataset.
struct GroupSpec {
  enum class Kind { ByLabel, WholeDataset };
  Kind kind = Kind::WholeDataset;
  int label = -1;

  static GroupSpec by_label(int label) { return {Kind::ByLabel, label}; }
  static GroupSpec whole() { return {Kind::WholeDataset, -1}; }
};

// CSV layout: one header line `# name=<tag> d=<d> C=<C> domain=<lo>,<hi>`
// followed by rows `label,f0,...,f(d-1)`.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& data, const std::string& path);

/// Synthetic Gaussian blobs: one cluster per class, centers drawn uniformly
/// inside the domain from centers_seed, points drawn around each center from
/// points_seed with the given spread and clipped to the domain.
Dataset gen_blobs(int num_classes, int dim, int per_class,
                  uint64_t centers_seed, uint64_t points_seed, double spread,
                  Domain domain, const std::string& name = "blobs");

/// Same generator with explicit class centers (one vector per class).
Dataset gen_blobs_at(const std::vector<std::vector<double>>& centers,
                     int per_class, uint64_t points_seed, double spread,
                     Domain domain, const std::string& name = "blobs");

/// Class centers drawn uniformly inside a band of the domain: every
/// coordinate in [lo + band_lo * width, lo + band_hi * width]. Distinctly
/// placed bands give dataset families distinguishable layouts.
std::vector<std::vector<double>> blob_centers_in_band(int num_classes, int dim,
                                                      uint64_t centers_seed,
                                                      double band_lo,
                                                      double band_hi,
                                                      Domain domain);

/// Disjoint partition: first part gets floor(fraction * N) samples, second
/// the remainder; both keep the original relative order. Throws if either
/// side would be empty.
std::pair<Dataset, Dataset> split(const Dataset& data, double fraction,
                                  uint64_t seed);

/// Indices of the group's samples: label match for ByLabel, 0..N-1 for
/// WholeDataset.
std::vector<size_t> select_group(const Dataset& data, const GroupSpec& spec);

/// Coordinate-wise mean of one class's feature vectors. Throws on an empty
/// class.
std::vector<double> class_mean(const Dataset& data, int label);

/// Rounds every feature to the nearest integer (still clipped to the
/// domain). Used to give pixel-like datasets exactly representable values.
Dataset quantize_to_integers(Dataset data);

/// Writes one feature vector as a PGM (P2, maxval 255) image of the given
/// shape, rescaling the domain to 0..255. Requires height * width == |v|.
void save_pgm(const std::vector<double>& features, int height, int width,
              Domain domain, const std::string& path);

}  // namespace obfuskit

#endif  // OBFUSKIT_DATASET_HPP
