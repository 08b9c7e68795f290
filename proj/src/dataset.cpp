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

#include "obfuskit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "obfuskit/rng.hpp"

namespace obfuskit {

void Dataset::validate() const {
  if (dim < 1) throw std::invalid_argument("dataset: dim must be >= 1");
  if (num_classes < 2)
    throw std::invalid_argument("dataset: num_classes must be >= 2");
  if (!(domain.lo < domain.hi))
    throw std::invalid_argument("dataset: domain lo must be < hi");
  for (size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (static_cast<int>(s.features.size()) != dim)
      throw std::invalid_argument("dataset: sample " + std::to_string(i) +
                                  " has " + std::to_string(s.features.size()) +
                                  " features, expected " + std::to_string(dim));
    if (s.label < 0 || s.label >= num_classes)
      throw std::invalid_argument("dataset: sample " + std::to_string(i) +
                                  " label " + std::to_string(s.label) +
                                  " out of range");
    for (double v : s.features) {
      if (!std::isfinite(v) || !domain.contains(v))
        throw std::invalid_argument("dataset: sample " + std::to_string(i) +
                                    " feature outside domain");
    }
  }
}

void SensitiveSelection::validate(const Dataset& data) const {
  std::set<size_t> seen;
  for (size_t idx : indices) {
    if (idx >= data.size())
      throw std::invalid_argument("selection: index " + std::to_string(idx) +
                                  " out of range");
    if (!seen.insert(idx).second)
      throw std::invalid_argument("selection: duplicate index " +
                                  std::to_string(idx));
  }
}

SensitiveSelection SensitiveSelection::all(const Dataset& data) {
  SensitiveSelection sel;
  sel.indices.resize(data.size());
  for (size_t i = 0; i < data.size(); ++i) sel.indices[i] = i;
  return sel;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Pulls `key=` out of the header line; throws if absent.
std::string header_field(const std::string& header, const std::string& key) {
  std::string needle = key + "=";
  size_t pos = header.find(needle);
  if (pos == std::string::npos)
    throw std::runtime_error("csv: header missing field '" + key + "'");
  size_t start = pos + needle.size();
  size_t end = header.find(' ', start);
  return header.substr(start, end == std::string::npos ? end : end - start);
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);

  std::string header;
  if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
    throw std::runtime_error("csv: missing '# ...' header in " + path);

  Dataset data;
  data.name = header_field(header, "name");
  data.dim = std::stoi(header_field(header, "d"));
  data.num_classes = std::stoi(header_field(header, "C"));
  std::string dom = header_field(header, "domain");
  size_t comma = dom.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error("csv: malformed domain in header");
  data.domain.lo = std::stod(dom.substr(0, comma));
  data.domain.hi = std::stod(dom.substr(comma + 1));

  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Sample s;
    if (!std::getline(ss, cell, ','))
      throw std::runtime_error("csv: empty row at line " +
                               std::to_string(lineno));
    s.label = std::stoi(cell);
    while (std::getline(ss, cell, ',')) s.features.push_back(std::stod(cell));
    if (static_cast<int>(s.features.size()) != data.dim)
      throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                               std::to_string(s.features.size()) +
                               " features, expected " +
                               std::to_string(data.dim));
    data.samples.push_back(std::move(s));
  }
  data.validate();
  return data;
}

void save_csv(const Dataset& data, const std::string& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << "# name=" << data.name << " d=" << data.dim << " C="
      << data.num_classes << " domain=" << format_double(data.domain.lo) << ","
      << format_double(data.domain.hi) << "\n";
  for (const Sample& s : data.samples) {
    out << s.label;
    for (double v : s.features) out << "," << format_double(v);
    out << "\n";
  }
}

Dataset gen_blobs_at(const std::vector<std::vector<double>>& centers,
                     int per_class, uint64_t points_seed, double spread,
                     Domain domain, const std::string& name) {
  if (centers.size() < 2)
    throw std::invalid_argument("gen_blobs: need at least 2 class centers");
  if (per_class < 0)
    throw std::invalid_argument("gen_blobs: per_class must be >= 0");
  if (spread < 0) throw std::invalid_argument("gen_blobs: spread must be >= 0");

  Dataset data;
  data.name = name;
  data.num_classes = static_cast<int>(centers.size());
  data.dim = static_cast<int>(centers.front().size());
  data.domain = domain;

  Rng rng(points_seed);
  for (int c = 0; c < data.num_classes; ++c) {
    const std::vector<double>& center = centers[c];
    if (static_cast<int>(center.size()) != data.dim)
      throw std::invalid_argument("gen_blobs: ragged centers");
    for (int k = 0; k < per_class; ++k) {
      Sample s;
      s.label = c;
      s.features.resize(data.dim);
      for (int j = 0; j < data.dim; ++j)
        s.features[j] = domain.clip(rng.normal(center[j], spread));
      data.samples.push_back(std::move(s));
    }
  }
  data.validate();
  return data;
}

std::vector<std::vector<double>> blob_centers_in_band(int num_classes, int dim,
                                                      uint64_t centers_seed,
                                                      double band_lo,
                                                      double band_hi,
                                                      Domain domain) {
  if (num_classes < 2)
    throw std::invalid_argument("gen_blobs: num_classes must be >= 2");
  if (dim < 1) throw std::invalid_argument("gen_blobs: dim must be >= 1");
  if (!(band_lo >= 0 && band_lo < band_hi && band_hi <= 1))
    throw std::invalid_argument("gen_blobs: band must satisfy 0 <= lo < hi <= 1");

  Rng rng(centers_seed);
  double lo = domain.lo + band_lo * domain.width();
  double hi = domain.lo + band_hi * domain.width();
  std::vector<std::vector<double>> centers(num_classes,
                                           std::vector<double>(dim));
  for (int c = 0; c < num_classes; ++c)
    for (int j = 0; j < dim; ++j) centers[c][j] = rng.uniform(lo, hi);
  return centers;
}

Dataset gen_blobs(int num_classes, int dim, int per_class,
                  uint64_t centers_seed, uint64_t points_seed, double spread,
                  Domain domain, const std::string& name) {
  // Centers stay inside the middle 70% of the domain so the point clouds do
  // not pile up on the clipping boundary.
  return gen_blobs_at(blob_centers_in_band(num_classes, dim, centers_seed,
                                           0.15, 0.85, domain),
                      per_class, points_seed, spread, domain, name);
}

std::pair<Dataset, Dataset> split(const Dataset& data, double fraction,
                                  uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split: fraction must be in (0, 1)");
  size_t n = data.size();
  size_t first_n = static_cast<size_t>(fraction * static_cast<double>(n));
  if (first_n == 0 || first_n == n)
    throw std::invalid_argument("split: a side would be empty");

  Rng rng(seed);
  std::vector<size_t> perm = rng.permutation(n);
  std::vector<size_t> first(perm.begin(), perm.begin() + first_n);
  std::vector<size_t> second(perm.begin() + first_n, perm.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());

  auto take = [&](const std::vector<size_t>& idx) {
    Dataset part;
    part.name = data.name;
    part.dim = data.dim;
    part.num_classes = data.num_classes;
    part.domain = data.domain;
    part.samples.reserve(idx.size());
    for (size_t i : idx) part.samples.push_back(data.samples[i]);
    return part;
  };
  return {take(first), take(second)};
}

std::vector<size_t> select_group(const Dataset& data, const GroupSpec& spec) {
  std::vector<size_t> indices;
  if (spec.kind == GroupSpec::Kind::WholeDataset) {
    indices.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i) indices[i] = i;
    return indices;
  }
  if (spec.label < 0 || spec.label >= data.num_classes)
    throw std::invalid_argument("group: label " + std::to_string(spec.label) +
                                " out of range");
  for (size_t i = 0; i < data.size(); ++i)
    if (data.samples[i].label == spec.label) indices.push_back(i);
  return indices;
}

std::vector<double> class_mean(const Dataset& data, int label) {
  std::vector<double> sum(data.dim, 0.0);
  size_t count = 0;
  for (const Sample& s : data.samples) {
    if (s.label != label) continue;
    for (int j = 0; j < data.dim; ++j) sum[j] += s.features[j];
    ++count;
  }
  if (count == 0)
    throw std::invalid_argument("class_mean: class " + std::to_string(label) +
                                " is empty");
  for (double& v : sum) v /= static_cast<double>(count);
  return sum;
}

Dataset quantize_to_integers(Dataset data) {
  for (Sample& s : data.samples)
    for (double& v : s.features) v = data.domain.clip(std::round(v));
  data.validate();
  return data;
}

void save_pgm(const std::vector<double>& features, int height, int width,
              Domain domain, const std::string& path) {
  if (height * width != static_cast<int>(features.size()))
    throw std::invalid_argument("pgm: shape does not match feature count");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("pgm: cannot write " + path);
  out << "P2\n" << width << " " << height << "\n255\n";
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      double v = (features[r * width + c] - domain.lo) / domain.width();
      long pixel = std::lround(v * 255.0);
      pixel = std::clamp(pixel, 0L, 255L);
      out << pixel << (c + 1 == width ? "" : " ");
    }
    out << "\n";
  }
}

}  // namespace obfuskit
