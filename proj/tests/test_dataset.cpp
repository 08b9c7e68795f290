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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/rng.hpp"
#include "support.hpp"

using namespace obfuskit;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

Dataset small_dataset() {
  Dataset d;
  d.name = "toy";
  d.dim = 3;
  d.num_classes = 2;
  d.domain = {0.0, 255.0};
  d.samples = {{{0.0, 100.5, 255.0}, 0},
               {{1.25, 2.5, 3.75}, 1},
               {{200.0, 50.0, 25.0}, 0}};
  return d;
}

}  // namespace

TEST_CASE("csv round trip preserves the dataset") {
  Dataset d = small_dataset();
  auto path = temp_file("obfuskit_roundtrip.csv");
  save_csv(d, path.string());
  Dataset loaded = load_csv(path.string());
  CHECK(loaded.name == d.name);
  CHECK(loaded.dim == d.dim);
  CHECK(loaded.num_classes == d.num_classes);
  CHECK(loaded.domain.lo == d.domain.lo);
  CHECK(loaded.domain.hi == d.domain.hi);
  REQUIRE(loaded.size() == d.size());
  for (size_t i = 0; i < d.size(); ++i) {
    CHECK(loaded.samples[i].label == d.samples[i].label);
    for (int j = 0; j < d.dim; ++j)
      CHECK(loaded.samples[i].features[j] == d.samples[i].features[j]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("csv header carries the domain") {
  auto path = temp_file("obfuskit_header.csv");
  {
    std::ofstream out(path);
    out << "# name=px d=2 C=2 domain=0,255\n0,1,2\n1,3,4\n";
  }
  Dataset d = load_csv(path.string());
  CHECK(d.domain.lo == 0.0);
  CHECK(d.domain.hi == 255.0);
  std::filesystem::remove(path);
}

TEST_CASE("csv rejects ragged rows") {
  auto path = temp_file("obfuskit_ragged.csv");
  {
    std::ofstream out(path);
    out << "# name=px d=4 C=2 domain=0,255\n0,1,2,3\n";  // 3 features, d=4
  }
  CHECK_THROWS(load_csv(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("csv rejects out-of-range labels") {
  auto path = temp_file("obfuskit_badlabel.csv");
  {
    std::ofstream out(path);
    out << "# name=px d=1 C=2 domain=0,255\n5,1\n";
  }
  CHECK_THROWS(load_csv(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("csv rejects non-numeric cells") {
  auto path = temp_file("obfuskit_badcell.csv");
  {
    std::ofstream out(path);
    out << "# name=px d=2 C=2 domain=0,255\n0,1,oops\n";
  }
  CHECK_THROWS(load_csv(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("gen_blobs honors per_class zero") {
  Dataset d = gen_blobs(3, 4, 0, 1, 2, 10.0, {0, 255});
  CHECK(d.size() == 0);
  CHECK(d.num_classes == 3);
}

TEST_CASE("gen_blobs with zero spread emits the centers") {
  std::vector<std::vector<double>> centers = {{10.0, 20.0}, {200.0, 100.0}};
  Dataset d = gen_blobs_at(centers, 3, 7, 0.0, {0, 255});
  for (const Sample& s : d.samples)
    for (int j = 0; j < 2; ++j)
      CHECK(s.features[j] == centers[s.label][j]);
}

TEST_CASE("gen_blobs is deterministic given seeds") {
  Dataset a = gen_blobs(2, 8, 10, 5, 6, 20.0, {0, 255});
  Dataset b = gen_blobs(2, 8, 10, 5, 6, 20.0, {0, 255});
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(a.samples[i].features == b.samples[i].features);
}

TEST_CASE("well separated blobs train to perfect accuracy") {
  Dataset d = testing::two_blob_dataset(8, 20, 8.0, 11);
  ModelSpec spec = ModelSpec::softmax(d.dim, d.num_classes, d.domain);
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.5;
  cfg.seed = 3;
  Model m = train(init_model(spec, 1), d, cfg);
  CHECK(accuracy(m, d) == 1.0);
}

TEST_CASE("split produces the documented sizes") {
  Dataset d = gen_blobs(2, 4, 50, 1, 2, 20.0, {0, 255});
  REQUIRE(d.size() == 100);
  auto [a, b] = split(d, 0.5, 9);
  CHECK(a.size() == 50);
  CHECK(b.size() == 50);
}

TEST_CASE("split is a disjoint partition of the multiset") {
  Dataset d = gen_blobs(3, 4, 21, 1, 2, 20.0, {0, 255});
  auto [a, b] = split(d, 0.3, 9);
  CHECK(a.size() == static_cast<size_t>(0.3 * 63));
  CHECK(a.size() + b.size() == d.size());

  auto key = [](const Sample& s) {
    std::string k = std::to_string(s.label);
    for (double v : s.features) k += "|" + std::to_string(v);
    return k;
  };
  std::multiset<std::string> original, recombined;
  for (const Sample& s : d.samples) original.insert(key(s));
  for (const Sample& s : a.samples) recombined.insert(key(s));
  for (const Sample& s : b.samples) recombined.insert(key(s));
  CHECK(original == recombined);
}

TEST_CASE("split differs across seeds") {
  Dataset d = gen_blobs(2, 4, 20, 1, 2, 20.0, {0, 255});
  auto [a1, b1] = split(d, 0.5, 1);
  auto [a2, b2] = split(d, 0.5, 2);
  bool same = true;
  for (size_t i = 0; i < a1.size() && same; ++i)
    same = a1.samples[i].features == a2.samples[i].features;
  CHECK_FALSE(same);
}

TEST_CASE("split rejects degenerate fractions") {
  Dataset d = gen_blobs(2, 4, 1, 1, 2, 20.0, {0, 255});
  CHECK_THROWS(split(d, 0.3, 1));  // floor(0.6) == 0
  CHECK_THROWS(split(d, 0.0, 1));
  CHECK_THROWS(split(d, 1.0, 1));
}

TEST_CASE("select_group covers label and whole-dataset specs") {
  Dataset d = gen_blobs(3, 4, 10, 1, 2, 20.0, {0, 255});
  std::vector<size_t> whole = select_group(d, GroupSpec::whole());
  REQUIRE(whole.size() == d.size());
  for (size_t i = 0; i < whole.size(); ++i) CHECK(whole[i] == i);

  size_t total = 0;
  for (int c = 0; c < 3; ++c) {
    std::vector<size_t> group = select_group(d, GroupSpec::by_label(c));
    for (size_t idx : group) CHECK(d.samples[idx].label == c);
    total += group.size();
  }
  CHECK(total == d.size());
}

TEST_CASE("select_group on an absent class is empty") {
  Dataset d = small_dataset();
  d.num_classes = 3;  // class 2 declared but unused
  CHECK(select_group(d, GroupSpec::by_label(2)).empty());
}

TEST_CASE("class_mean matches a brute-force oracle") {
  Dataset d = gen_blobs(3, 5, 17, 4, 5, 30.0, {0, 255});
  for (int c = 0; c < 3; ++c) {
    std::vector<double> sum(5, 0.0);
    size_t count = 0;
    for (const Sample& s : d.samples)
      if (s.label == c) {
        for (int j = 0; j < 5; ++j) sum[j] += s.features[j];
        ++count;
      }
    std::vector<double> mean = class_mean(d, c);
    for (int j = 0; j < 5; ++j)
      CHECK(mean[j] == doctest::Approx(sum[j] / count).epsilon(1e-12));
  }
}

TEST_CASE("class_mean of a single sample is that sample") {
  Dataset d = small_dataset();
  std::vector<double> mean = class_mean(d, 1);
  CHECK(mean == d.samples[1].features);
}

TEST_CASE("class_mean of a symmetric pair is the midpoint") {
  Dataset d;
  d.name = "sym";
  d.dim = 2;
  d.num_classes = 2;
  d.domain = {0.0, 255.0};
  d.samples = {{{40.0, 200.0}, 0}, {{215.0, 55.0}, 0}, {{1.0, 1.0}, 1}};
  std::vector<double> mean = class_mean(d, 0);
  CHECK(mean[0] == doctest::Approx(127.5));
  CHECK(mean[1] == doctest::Approx(127.5));
}

TEST_CASE("class_mean rejects an empty class") {
  Dataset d = small_dataset();
  d.num_classes = 3;
  CHECK_THROWS(class_mean(d, 2));
}

TEST_CASE("quantize_to_integers rounds every feature") {
  Dataset d = small_dataset();
  Dataset q = quantize_to_integers(d);
  for (const Sample& s : q.samples)
    for (double v : s.features) CHECK(v == std::round(v));
}

TEST_CASE("save_pgm writes a readable P2 image") {
  auto path = temp_file("obfuskit_sample.pgm");
  std::vector<double> img = {0.0, 127.5, 255.0, 64.0, 32.0, 16.0};
  save_pgm(img, 2, 3, {0, 255}, path.string());
  std::ifstream in(path);
  std::string magic;
  int w, h, maxval, first;
  in >> magic >> w >> h >> maxval >> first;
  CHECK(magic == "P2");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 255);
  CHECK(first == 0);
  std::filesystem::remove(path);
}

TEST_CASE("save_pgm rejects a mismatched shape") {
  std::vector<double> img(5, 0.0);
  CHECK_THROWS(save_pgm(img, 2, 3, {0, 255}, "unused.pgm"));
}
