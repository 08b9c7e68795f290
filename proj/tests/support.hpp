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
//
// Shared test utilities: independent oracles and data builders used by both
// the unit suite and the acceptance suite.

#ifndef OBFUSKIT_TESTS_SUPPORT_HPP
#define OBFUSKIT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "obfuskit/dataset.hpp"
#include "obfuskit/model.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit::testing {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Central finite differences on the training loss, step 1e-5. Returns the
/// worst per-coordinate relative error of the analytic gradient. Independent
/// of the backprop path: it only evaluates the loss.
inline double max_gradient_error(const Model& model,
                                 const std::vector<Sample>& batch) {
  constexpr double kStep = 1e-5;
  LossGradient analytic = loss_and_gradient(model, batch);

  std::vector<double> flat = get_parameters(model);
  std::vector<double> analytic_flat;
  for (const ParamGroup& g : analytic.grads)
    analytic_flat.insert(analytic_flat.end(), g.values.begin(),
                         g.values.end());

  double worst = 0.0;
  for (size_t k = 0; k < flat.size(); ++k) {
    std::vector<double> plus = flat, minus = flat;
    plus[k] += kStep;
    minus[k] -= kStep;
    double lp = loss_and_gradient(set_parameters(model, plus), batch).loss;
    double lm = loss_and_gradient(set_parameters(model, minus), batch).loss;
    double fd = (lp - lm) / (2 * kStep);
    double a = analytic_flat[k];
    double magnitude = std::max(std::abs(a), std::abs(fd));
    if (magnitude < 1e-7) continue;  // dead coordinate, both sides ~zero
    worst = std::max(worst, std::abs(a - fd) / magnitude);
  }
  return worst;
}

/// Random (model, batch) case for the gradient oracle. ReLU nets are redrawn
/// until every hidden pre-activation clears the kink by a margin, so the
/// finite-difference comparison stays valid.
struct GradientCase {
  Model model;
  std::vector<Sample> batch;
};

inline GradientCase random_gradient_case(uint64_t seed) {
  for (uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, "gradcase", attempt));
    int arch = static_cast<int>(rng.index(3));
    int d = 2 + static_cast<int>(rng.index(4));
    int c = 2 + static_cast<int>(rng.index(3));
    int h = 2 + static_cast<int>(rng.index(5));
    Domain domain{0.0, 1.0};

    ModelSpec spec;
    if (arch == 0) {
      spec = ModelSpec::softmax(d, c, domain, rng.uniform(0.0, 0.5));
    } else {
      spec = ModelSpec::mlp(d, h, c, domain, rng.uniform(0.0, 0.5),
                            arch == 1 ? Activation::ReLU
                                      : Activation::Sigmoid);
    }
    Model model = init_model(spec, rng.next_u64());
    // Spread the parameters out so gradients are not uniformly tiny.
    std::vector<double> flat = get_parameters(model);
    for (double& v : flat) v = rng.uniform(-1.0, 1.0);
    model = set_parameters(std::move(model), flat);

    std::vector<Sample> batch(1 + rng.index(4));
    for (Sample& s : batch) {
      s.features.resize(d);
      for (double& v : s.features) v = rng.uniform(0.0, 1.0);
      s.label = static_cast<int>(rng.index(c));
    }

    if (spec.arch == ModelSpec::Arch::Mlp &&
        spec.activation == Activation::ReLU) {
      // Recompute the first layer by hand and reject near-kink cases.
      const ParamGroup& w1 = model.params[0];
      const ParamGroup& b1 = model.params[1];
      double margin = 1e30;
      for (const Sample& s : batch)
        for (int j = 0; j < spec.hidden_width; ++j) {
          double a = b1.values[j];
          for (int i = 0; i < d; ++i) a += s.features[i] * w1.at(i, j);
          margin = std::min(margin, std::abs(a));
        }
      if (margin < 1e-3) continue;
    }
    return {std::move(model), std::move(batch)};
  }
}

/// Two well-separated blob classes with per-coordinate asymmetric centers
/// (class 1's reflection stays clear of class 0), the inversion benchmark.
inline Dataset two_blob_dataset(int dim, int per_class, double spread,
                                uint64_t points_seed) {
  Domain domain{0.0, 255.0};
  std::vector<std::vector<double>> centers(2, std::vector<double>(dim));
  for (int j = 0; j < dim; ++j) {
    centers[0][j] = (j % 2 == 0 ? 0.28 : 0.42) * 255.0;
    centers[1][j] = (j % 2 == 0 ? 0.62 : 0.78) * 255.0;
  }
  return gen_blobs_at(centers, per_class, points_seed, spread, domain,
                      "two-blobs");
}

}  // namespace obfuskit::testing

#endif  // OBFUSKIT_TESTS_SUPPORT_HPP
