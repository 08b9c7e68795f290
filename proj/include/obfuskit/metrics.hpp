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

#ifndef OBFUSKIT_METRICS_HPP
#define OBFUSKIT_METRICS_HPP

#include <string>
#include <vector>

#include "obfuskit/model.hpp"

namespace obfuskit {

/// Binary confusion counts. Counts may be fractional: rate-form matrices
/// over balanced evaluation sets behave identically to raw counts because
/// every derived metric is invariant under uniform scaling.
struct ConfusionMatrix {
  double tp = 0;
  double fn = 0;
  double fp = 0;
  double tn = 0;

  double total() const { return tp + fn + fp + tn; }
  double accuracy() const;
  double precision() const;
  double recall() const;
  double balanced_accuracy() const;

  /// Row-normalized matrix (as published for balanced evaluation sets).
  static ConfusionMatrix from_rates(double tp_rate, double fn_rate,
                                    double fp_rate, double tn_rate);
};

/// Exact counts over paired prediction/label vectors (true = positive).
ConfusionMatrix confusion_binary(const std::vector<bool>& predictions,
                                 const std::vector<bool>& labels);

/// 2 * precision * recall / (precision + recall); 0 when tp == 0 but some
/// positives exist. Throws when tp + fp + fn == 0.
double f1(const ConfusionMatrix& cm);

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);
double mse(const std::vector<double>& a, const std::vector<double>& b);

struct CurvePoint {
  int epoch = 0;
  double train_acc = 0.0;
  double val_acc = 0.0;
};

/// Per-epoch train/validation accuracy of one training run.
struct AccuracyCurve {
  std::vector<CurvePoint> points;
};

struct TrackedTraining {
  Model model;
  AccuracyCurve curve;
};

/// Trains and records one curve point per epoch: accuracy on eval_train and
/// eval_val after each pass.
TrackedTraining train_tracked(Model model, const Dataset& data,
                              const TrainConfig& cfg, const Dataset& eval_train,
                              const Dataset& eval_val);

/// CSV rows `epoch,train,val` (with that header).
std::string curve_to_csv(const AccuracyCurve& curve);

}  // namespace obfuskit

#endif  // OBFUSKIT_METRICS_HPP
