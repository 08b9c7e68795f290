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

#include "obfuskit/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace obfuskit {

double ConfusionMatrix::accuracy() const {
  double t = total();
  if (t == 0) throw std::invalid_argument("confusion: empty matrix");
  return (tp + tn) / t;
}

double ConfusionMatrix::precision() const {
  if (tp + fp == 0) throw std::invalid_argument("confusion: no predicted positives");
  return tp / (tp + fp);
}

double ConfusionMatrix::recall() const {
  if (tp + fn == 0) throw std::invalid_argument("confusion: no actual positives");
  return tp / (tp + fn);
}

double ConfusionMatrix::balanced_accuracy() const {
  if (tp + fn == 0 || tn + fp == 0)
    throw std::invalid_argument("confusion: a class is empty");
  return 0.5 * (tp / (tp + fn) + tn / (tn + fp));
}

ConfusionMatrix ConfusionMatrix::from_rates(double tp_rate, double fn_rate,
                                            double fp_rate, double tn_rate) {
  return {tp_rate, fn_rate, fp_rate, tn_rate};
}

ConfusionMatrix confusion_binary(const std::vector<bool>& predictions,
                                 const std::vector<bool>& labels) {
  if (predictions.size() != labels.size())
    throw std::invalid_argument("confusion: length mismatch");
  if (predictions.empty())
    throw std::invalid_argument("confusion: empty input");
  ConfusionMatrix cm;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (labels[i])
      (predictions[i] ? cm.tp : cm.fn) += 1;
    else
      (predictions[i] ? cm.fp : cm.tn) += 1;
  }
  return cm;
}

double f1(const ConfusionMatrix& cm) {
  if (cm.tp + cm.fp + cm.fn == 0)
    throw std::invalid_argument("f1: no positives anywhere");
  if (cm.tp == 0) return 0.0;
  double p = cm.tp / (cm.tp + cm.fp);
  double r = cm.tp / (cm.tp + cm.fn);
  return 2.0 * p * r / (p + r);
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0)
    throw std::invalid_argument("cosine: zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double mse(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("mse: dimension mismatch");
  if (a.empty()) throw std::invalid_argument("mse: empty vectors");
  double sum = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

TrackedTraining train_tracked(Model model, const Dataset& data,
                              const TrainConfig& cfg, const Dataset& eval_train,
                              const Dataset& eval_val) {
  TrackedTraining out;
  out.model = train(std::move(model), data, cfg,
                    [&](int epoch, const Model& m) {
                      out.curve.points.push_back({epoch, accuracy(m, eval_train),
                                                  accuracy(m, eval_val)});
                    });
  return out;
}

std::string curve_to_csv(const AccuracyCurve& curve) {
  std::ostringstream out;
  out << "epoch,train,val\n";
  for (const CurvePoint& p : curve.points)
    out << p.epoch << "," << p.train_acc << "," << p.val_acc << "\n";
  return out.str();
}

}  // namespace obfuskit
