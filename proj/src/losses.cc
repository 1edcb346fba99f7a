// vtinv/losses.cc

// Copyright 2026  The vtinv authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vtinv/losses.h"

#include <cmath>

#include "vtinv/errors.h"

namespace vtinv {

namespace {
constexpr double kProbFloor = 1e-12;
}

LossGrad mse_loss(CMatView y_true, CMatView y_pred) {
  if (y_true.rows != y_pred.rows || y_true.cols != y_pred.cols) {
    throw DataError("mse: shape mismatch");
  }
  const size_t n = y_true.rows * y_true.cols;
  if (n == 0) throw DataError("empty batch");
  LossGrad out;
  out.grad.resize(y_pred.rows, y_pred.cols);
  double sum = 0.0;
  const double scale = 2.0 / static_cast<double>(n);
  for (size_t i = 0; i < y_true.rows; ++i) {
    const double* yt = y_true.row(i);
    const double* yp = y_pred.row(i);
    double* g = out.grad.row(i);
    for (size_t j = 0; j < y_true.cols; ++j) {
      const double diff = yp[j] - yt[j];
      sum += diff * diff;
      g[j] = scale * diff;
    }
  }
  out.value = sum / static_cast<double>(n);
  return out;
}

double cross_entropy_sum(CMatView y_onehot, CMatView probs) {
  if (y_onehot.rows != probs.rows || y_onehot.cols != probs.cols) {
    throw DataError("cross entropy: shape mismatch");
  }
  double total = 0.0;
  for (size_t i = 0; i < y_onehot.rows; ++i) {
    const double* yr = y_onehot.row(i);
    const double* pr = probs.row(i);
    int ones = 0;
    for (size_t c = 0; c < y_onehot.cols; ++c) {
      if (yr[c] == 1.0) {
        ++ones;
        total -= std::log(std::max(pr[c], kProbFloor));
      } else if (yr[c] != 0.0) {
        throw DataError("invalid labels: row " + std::to_string(i) + " is not one-hot");
      }
    }
    if (ones != 1) {
      throw DataError("invalid labels: row " + std::to_string(i) + " is not one-hot");
    }
  }
  return total;
}

double cross_entropy_sum(const std::vector<int>& labels, CMatView probs) {
  if (labels.size() != probs.rows) throw DataError("cross entropy: label count mismatch");
  double total = 0.0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c >= static_cast<int>(probs.cols)) throw DataError("invalid labels");
    total -= std::log(std::max(probs(i, static_cast<size_t>(c)), kProbFloor));
  }
  return total;
}

Mat softmax_ce_logit_grad(const std::vector<int>& labels, CMatView probs, double scale) {
  if (labels.size() != probs.rows) throw DataError("cross entropy: label count mismatch");
  Mat g(probs.rows, probs.cols);
  for (size_t i = 0; i < probs.rows; ++i) {
    const double* pr = probs.row(i);
    double* gr = g.row(i);
    for (size_t c = 0; c < probs.cols; ++c) gr[c] = scale * pr[c];
    gr[labels[i]] -= scale;
  }
  return g;
}

double combined_loss(double mse, size_t reg_frames, double ce_sum, size_t cls_frames) {
  if (reg_frames != cls_frames) throw DataError("batch mismatch: regression and classification cover different frames");
  if (cls_frames == 0) throw DataError("empty batch");
  return mse + ce_sum / static_cast<double>(cls_frames);
}

}  // namespace vtinv
