// vtinv/losses.h

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

#ifndef VTINV_LOSSES_H_
#define VTINV_LOSSES_H_

#include <vector>

#include "vtinv/mat.h"

namespace vtinv {

struct LossGrad {
  double value = 0.0;
  Mat grad;  // same shape as the prediction
};

// (1/n) sum (y - yhat)^2 over all scalars; grad w.r.t. yhat is (2/n)(yhat - y).
LossGrad mse_loss(CMatView y_true, CMatView y_pred);

// Unnormalized double sum -sum_i sum_c y_ic log(max(p_ic, 1e-12)).
// y rows must be one-hot ("invalid labels" otherwise).
double cross_entropy_sum(CMatView y_onehot, CMatView probs);
// Fast path with integer labels.
double cross_entropy_sum(const std::vector<int>& labels, CMatView probs);

// Gradient of (scale * cross-entropy) w.r.t. the logits feeding a softmax:
// scale * (probs - onehot).
Mat softmax_ce_logit_grad(const std::vector<int>& labels, CMatView probs, double scale);

// MSE plus cross-entropy scaled per-frame: mse + ce_sum / n_frames. Both
// batches must cover the same frames ("batch mismatch" otherwise).
double combined_loss(double mse, size_t reg_frames, double ce_sum, size_t cls_frames);

}  // namespace vtinv

#endif  // VTINV_LOSSES_H_
