// vtinv/trainer.h

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

#ifndef VTINV_TRAINER_H_
#define VTINV_TRAINER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vtinv/mat.h"
#include "vtinv/model.h"

namespace vtinv {

struct TrainConfig {
  size_t max_epochs = 500;
  size_t batch_size = 10;  // utterances per batch
  double learning_rate = 0.001;
  size_t patience = 10;
  double min_delta = 1e-6;  // improvement = strict decrease by more than this
  uint64_t seed = 0;
  std::string precision = "f64";

  void validate() const;  // throws DataError
};

struct AdamState {
  std::vector<double> m, v;
  size_t step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  explicit AdamState(size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// Bias-corrected Adam update. Throws NumericError("divergence") on
// non-finite gradients.
void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state,
               double lr);

// Patience-based stopping on the validation loss. An epoch improves iff its
// loss is below the best seen by more than min_delta.
class EarlyStopping {
 public:
  EarlyStopping(size_t patience, double min_delta) : patience_(patience), min_delta_(min_delta) {}

  // Feed the validation loss of a (1-based) epoch; returns true on improvement.
  bool observe(size_t epoch, double val_loss);
  bool should_stop() const { return stale_ >= patience_; }
  size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_; }

 private:
  size_t patience_;
  double min_delta_;
  double best_ = std::numeric_limits<double>::infinity();
  size_t best_epoch_ = 0;
  size_t stale_ = 0;
};

struct EpochLog {
  size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  bool is_best = false;
};

struct TrainLog {
  std::vector<EpochLog> epochs;
  size_t best_epoch = 0;
  size_t stop_epoch = 0;
  double best_val_loss = std::numeric_limits<double>::infinity();
  std::string stop_reason;  // "early_stopping" or "max_epochs"

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

// One training example: a whole utterance.
struct TrainItem {
  CMatView features;  // T x input_dim
  CMatView targets;   // T x output_dim
  const std::vector<int>* phones = nullptr;  // MT-5 only
};

// Trains in place; on return the model holds the best-validation-epoch
// parameters. Batches are seeded shuffles of whole utterances; the batch
// gradient is the mean of per-utterance mean-loss gradients, accumulated in
// utterance order (deterministic for any thread count).
TrainLog train_model(Model& model, std::span<const TrainItem> train_items,
                     std::span<const TrainItem> valid_items, const TrainConfig& cfg);

// Loss of one utterance under the model's objective (MSE, plus per-frame
// scaled cross-entropy for MT-5). Exposed for evaluation and tests.
double utterance_loss(const Model& model, const TrainItem& item);

}  // namespace vtinv

#endif  // VTINV_TRAINER_H_
