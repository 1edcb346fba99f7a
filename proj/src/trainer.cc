// vtinv/trainer.cc

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

#include "vtinv/trainer.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "vtinv/errors.h"
#include "vtinv/losses.h"
#include "vtinv/rng.h"

namespace vtinv {

void TrainConfig::validate() const {
  if (max_epochs == 0 || batch_size == 0 || patience == 0) {
    throw DataError("train config: epochs, batch size and patience must be positive");
  }
  if (!(learning_rate > 0)) throw DataError("train config: learning rate must be positive");
  if (patience >= max_epochs) throw DataError("train config: patience must be < max_epochs");
  if (min_delta < 0) throw DataError("train config: min_delta must be >= 0");
  if (precision != "f64") {
    throw DataError("train config: unsupported precision '" + precision + "' (this build is f64)");
  }
}

void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state,
               double lr) {
  if (params.size() != grad.size() || params.size() != state.m.size()) {
    throw DataError("adam: shape mismatch");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) throw NumericError("divergence: non-finite gradient");
  }
  state.step += 1;
  const double b1 = state.beta1, b2 = state.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
    const double mhat = state.m[i] / c1;
    const double vhat = state.v[i] / c2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
  }
}

bool EarlyStopping::observe(size_t epoch, double val_loss) {
  if (val_loss < best_ - min_delta_) {
    best_ = val_loss;
    best_epoch_ = epoch;
    stale_ = 0;
    return true;
  }
  ++stale_;
  return false;
}

std::string TrainLog::to_csv() const {
  std::string out = "epoch,train_loss,val_loss,is_best\n";
  char buf[128];
  for (const EpochLog& e : epochs) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%d\n", e.epoch, e.train_loss, e.val_loss,
                  e.is_best ? 1 : 0);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "# best_epoch=%zu stop_epoch=%zu stop_reason=%s\n", best_epoch,
                stop_epoch, stop_reason.c_str());
  out += buf;
  return out;
}

void TrainLog::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write train log: " + path);
  f << to_csv();
  if (!f) throw DataError("write failed: " + path);
}

namespace {

// Forward + loss + backward for one utterance; the gradient buffer must be
// zeroed by the caller.
double utterance_loss_grad(const Model& model, const TrainItem& item, std::span<double> grad) {
  Model::Forward f;
  model.forward(item.features, f);
  const Mat& out = model.output(f);
  LossGrad reg = mse_loss(item.targets, out);
  double loss = reg.value;
  if (model.spec().has_classifier()) {
    if (item.phones == nullptr) throw DataError("MT-5 training needs phone labels");
    const Mat probs = model.phone_probs(f);
    const double ce = cross_entropy_sum(*item.phones, probs);
    const size_t t_len = item.features.rows;
    loss = combined_loss(reg.value, t_len, ce, item.phones->size());
    const Mat dlogits =
        softmax_ce_logit_grad(*item.phones, probs, 1.0 / static_cast<double>(t_len));
    model.backward(item.features, f, reg.grad, dlogits, grad);
  } else {
    model.backward(item.features, f, reg.grad, CMatView(), grad);
  }
  return loss;
}

}  // namespace

double utterance_loss(const Model& model, const TrainItem& item) {
  Model::Forward f;
  model.forward(item.features, f);
  const Mat& out = model.output(f);
  LossGrad reg = mse_loss(item.targets, out);
  if (!model.spec().has_classifier()) return reg.value;
  if (item.phones == nullptr) throw DataError("MT-5 loss needs phone labels");
  const Mat probs = model.phone_probs(f);
  const double ce = cross_entropy_sum(*item.phones, probs);
  return combined_loss(reg.value, item.features.rows, ce, item.phones->size());
}

TrainLog train_model(Model& model, std::span<const TrainItem> train_items,
                     std::span<const TrainItem> valid_items, const TrainConfig& cfg) {
  cfg.validate();
  if (train_items.empty() || valid_items.empty()) throw DataError("empty split");

  const size_t n_params = model.n_params();
  AdamState opt(n_params);
  EarlyStopping stopper(cfg.patience, cfg.min_delta);
  Rng shuffle_rng = Rng::seeded(cfg.seed ^ 0x5e5e5e5e);

  std::vector<size_t> order(train_items.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> best_params(model.params().flat().begin(), model.params().flat().end());
  std::vector<double> batch_grad(n_params);
  TrainLog log;

  for (size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double train_loss_sum = 0.0;
    for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const size_t bsz = std::min(cfg.batch_size, order.size() - start);
      std::vector<std::vector<double>> grads(bsz);
      std::vector<double> losses(bsz);
#pragma omp parallel for schedule(dynamic)
      for (ptrdiff_t k = 0; k < static_cast<ptrdiff_t>(bsz); ++k) {
        grads[k].assign(n_params, 0.0);
        losses[k] = utterance_loss_grad(model, train_items[order[start + k]], grads[k]);
      }
      std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
      const double inv_b = 1.0 / static_cast<double>(bsz);
      for (size_t k = 0; k < bsz; ++k) {  // ordered reduction
        const std::vector<double>& g = grads[k];
        for (size_t i = 0; i < n_params; ++i) batch_grad[i] += g[i];
        train_loss_sum += losses[k];
      }
      for (size_t i = 0; i < n_params; ++i) batch_grad[i] *= inv_b;
      adam_step(model.params().flat(), batch_grad, opt, cfg.learning_rate);
    }
    const double train_loss = train_loss_sum / static_cast<double>(train_items.size());

    std::vector<double> val_losses(valid_items.size());
#pragma omp parallel for schedule(dynamic)
    for (ptrdiff_t k = 0; k < static_cast<ptrdiff_t>(valid_items.size()); ++k) {
      val_losses[k] = utterance_loss(model, valid_items[k]);
    }
    double val_loss = 0.0;
    for (double v : val_losses) val_loss += v;
    val_loss /= static_cast<double>(valid_items.size());
    if (!std::isfinite(val_loss)) throw NumericError("divergence: non-finite validation loss");

    const bool improved = stopper.observe(epoch, val_loss);
    if (improved) {
      const auto flat = model.params().flat();
      best_params.assign(flat.begin(), flat.end());
    }
    log.epochs.push_back({epoch, train_loss, val_loss, improved});
    if (stopper.should_stop()) {
      log.stop_reason = "early_stopping";
      log.stop_epoch = epoch;
      break;
    }
  }
  if (log.stop_reason.empty()) {
    log.stop_reason = "max_epochs";
    log.stop_epoch = cfg.max_epochs;
  }
  log.best_epoch = stopper.best_epoch();
  log.best_val_loss = stopper.best_loss();
  std::copy(best_params.begin(), best_params.end(), model.params().flat().begin());
  return log;
}

}  // namespace vtinv
