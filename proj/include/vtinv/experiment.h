// vtinv/experiment.h

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

#ifndef VTINV_EXPERIMENT_H_
#define VTINV_EXPERIMENT_H_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vtinv/dataset.h"
#include "vtinv/metrics.h"
#include "vtinv/model.h"
#include "vtinv/trainer.h"

namespace vtinv {

struct ExperimentConfig {
  Variant variant = Variant::kST5;
  TaskMode approach = TaskMode::kAAT;
  std::vector<int> articulators;  // ABA only; empty = all 8
  size_t hidden_width = 300;
  TrainConfig train;

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
  void write_file(const std::string& path) const;
};

struct ExperimentResult {
  std::vector<FrameError> frame_errors;  // test split, eval frames flagged
  std::optional<MetricsReport> report;   // set when all 8 articulators covered
  std::vector<std::string> checkpoint_paths;
  std::vector<TrainLog> logs;  // one (AAT) or one per articulator (ABA)
  double phone_accuracy = std::numeric_limits<double>::quiet_NaN();  // MT-5
};

// Trains per the config (one model for AAT, one per articulator for ABA),
// evaluates on the test split and, when out_dir is non-empty, writes
// checkpoints, train logs, metrics.csv and frame_errors.csv there.
ExperimentResult run_experiment(const PreparedDataset& ds, const ExperimentConfig& cfg,
                                const std::string& out_dir);

// Frame errors of a trained model over the given utterances.
std::vector<FrameError> evaluate_model(const Model& model, const PreparedDataset& ds,
                                       const std::vector<size_t>& utt_indices);

// Frame errors of a constant normalized-contour predictor (e.g. the
// training-mean baseline).
std::vector<FrameError> evaluate_constant_predictor(const std::vector<double>& contour,
                                                    const PreparedDataset& ds,
                                                    const std::vector<size_t>& utt_indices);

// Mean frame RMSE (in mm) across eval-included frames and articulators.
double mean_frame_rmse_mm(const std::vector<FrameError>& errors);

// Frame-level phone accuracy of an MT-5 model over eval-included frames.
double phone_accuracy(const Model& model, const PreparedDataset& ds,
                      const std::vector<size_t>& utt_indices);

// Writes aligned pixel-space prediction and truth contour CSVs for one
// utterance (rows are the kept frames, in order). Returns the per-row mm
// RMSE annotations for convenience.
struct PredictionDump {
  std::string pred_path, truth_path;
  std::vector<double> frame_rmse_mm;  // mean over the 8 articulators
};
PredictionDump dump_predictions(const Model& model, const PreparedDataset& ds, size_t utt_index,
                                const std::string& out_dir);

}  // namespace vtinv

#endif  // VTINV_EXPERIMENT_H_
