// vtinv/metrics.h

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

#ifndef VTINV_METRICS_H_
#define VTINV_METRICS_H_

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vtinv/corpus.h"

namespace vtinv {

// Per-frame, per-articulator RMSE in millimeters: both 100-dim vectors are
// denormalized with the local contour stats, differenced in pixel space and
// scaled by the pixel spacing. The mean/std spans are the 100-dim slices of
// the utterance stats for this articulator.
double rmse_frame_articulator(std::span<const double> pred, std::span<const double> truth,
                              std::span<const double> mean, std::span<const double> std,
                              double pixel_spacing_mm);

// Secondary diagnostic: RMS of the 50 Euclidean point distances in mm.
double point_distance_rmse_mm(std::span<const double> pred, std::span<const double> truth,
                              std::span<const double> mean, std::span<const double> std,
                              double pixel_spacing_mm);

struct FrameError {
  int articulator = 0;
  std::string utt_id;
  int frame_id = 0;
  double rmse_mm = 0.0;
  bool eval_included = true;
};

struct ArticulatorAgg {
  double mean_mm = 0.0;
  double std_mm = 0.0;     // population std across frames
  double median_mm = 0.0;
  size_t n_frames = 0;
};

struct MetricsReport {
  std::string model;     // e.g. "ST-5"
  std::string approach;  // "ABA" or "AAT"
  std::array<ArticulatorAgg, kNumArticulators> per_articulator;
  ArticulatorAgg overall;  // arithmetic mean of the 8 per-articulator columns
  // Versus a baseline run; NaN when no baseline was given.
  std::array<double, kNumArticulators> p_value;
  std::array<bool, kNumArticulators> significant{};
  double overall_p = std::numeric_limits<double>::quiet_NaN();
  bool overall_significant = false;

  MetricsReport() { p_value.fill(std::numeric_limits<double>::quiet_NaN()); }
};

// Per-articulator mean/population-std/median over eval-included frames, plus
// the across-articulator means. An articulator without any eval frame is an
// error.
MetricsReport aggregate(const std::vector<FrameError>& errors);

// Metrics CSV: articulator,approach,model,rmse_mean_mm,rmse_std_mm,median_mm,
// p_value,significant — 8 articulator rows plus a "mean" row.
void write_metrics_csv(const std::string& path, const MetricsReport& report);
MetricsReport read_metrics_csv(const std::string& path);

// Frame-level errors for significance testing across runs:
// utt_id,frame_id,articulator,rmse_mm.
void write_frame_errors_csv(const std::string& path, const std::vector<FrameError>& errors);
std::vector<FrameError> read_frame_errors_csv(const std::string& path);

// Paired per-articulator t-tests of run vs baseline frame errors; rows must
// pair frame-for-frame (same prepared dataset). Fills the p/significance
// fields of report.
void attach_significance(MetricsReport& report, const std::vector<FrameError>& run,
                         const std::vector<FrameError>& baseline);

}  // namespace vtinv

#endif  // VTINV_METRICS_H_
