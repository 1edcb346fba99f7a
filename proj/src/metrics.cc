// vtinv/metrics.cc

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

#include "vtinv/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "vtinv/errors.h"
#include "vtinv/ttest.h"

namespace vtinv {

namespace {

void check_contour_len(size_t pred, size_t truth, size_t mean, size_t std) {
  if (pred != kArticulatorDim || truth != kArticulatorDim || mean != kArticulatorDim ||
      std != kArticulatorDim) {
    throw DataError("contour length error: expected 100 values per articulator");
  }
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double rmse_frame_articulator(std::span<const double> pred, std::span<const double> truth,
                              std::span<const double> mean, std::span<const double> std,
                              double pixel_spacing_mm) {
  check_contour_len(pred.size(), truth.size(), mean.size(), std.size());
  double sum = 0.0;
  for (size_t j = 0; j < kArticulatorDim; ++j) {
    const double p = pred[j] * std[j] + mean[j];
    const double t = truth[j] * std[j] + mean[j];
    const double d = (p - t) * pixel_spacing_mm;
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(kArticulatorDim));
}

double point_distance_rmse_mm(std::span<const double> pred, std::span<const double> truth,
                              std::span<const double> mean, std::span<const double> std,
                              double pixel_spacing_mm) {
  check_contour_len(pred.size(), truth.size(), mean.size(), std.size());
  double sum = 0.0;
  for (size_t j = 0; j < kPointsPerContour; ++j) {
    const size_t xj = j, yj = kPointsPerContour + j;
    const double dx = ((pred[xj] - truth[xj]) * std[xj]) * pixel_spacing_mm;
    const double dy = ((pred[yj] - truth[yj]) * std[yj]) * pixel_spacing_mm;
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum / static_cast<double>(kPointsPerContour));
}

MetricsReport aggregate(const std::vector<FrameError>& errors) {
  std::array<std::vector<double>, kNumArticulators> by_art;
  for (const FrameError& e : errors) {
    if (!e.eval_included) continue;
    if (e.articulator < 0 || e.articulator >= static_cast<int>(kNumArticulators)) {
      throw DataError("frame error with bad articulator index");
    }
    by_art[static_cast<size_t>(e.articulator)].push_back(e.rmse_mm);
  }
  MetricsReport rep;
  double mean_sum = 0.0, std_sum = 0.0, median_sum = 0.0;
  size_t total = 0;
  for (size_t a = 0; a < kNumArticulators; ++a) {
    const auto& v = by_art[a];
    if (v.empty()) {
      throw DataError("empty articulator: no eval frames for " +
                      articulator_slug(static_cast<Articulator>(a)));
    }
    ArticulatorAgg& agg = rep.per_articulator[a];
    agg.n_frames = v.size();
    double s = 0.0;
    for (double x : v) s += x;
    agg.mean_mm = s / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - agg.mean_mm) * (x - agg.mean_mm);
    agg.std_mm = std::sqrt(ss / v.size());
    agg.median_mm = median_of(v);
    mean_sum += agg.mean_mm;
    std_sum += agg.std_mm;
    median_sum += agg.median_mm;
    total += v.size();
  }
  rep.overall.mean_mm = mean_sum / kNumArticulators;
  rep.overall.std_mm = std_sum / kNumArticulators;
  rep.overall.median_mm = median_sum / kNumArticulators;
  rep.overall.n_frames = total;
  return rep;
}

void write_metrics_csv(const std::string& path, const MetricsReport& report) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write metrics csv: " + path);
  f << "articulator,approach,model,rmse_mean_mm,rmse_std_mm,median_mm,p_value,significant\n";
  char buf[256];
  auto line = [&](const std::string& name, const ArticulatorAgg& agg, double p, bool sig) {
    if (std::isnan(p)) {
      std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%.6f,%.6f,,\n", name.c_str(),
                    report.approach.c_str(), report.model.c_str(), agg.mean_mm, agg.std_mm,
                    agg.median_mm);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%.6f,%.6f,%.9g,%d\n", name.c_str(),
                    report.approach.c_str(), report.model.c_str(), agg.mean_mm, agg.std_mm,
                    agg.median_mm, p, sig ? 1 : 0);
    }
    f << buf;
  };
  for (size_t a = 0; a < kNumArticulators; ++a) {
    line(articulator_slug(static_cast<Articulator>(a)), report.per_articulator[a],
         report.p_value[a], report.significant[a]);
  }
  line("mean", report.overall, report.overall_p, report.overall_significant);
  if (!f) throw DataError("write failed: " + path);
}

MetricsReport read_metrics_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open metrics csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("empty metrics csv: " + path);
  MetricsReport rep;
  size_t rows = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cells.emplace_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cells.size() != 8) throw DataError("bad metrics csv row: " + line);
    ArticulatorAgg agg;
    agg.mean_mm = std::stod(cells[3]);
    agg.std_mm = std::stod(cells[4]);
    agg.median_mm = std::stod(cells[5]);
    const double p = cells[6].empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : std::stod(cells[6]);
    const bool sig = !cells[7].empty() && cells[7] == "1";
    rep.approach = cells[1];
    rep.model = cells[2];
    if (cells[0] == "mean") {
      rep.overall = agg;
      rep.overall_p = p;
      rep.overall_significant = sig;
    } else {
      const size_t a = static_cast<size_t>(articulator_from_slug(cells[0]));
      rep.per_articulator[a] = agg;
      rep.p_value[a] = p;
      rep.significant[a] = sig;
    }
    ++rows;
  }
  if (rows != kNumArticulators + 1) {
    throw DataError("metrics csv must have 9 data rows, got " + std::to_string(rows));
  }
  return rep;
}

void write_frame_errors_csv(const std::string& path, const std::vector<FrameError>& errors) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write frame errors csv: " + path);
  f << "utt_id,frame_id,articulator,rmse_mm\n";
  char buf[160];
  for (const FrameError& e : errors) {
    if (!e.eval_included) continue;
    std::snprintf(buf, sizeof buf, "%s,%d,%s,%.9g\n", e.utt_id.c_str(), e.frame_id,
                  articulator_slug(static_cast<Articulator>(e.articulator)).c_str(), e.rmse_mm);
    f << buf;
  }
  if (!f) throw DataError("write failed: " + path);
}

std::vector<FrameError> read_frame_errors_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open frame errors csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("empty frame errors csv: " + path);
  std::vector<FrameError> errors;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    FrameError e;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    const size_t c3 = line.find(',', c2 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos) {
      throw DataError("bad frame errors row: " + line);
    }
    e.utt_id = line.substr(0, c1);
    e.frame_id = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
    e.articulator = static_cast<int>(articulator_from_slug(line.substr(c2 + 1, c3 - c2 - 1)));
    e.rmse_mm = std::stod(line.substr(c3 + 1));
    e.eval_included = true;
    errors.push_back(std::move(e));
  }
  return errors;
}

void attach_significance(MetricsReport& report, const std::vector<FrameError>& run,
                         const std::vector<FrameError>& baseline) {
  std::array<std::vector<double>, kNumArticulators> rv, bv;
  std::array<std::vector<std::pair<std::string, int>>, kNumArticulators> rk, bk;
  for (const FrameError& e : run) {
    if (!e.eval_included) continue;
    rv[e.articulator].push_back(e.rmse_mm);
    rk[e.articulator].emplace_back(e.utt_id, e.frame_id);
  }
  for (const FrameError& e : baseline) {
    if (!e.eval_included) continue;
    bv[e.articulator].push_back(e.rmse_mm);
    bk[e.articulator].emplace_back(e.utt_id, e.frame_id);
  }
  std::vector<double> all_run, all_base;
  for (size_t a = 0; a < kNumArticulators; ++a) {
    if (rk[a] != bk[a]) {
      throw DataError("frame errors do not pair: runs were evaluated on different frames");
    }
    const TTestResult res = paired_t_test(rv[a], bv[a]);
    report.p_value[a] = res.p;
    report.significant[a] = res.significant;
    all_run.insert(all_run.end(), rv[a].begin(), rv[a].end());
    all_base.insert(all_base.end(), bv[a].begin(), bv[a].end());
  }
  const TTestResult overall = paired_t_test(all_run, all_base);
  report.overall_p = overall.p;
  report.overall_significant = overall.significant;
}

}  // namespace vtinv
