// vtinv/report.cc

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

#include "vtinv/report.h"

#include <cmath>
#include <cstdio>

#include "vtinv/errors.h"

namespace vtinv {

namespace {

constexpr int kLabelWidth = 21;
constexpr int kRunWidth = 22;  // "  1.76* +- 1.04  1.51"

std::string run_label(const MetricsReport& r) { return r.model + " (" + r.approach + ")"; }

std::string pad_left(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

std::string cell(const ArticulatorAgg& agg, bool star) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%5.2f%s ± %4.2f %6.2f", agg.mean_mm, star ? "*" : " ",
                agg.std_mm, agg.median_mm);
  return buf;
}

}  // namespace

std::string render_comparison_table(const std::vector<MetricsReport>& runs,
                                    const std::optional<std::string>& baseline_label) {
  if (runs.empty()) throw DataError("no runs to render");
  std::string out;

  out += pad_right("", kLabelWidth) + "|";
  for (const MetricsReport& r : runs) out += pad_left(run_label(r), kRunWidth) + " |";
  out += "\n";

  out += pad_right("", kLabelWidth) + "|";
  for (size_t i = 0; i < runs.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%12s %9s", "RMSE ± std", "MEDIAN");
    out += pad_left(buf, kRunWidth) + " |";
  }
  out += "\n";

  out += std::string(kLabelWidth, '-') + "+";
  for (size_t i = 0; i < runs.size(); ++i) out += std::string(kRunWidth + 1, '-') + "+";
  out += "\n";

  for (size_t a = 0; a < kNumArticulators; ++a) {
    out += pad_right(articulator_display(static_cast<Articulator>(a)), kLabelWidth) + "|";
    for (const MetricsReport& r : runs) {
      out += pad_left(cell(r.per_articulator[a], r.significant[a]), kRunWidth) + " |";
    }
    out += "\n";
  }
  out += pad_right("Mean", kLabelWidth) + "|";
  for (const MetricsReport& r : runs) {
    out += pad_left(cell(r.overall, r.overall_significant), kRunWidth) + " |";
  }
  out += "\n";

  if (baseline_label) {
    out += "* Significant difference compared to the " + *baseline_label +
           " result (p < 0.05) based on a paired t-test.\n";
  }
  return out;
}

std::string render_comparison_csv(const std::vector<MetricsReport>& runs) {
  std::string out =
      "articulator,approach,model,rmse_mean_mm,rmse_std_mm,median_mm,p_value,significant\n";
  char buf[256];
  auto row = [&](const MetricsReport& r, const std::string& name, const ArticulatorAgg& agg,
                 double p, bool sig) {
    if (std::isnan(p)) {
      std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%.6f,%.6f,,\n", name.c_str(),
                    r.approach.c_str(), r.model.c_str(), agg.mean_mm, agg.std_mm, agg.median_mm);
    } else {
      std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%.6f,%.6f,%.9g,%d\n", name.c_str(),
                    r.approach.c_str(), r.model.c_str(), agg.mean_mm, agg.std_mm, agg.median_mm, p,
                    sig ? 1 : 0);
    }
    out += buf;
  };
  for (const MetricsReport& r : runs) {
    for (size_t a = 0; a < kNumArticulators; ++a) {
      row(r, articulator_slug(static_cast<Articulator>(a)), r.per_articulator[a], r.p_value[a],
          r.significant[a]);
    }
    row(r, "mean", r.overall, r.overall_p, r.overall_significant);
  }
  return out;
}

}  // namespace vtinv
