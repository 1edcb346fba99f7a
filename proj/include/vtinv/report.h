// vtinv/report.h

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

#ifndef VTINV_REPORT_H_
#define VTINV_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "vtinv/metrics.h"

namespace vtinv {

// Fixed-layout comparison table: one row per articulator (alphabetical) plus
// a Mean row; per run a "RMSE +- std" column pair with significance stars and
// a MEDIAN column. baseline_label switches on the footnote; stars come from
// each report's significance flags (attach_significance fills them).
std::string render_comparison_table(const std::vector<MetricsReport>& runs,
                                    const std::optional<std::string>& baseline_label);

// All runs appended in one CSV (same columns as the per-run metrics CSV).
std::string render_comparison_csv(const std::vector<MetricsReport>& runs);

}  // namespace vtinv

#endif  // VTINV_REPORT_H_
