// vtinv/svgplot.h

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

#ifndef VTINV_SVGPLOT_H_
#define VTINV_SVGPLOT_H_

#include <array>
#include <span>
#include <string>

#include "vtinv/corpus.h"

namespace vtinv {

// One fixed color per articulator, in canonical order.
const std::array<std::string, kNumArticulators>& articulator_colors();

// Overlay of one frame: solid polylines for the truth contours, dashed for
// the predictions, one color per articulator, title annotated with the frame
// RMSE. Both vectors are 800-dim pixel-space contours.
std::string render_contour_overlay_svg(std::span<const double> truth,
                                       std::span<const double> pred, int frame_id,
                                       double rmse_mm);

void write_svg(const std::string& path, const std::string& svg);

}  // namespace vtinv

#endif  // VTINV_SVGPLOT_H_
