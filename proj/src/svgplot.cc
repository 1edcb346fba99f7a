// vtinv/svgplot.cc

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

#include "vtinv/svgplot.h"

#include <cstdio>
#include <fstream>

#include "vtinv/errors.h"

namespace vtinv {

namespace {
constexpr double kScale = 4.0;
constexpr double kMargin = 28.0;

void append_polyline(std::string& svg, std::span<const double> contour, size_t articulator,
                     bool dashed) {
  char buf[64];
  svg += "  <polyline fill=\"none\" stroke=\"";
  svg += articulator_colors()[articulator];
  svg += "\" stroke-width=\"1.6\"";
  if (dashed) svg += " stroke-dasharray=\"5 4\"";
  svg += " points=\"";
  const size_t off = articulator * kArticulatorDim;
  for (size_t p = 0; p < kPointsPerContour; ++p) {
    const double x = kMargin + contour[off + p] * kScale;
    const double y = kMargin + contour[off + kPointsPerContour + p] * kScale;
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", p == 0 ? "" : " ", x, y);
    svg += buf;
  }
  svg += "\"/>\n";
}

}  // namespace

const std::array<std::string, kNumArticulators>& articulator_colors() {
  static const std::array<std::string, kNumArticulators> colors = {
      "orange", "green", "crimson", "purple", "saddlebrown", "royalblue", "magenta", "teal"};
  return colors;
}

std::string render_contour_overlay_svg(std::span<const double> truth,
                                       std::span<const double> pred, int frame_id,
                                       double rmse_mm) {
  if (truth.size() != kContourDim || pred.size() != kContourDim) {
    throw DataError("contour overlay needs 800-dim frames");
  }
  const double size = kImageSizePx * kScale + 2.0 * kMargin;
  char buf[256];
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                size, size, size, size);
  svg += buf;
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "  <title>frame %d — RMSE %.2f mm</title>\n", frame_id, rmse_mm);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.1f\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">frame %d "
                "— RMSE %.2f mm (solid: original, dashed: predicted)</text>\n",
                kMargin, frame_id, rmse_mm);
  svg += buf;
  for (size_t a = 0; a < kNumArticulators; ++a) {
    append_polyline(svg, truth, a, /*dashed=*/false);
  }
  for (size_t a = 0; a < kNumArticulators; ++a) {
    append_polyline(svg, pred, a, /*dashed=*/true);
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::string& path, const std::string& svg) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write svg: " + path);
  f << svg;
  if (!f) throw DataError("write failed: " + path);
}

}  // namespace vtinv
