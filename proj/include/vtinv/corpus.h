// vtinv/corpus.h

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

#ifndef VTINV_CORPUS_H_
#define VTINV_CORPUS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtinv/mat.h"

namespace vtinv {

// The eight tracked articulators, in canonical (alphabetical) order. All
// 800-dim contour vectors are articulator-major with the 50 X coordinates
// followed by the 50 Y coordinates of each articulator.
enum class Articulator {
  kArytenoidCartilage = 0,
  kEpiglottis,
  kLowerLip,
  kPharyngealWall,
  kSoftPalateMidline,
  kTongue,
  kUpperLip,
  kVocalFolds,
};

inline constexpr size_t kNumArticulators = 8;
inline constexpr size_t kPointsPerContour = 50;
inline constexpr size_t kContourDim = kNumArticulators * kPointsPerContour * 2;  // 800
inline constexpr size_t kArticulatorDim = kPointsPerContour * 2;                 // 100
inline constexpr size_t kNumPhones = 44;
inline constexpr int kSilencePhone = 43;
inline constexpr double kDefaultPixelSpacingMm = 1.62;
inline constexpr double kImageSizePx = 136.0;

// File-format slug, e.g. "arytenoid-cartilage".
const std::string& articulator_slug(Articulator a);
// Human-readable name, e.g. "Arytenoid cartilage".
const std::string& articulator_display(Articulator a);
// Throws DataError for unknown slugs.
Articulator articulator_from_slug(const std::string& slug);

struct PhoneInventory {
  std::vector<std::string> symbols;  // exactly 44, unique
  int silence_index = kSilencePhone;

  void validate() const;
  int index_of(const std::string& symbol) const;  // throws on unknown phone
  static PhoneInventory default_inventory();
};

// One-hot encoding over the 44-symbol inventory.
std::vector<double> one_hot(int symbol, const PhoneInventory& inv);

struct PhoneInterval {
  double start_ms = 0.0;
  double end_ms = 0.0;
  int symbol = 0;
  int sentence_id = 0;
  // Distinguishes intra-sentence pauses from inter-sentence silence; derived
  // from sentence boundaries at load time.
  bool sentence_internal = true;
};

// Marks each silence interval sentence-internal iff its nearest non-silence
// neighbours on both sides belong to the same sentence. Leading/trailing
// silences are inter-sentence. Throws on unordered or overlapping intervals.
void derive_sentence_flags(std::vector<PhoneInterval>& intervals, int silence_symbol);

struct RawUtterance {
  std::string id;
  Mat features;   // frames x 39, 10 ms spacing (may be empty if wav given)
  Mat contours;   // contour frames x 800, 50 fps, pixel units
  std::vector<PhoneInterval> intervals;
  std::string wav_path;  // optional source audio
};

struct RawAcquisition {
  std::string id;
  std::vector<RawUtterance> utterances;
};

struct RawCorpus {
  std::vector<RawAcquisition> acquisitions;
  PhoneInventory inventory = PhoneInventory::default_inventory();
  double pixel_spacing_mm = kDefaultPixelSpacingMm;
  double contour_fps = 50.0;
  double feature_hop_ms = 10.0;

  size_t total_utterances() const;
};

// --- alignment -------------------------------------------------------------

// Inserts the pointwise mean between every consecutive pair (2N-1 frames); a
// target of 2N appends a duplicate of the final frame. Any other target is an
// alignment mismatch error.
Mat upsample_contours(const Mat& contours, size_t target_count);

// --- silence policy ---------------------------------------------------------

enum class SilenceMode { kTrain, kEval };

struct SilenceFilterResult {
  std::vector<size_t> kept;        // original frame indices, ascending
  std::vector<uint8_t> eval_mask;  // parallel to kept; 1 = counted in metrics
  std::vector<int> phones;         // inventory index per kept frame
};

// Drops frames inside inter-sentence silence; keeps intra-sentence silence
// frames with eval_mask = 0. kEval additionally drops masked frames. Every
// frame center must be covered by exactly one interval.
SilenceFilterResult apply_silence_policy(const std::vector<double>& frame_centers_ms,
                                         const std::vector<PhoneInterval>& intervals,
                                         int silence_symbol, SilenceMode mode);

// --- normalization -----------------------------------------------------------

struct NormStats {
  std::vector<double> mean;
  std::vector<double> std;
  std::string scope;

  static constexpr double kStdFloor = 1e-8;
  size_t dim() const { return mean.size(); }
};

// Per-dimension mean and population std over all rows of all mats; stds are
// floored at 1e-8 (with a warning on stderr). Needs at least 2 frames total.
NormStats fit_stats(const std::vector<const Mat*>& mats, const std::string& scope);
NormStats fit_stats(const Mat& m, const std::string& scope);

void normalize_inplace(Mat& frames, const NormStats& stats);
void denormalize_span(std::span<const double> in, std::span<double> out,
                      std::span<const double> mean, std::span<const double> std);

// Stats over the contour coordinates of recordings [center-50, center+50],
// clamped to the corpus bounds.
NormStats fit_contour_stats_local(const std::vector<const Mat*>& recordings,
                                  size_t center, size_t half_window = 50);

// --- splits -------------------------------------------------------------------

struct Split {
  std::vector<size_t> train, valid, test;  // acquisition indices
};

// Whole-acquisition 80/10/10 split: floor(n/10) each for valid and test,
// remainder to train. Deterministic given seed. Needs >= 3 acquisitions.
Split split_by_acquisition(size_t n_acquisitions, uint64_t seed);

// --- on-disk formats -----------------------------------------------------------

// Contour CSV: frame_index,articulator,point_index,x_px,y_px (+ header).
void write_contour_csv(const std::string& path, const Mat& contours);
Mat read_contour_csv(const std::string& path);

// Segmentation TSV: start_ms<TAB>end_ms<TAB>phone<TAB>sentence_id (+ header).
void write_segmentation_tsv(const std::string& path, const std::vector<PhoneInterval>& intervals,
                            const PhoneInventory& inv);
std::vector<PhoneInterval> read_segmentation_tsv(const std::string& path, const PhoneInventory& inv);

// JSON manifest listing acquisitions, utterance file paths and constants.
void write_corpus(const RawCorpus& corpus, const std::string& dir);
RawCorpus load_corpus(const std::string& manifest_path);

}  // namespace vtinv

#endif  // VTINV_CORPUS_H_
