// vtinv/dataset.h

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

#ifndef VTINV_DATASET_H_
#define VTINV_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "vtinv/corpus.h"
#include "vtinv/mat.h"

namespace vtinv {

// One utterance after alignment, silence filtering and normalization.
struct PreparedUtterance {
  std::string id;      // "<acq>_<utt>", unique corpus-wide
  std::string acq_id;
  std::vector<int> frame_ids;      // original acoustic frame indices
  Mat features;                    // kept frames x 39, normalized
  Mat targets;                     // kept frames x 800, normalized
  std::vector<uint8_t> eval_mask;  // 1 = counted in metrics
  std::vector<int> phones;         // inventory index per kept frame
  NormStats contour_stats;         // 800-dim pixel-space stats (local window)
};

struct PreparedDataset {
  std::vector<PreparedUtterance> utterances;
  std::vector<size_t> train, valid, test;  // utterance indices
  NormStats mfcc_stats;                    // fitted on the training split only
  double pixel_spacing_mm = kDefaultPixelSpacingMm;
  uint64_t split_seed = 0;

  const PreparedUtterance& utt(size_t i) const { return utterances[i]; }
};

// Full preparation pipeline: alignment (contour upsampling to the acoustic
// frame count), silence policy, per-recording local contour normalization,
// acquisition-level split, and global MFCC normalization fitted on the
// training split.
PreparedDataset prepare(const RawCorpus& corpus, uint64_t split_seed);

// Prepared directory layout: dataset.json plus per-utterance binaries.
void save_prepared(const PreparedDataset& ds, const std::string& dir);
PreparedDataset load_prepared(const std::string& dir);

}  // namespace vtinv

#endif  // VTINV_DATASET_H_
