// vtinv/synth.h

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

#ifndef VTINV_SYNTH_H_
#define VTINV_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "vtinv/corpus.h"
#include "vtinv/dataset.h"
#include "vtinv/rng.h"

namespace vtinv {

struct SynthSpec {
  size_t n_acquisitions = 20;
  size_t utterances_per_acquisition = 10;
  size_t frames_per_utterance = 200;  // acoustic frames (10 ms each)
  size_t latent_dim = 6;
  size_t n_sinusoids = 8;
  double noise_level = 0.05;
  uint64_t seed = 42;

  void validate() const;
};

// The fixed latent-to-observation maps behind a generated corpus. Contours
// are an affine readout of the latent on top of smooth per-articulator
// templates; features are a tanh-distorted affine readout of the same latent.
struct GroundTruthMap {
  Mat contour_map;                      // 800 x d, pixels per latent unit
  std::vector<double> contour_template; // 800, pixel space
  Mat feat_w1;                          // 16 x d (tanh input)
  Mat feat_w2;                          // 39 x 16
  Mat feat_w3;                          // 39 x d (linear path)
  std::vector<double> feat_bias;        // 39

  void write_json(const std::string& path) const;
};

GroundTruthMap make_ground_truth(const SynthSpec& spec, Rng& rng);

// Smooth bounded control signal: per dimension a normalized sum of seeded
// sinusoids (< 8 Hz) plus low-pass filtered noise, clamped to [-1, 1].
Mat latent_trajectory(const SynthSpec& spec, Rng& rng, size_t n_frames);

// One utterance at a given acoustic frame count: contours at 50 fps (so that
// upsampling aligns exactly), features at 100 fps, and phone intervals with
// inter-sentence silences plus occasional intra-sentence pauses.
RawUtterance generate_utterance(const SynthSpec& spec, const GroundTruthMap& map, Rng rng,
                                size_t n_frames, const std::string& id);

// Seeded corpus with the exact real-data schema. Byte-identical for a given
// spec.
RawCorpus generate_corpus(const SynthSpec& spec);

// Same, plus the sidecar ground-truth file when written to disk.
void write_synth_corpus(const SynthSpec& spec, const std::string& dir);

// Mean normalized contour over all kept training frames; the constant
// baseline predictor every learned model must beat.
std::vector<double> baseline_mean_contour(const PreparedDataset& ds);

}  // namespace vtinv

#endif  // VTINV_SYNTH_H_
