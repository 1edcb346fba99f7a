// vtinv/mfcc.h

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

#ifndef VTINV_MFCC_H_
#define VTINV_MFCC_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "vtinv/mat.h"
#include "vtinv/wav.h"

namespace vtinv {

inline constexpr size_t kNumCepstra = 13;
inline constexpr size_t kFrameDim = 39;  // 13 static + 13 delta + 13 delta-delta

// Stacked frame width for a symmetric context window.
constexpr size_t frame_dim_for_radius(size_t radius) { return kFrameDim * (2 * radius + 1); }

struct MfccConfig {
  size_t n_coeffs = kNumCepstra;
  double window_ms = 25.0;
  double hop_ms = 10.0;
  size_t n_mel_filters = 26;
  size_t fft_size = 512;
  double log_floor = 1e-10;
  double pre_emphasis = 0.97;
  double low_hz = 0.0;
  double high_hz = 8000.0;
  size_t delta_radius = 2;
  size_t context_radius = 0;  // 0 = plain 39-dim frames

  size_t window_samples(uint32_t rate) const;
  size_t hop_samples(uint32_t rate) const;
  void validate() const;  // throws DataError
};

// Static cepstra: one row of n_coeffs per frame. Frame count is
// floor((len - window) / hop) + 1. Throws DataError for audio shorter than
// one window ("insufficient audio") or a wrong sample rate.
Mat extract_mfcc(const Waveform& w, const MfccConfig& cfg);

// Appends first- and second-order regression deltas; (T x d) -> (T x 3d).
// Edge frames are replicated so the output length equals the input length.
Mat append_deltas(const Mat& statics, size_t delta_radius);

// Stacks 2*radius+1 consecutive frames per output frame with edge
// replication; (T x d) -> (T x (2*radius+1)*d).
Mat build_context_windows(const Mat& frames, size_t radius);

// Center time of frame i in milliseconds (window midpoint).
double frame_center_ms(size_t frame_index, const MfccConfig& cfg);

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x);

}  // namespace vtinv

#endif  // VTINV_MFCC_H_
