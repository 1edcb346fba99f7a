// vtinv/wav.h

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

#ifndef VTINV_WAV_H_
#define VTINV_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

namespace vtinv {

inline constexpr uint32_t kRequiredSampleRate = 16000;

struct Waveform {
  std::vector<int16_t> samples;  // mono PCM16
  uint32_t sample_rate = kRequiredSampleRate;

  // Samples scaled to [-1, 1).
  std::vector<double> to_double() const;
};

// Reads a mono PCM16 little-endian RIFF/WAVE file. Walks the chunk list, so
// both the bare 44-byte layout and files with extra chunks are accepted.
// Throws DataError on malformed files; a sample rate other than 16 kHz is an
// "unsupported rate" error.
Waveform read_wav(const std::string& path);

// Writes the standard 44-byte header plus samples. Used by tests and the
// synthetic tooling.
void write_wav(const std::string& path, const Waveform& w);

}  // namespace vtinv

#endif  // VTINV_WAV_H_
