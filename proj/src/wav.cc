// vtinv/wav.cc

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

#include "vtinv/wav.h"

#include <cstring>
#include <fstream>

#include "vtinv/errors.h"

namespace vtinv {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::ostream& os, uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  os.write(b, 4);
}

void put_u16(std::ostream& os, uint16_t v) {
  char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  os.write(b, 2);
}

}  // namespace

std::vector<double> Waveform::to_double() const {
  std::vector<double> out(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) out[i] = samples[i] / 32768.0;
  return out;
}

Waveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open WAV file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("not a RIFF/WAVE file: " + path);
  }

  Waveform w;
  bool have_fmt = false, have_data = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t sz = read_u32(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + sz > bytes.size()) throw DataError("truncated chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (sz < 16) throw DataError("short fmt chunk in " + path);
      const uint16_t format = read_u16(bytes.data() + body);
      const uint16_t channels = read_u16(bytes.data() + body + 2);
      const uint32_t rate = read_u32(bytes.data() + body + 4);
      const uint16_t bits = read_u16(bytes.data() + body + 14);
      if (format != 1) throw DataError("unsupported format (not PCM): " + path);
      if (channels != 1) throw DataError("unsupported channel count: " + path);
      if (bits != 16) throw DataError("unsupported bit depth: " + path);
      if (rate != kRequiredSampleRate) {
        throw DataError("unsupported rate " + std::to_string(rate) + " Hz (need 16000): " + path);
      }
      w.sample_rate = rate;
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!have_fmt) throw DataError("data chunk before fmt in " + path);
      w.samples.resize(sz / 2);
      for (size_t i = 0; i < w.samples.size(); ++i) {
        w.samples[i] = static_cast<int16_t>(read_u16(bytes.data() + body + 2 * i));
      }
      have_data = true;
    }
    pos = body + sz + (sz & 1);  // chunks are word-aligned
  }
  if (!have_fmt || !have_data) throw DataError("missing fmt/data chunk in " + path);
  return w;
}

void write_wav(const std::string& path, const Waveform& w) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write WAV file: " + path);
  const uint32_t data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  f.write("RIFF", 4);
  put_u32(f, 36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put_u32(f, 16);
  put_u16(f, 1);  // PCM
  put_u16(f, 1);  // mono
  put_u32(f, w.sample_rate);
  put_u32(f, w.sample_rate * 2);  // byte rate
  put_u16(f, 2);                  // block align
  put_u16(f, 16);                 // bits
  f.write("data", 4);
  put_u32(f, data_bytes);
  for (int16_t s : w.samples) {
    put_u16(f, static_cast<uint16_t>(s));
  }
  if (!f) throw DataError("write failed: " + path);
}

}  // namespace vtinv
