// vtinv/featfile.cc

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

#include "vtinv/featfile.h"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "vtinv/errors.h"

namespace vtinv {

namespace {
constexpr char kMagic[4] = {'V', 'T', 'F', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  os.write(b, 4);
}

uint32_t get_u32(std::istream& is) {
  uint8_t b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}
}  // namespace

void write_vtf(const std::string& path, const Mat& frames) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write feature file: " + path);
  f.write(kMagic, 4);
  put_u32(f, static_cast<uint32_t>(frames.rows()));
  put_u32(f, static_cast<uint32_t>(frames.cols()));
  f.write(reinterpret_cast<const char*>(frames.data()),
          static_cast<std::streamsize>(frames.size() * sizeof(double)));
  if (!f) throw DataError("write failed: " + path);
}

Mat read_vtf(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open feature file: " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kMagic, 4) != 0) {
    throw DataError("bad magic in feature file: " + path);
  }
  const uint32_t n = get_u32(f);
  const uint32_t d = get_u32(f);
  if (!f) throw DataError("truncated feature file header: " + path);
  Mat frames(n, d);
  f.read(reinterpret_cast<char*>(frames.data()),
         static_cast<std::streamsize>(frames.size() * sizeof(double)));
  if (!f) throw DataError("truncated feature file: " + path);
  return frames;
}

void write_feature_csv(const std::string& path, const Mat& frames) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write csv: " + path);
  f << "frame";
  for (size_t j = 0; j < frames.cols(); ++j) f << ",c" << j;
  f << "\n";
  char buf[32];
  for (size_t i = 0; i < frames.rows(); ++i) {
    f << i;
    for (size_t j = 0; j < frames.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", frames(i, j));
      f << ',' << buf;
    }
    f << "\n";
  }
  if (!f) throw DataError("write failed: " + path);
}

}  // namespace vtinv
