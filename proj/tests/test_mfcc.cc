// tests/test_mfcc.cc

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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "testutil.h"
#include "vtinv/errors.h"
#include "vtinv/featfile.h"
#include "vtinv/mfcc.h"
#include "vtinv/wav.h"

using namespace vtinv;

namespace {

Waveform noise_waveform(size_t n, uint64_t seed, double amplitude = 0.3) {
  Waveform w;
  Rng rng = Rng::seeded(seed);
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<int16_t>(amplitude * 32767.0 * rng.uniform(-1.0, 1.0));
  }
  return w;
}

// Brute-force count of window placements.
size_t count_windows(size_t len, size_t win, size_t hop) {
  size_t count = 0;
  for (size_t start = 0; start + win <= len; start += hop) ++count;
  return count;
}

}  // namespace

TEST_CASE("frame count formula matches window enumeration for all lengths") {
  MfccConfig cfg;
  const size_t win = cfg.window_samples(16000), hop = cfg.hop_samples(16000);
  REQUIRE(win == 400);
  REQUIRE(hop == 160);
  size_t mismatches = 0;
  for (size_t len = win; len <= 10000; ++len) {
    const size_t formula = (len - win) / hop + 1;
    if (formula != count_windows(len, win, hop)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("one second of audio gives 98 frames of 13 coefficients") {
  const Waveform w = noise_waveform(16000, 11);
  const Mat c = extract_mfcc(w, MfccConfig{});
  CHECK(c.rows() == 98);
  CHECK(c.cols() == 13);
}

TEST_CASE("all-zero waveform: constant frames, higher cepstra vanish") {
  Waveform w;
  w.samples.assign(16000, 0);
  const Mat c = extract_mfcc(w, MfccConfig{});
  REQUIRE(c.rows() == 98);
  CHECK(c(0, 0) != 0.0);
  for (size_t t = 0; t < c.rows(); ++t) {
    for (size_t k = 0; k < c.cols(); ++k) {
      CHECK(c(t, k) == c(0, k));  // every frame identical
      if (k > 0) CHECK(std::fabs(c(t, k)) < 1e-9);
    }
  }
}

TEST_CASE("mfcc rejects bad input") {
  MfccConfig cfg;
  Waveform w;
  w.samples.assign(399, 100);
  CHECK_THROWS_WITH_AS(extract_mfcc(w, cfg), doctest::Contains("insufficient audio"), DataError);
  w.samples.assign(16000, 100);
  w.sample_rate = 22050;
  CHECK_THROWS_WITH_AS(extract_mfcc(w, cfg), doctest::Contains("unsupported rate"), DataError);

  MfccConfig bad = cfg;
  bad.n_coeffs = 40;
  w.sample_rate = 16000;
  CHECK_THROWS_AS(extract_mfcc(w, bad), DataError);
}

TEST_CASE("mfcc is deterministic") {
  const Waveform w = noise_waveform(8000, 5);
  const Mat a = extract_mfcc(w, MfccConfig{});
  const Mat b = extract_mfcc(w, MfccConfig{});
  CHECK(a == b);
}

TEST_CASE("global gain shifts c0 and leaves higher cepstra unchanged") {
  Waveform w = noise_waveform(8000, 17, 0.25);
  Waveform scaled = w;
  for (auto& s : scaled.samples) s = static_cast<int16_t>(s * 2);
  const Mat a = extract_mfcc(w, MfccConfig{});
  const Mat b = extract_mfcc(scaled, MfccConfig{});
  const double shift = b(0, 0) - a(0, 0);
  CHECK(shift > 0.0);
  for (size_t t = 0; t < a.rows(); ++t) {
    CHECK(b(t, 0) - a(t, 0) == doctest::Approx(shift).epsilon(1e-6));
    for (size_t k = 1; k < 13; ++k) {
      CHECK(b(t, k) == doctest::Approx(a(t, k)).epsilon(1e-6));
    }
  }
}

TEST_CASE("radix-2 fft matches the direct dft") {
  Rng rng = Rng::seeded(23);
  std::vector<std::complex<double>> x(512);
  for (auto& v : x) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const std::vector<std::complex<double>> orig = x;
  fft_radix2(x);
  // serial O(n^2) reference
  for (size_t k = 0; k < x.size(); k += 37) {
    std::complex<double> sum{0.0, 0.0};
    for (size_t n = 0; n < orig.size(); ++n) {
      const double ang = -2.0 * M_PI * k * n / orig.size();
      sum += orig[n] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    CHECK(std::abs(x[k] - sum) < 1e-9 * (1.0 + std::abs(sum)));
  }
}

TEST_CASE("deltas: constant input has zero derivatives") {
  Mat statics(6, 13, 0.42);
  const Mat out = append_deltas(statics, 2);
  REQUIRE(out.rows() == 6);
  REQUIRE(out.cols() == 39);
  for (size_t t = 0; t < out.rows(); ++t) {
    for (size_t k = 13; k < 39; ++k) CHECK(out(t, k) == 0.0);
  }
}

TEST_CASE("deltas: linear ramp gives the slope at interior frames") {
  const double v = 0.7;
  Mat statics(12, 2);
  for (size_t t = 0; t < 12; ++t) {
    statics(t, 0) = v * t;
    statics(t, 1) = -2.0 * v * t;
  }
  const Mat out = append_deltas(statics, 2);
  for (size_t t = 2; t < 10; ++t) {
    CHECK(out(t, 2) == doctest::Approx(v).epsilon(1e-12));
    CHECK(out(t, 3) == doctest::Approx(-2.0 * v).epsilon(1e-12));
  }
}

TEST_CASE("deltas are shift-equivariant away from the edges") {
  Rng rng = Rng::seeded(31);
  const Mat base = vtinv::testing::random_mat(24, 3, rng);
  Mat shifted(24, 3);
  const size_t shift = 4;
  for (size_t t = 0; t < 24; ++t) {
    const size_t src = std::min(t + shift, base.rows() - 1);
    std::copy(base.row(src), base.row(src) + 3, shifted.row(t));
  }
  const Mat a = append_deltas(base, 2);
  const Mat b = append_deltas(shifted, 2);
  for (size_t t = 4; t + shift + 4 < 24; ++t) {
    for (size_t k = 0; k < 9; ++k) {
      CHECK(b(t, k) == doctest::Approx(a(t + shift, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("deltas reject empty input") {
  Mat empty(0, 13);
  CHECK_THROWS_WITH_AS(append_deltas(empty, 2), doctest::Contains("empty sequence"), DataError);
}

TEST_CASE("context windows") {
  Rng rng = Rng::seeded(41);
  const Mat frames = vtinv::testing::random_mat(10, 39, rng);

  SUBCASE("radius 0 is the identity") {
    const Mat out = build_context_windows(frames, 0);
    CHECK(out == frames);
  }
  SUBCASE("radius 5 gives 429 values") {
    const Mat out = build_context_windows(frames, 5);
    CHECK(out.cols() == 429);
    CHECK(out.rows() == 10);
  }
  SUBCASE("first frame replicates the boundary") {
    const Mat out = build_context_windows(frames, 5);
    // expected: f0 x6, then f1..f5
    for (size_t s = 0; s < 11; ++s) {
      const size_t src = s <= 5 ? 0 : s - 5;
      for (size_t k = 0; k < 39; ++k) {
        CHECK(out(0, s * 39 + k) == frames(src, k));
      }
    }
  }
}

TEST_CASE("wav roundtrip and error paths") {
  vtinv::testing::TempDir tmp;
  const Waveform w = noise_waveform(4000, 3);
  write_wav(tmp.file("a.wav"), w);
  const Waveform r = read_wav(tmp.file("a.wav"));
  CHECK(r.sample_rate == 16000);
  CHECK(r.samples == w.samples);

  Waveform bad = w;
  bad.sample_rate = 44100;
  write_wav(tmp.file("bad.wav"), bad);
  CHECK_THROWS_WITH_AS(read_wav(tmp.file("bad.wav")), doctest::Contains("unsupported rate"),
                       DataError);
  CHECK_THROWS_AS(read_wav(tmp.file("missing.wav")), DataError);
}

TEST_CASE("feature file roundtrip") {
  vtinv::testing::TempDir tmp;
  Rng rng = Rng::seeded(9);
  const Mat frames = vtinv::testing::random_mat(17, 39, rng);
  write_vtf(tmp.file("f.vtf"), frames);
  const Mat back = read_vtf(tmp.file("f.vtf"));
  CHECK(back == frames);
  write_feature_csv(tmp.file("f.csv"), frames);
  CHECK_THROWS_AS(read_vtf(tmp.file("f.csv")), DataError);  // bad magic
}
