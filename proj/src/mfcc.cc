// vtinv/mfcc.cc

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

#include "vtinv/mfcc.h"

#include <cmath>
#include <cstddef>

#include "vtinv/errors.h"

namespace vtinv {

namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// Triangular filterbank evaluated at FFT bin center frequencies.
// Rows: filters, cols: fft_size/2 + 1 bins.
Mat mel_filterbank(const MfccConfig& cfg, uint32_t rate) {
  const size_t n_bins = cfg.fft_size / 2 + 1;
  Mat fb(cfg.n_mel_filters, n_bins);
  const double mel_lo = hz_to_mel(cfg.low_hz);
  const double mel_hi = hz_to_mel(cfg.high_hz);
  std::vector<double> edges(cfg.n_mel_filters + 2);
  for (size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mel_filters + 1));
  }
  for (size_t j = 0; j < cfg.n_mel_filters; ++j) {
    const double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
    for (size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * rate / cfg.fft_size;
      double w = 0.0;
      if (f > lo && f < mid) {
        w = (f - lo) / (mid - lo);
      } else if (f >= mid && f < hi) {
        w = (hi - f) / (hi - mid);
      }
      fb(j, k) = w;
    }
  }
  return fb;
}

// Orthonormal DCT-II basis; rows: coefficients, cols: mel channels.
Mat dct2_basis(size_t n_coeffs, size_t n_channels) {
  Mat basis(n_coeffs, n_channels);
  const double s0 = std::sqrt(1.0 / n_channels);
  const double sk = std::sqrt(2.0 / n_channels);
  for (size_t k = 0; k < n_coeffs; ++k) {
    for (size_t m = 0; m < n_channels; ++m) {
      basis(k, m) = (k == 0 ? s0 : sk) *
                    std::cos(M_PI * k * (2.0 * m + 1.0) / (2.0 * n_channels));
    }
  }
  return basis;
}

}  // namespace

size_t MfccConfig::window_samples(uint32_t rate) const {
  return static_cast<size_t>(window_ms * rate / 1000.0 + 0.5);
}

size_t MfccConfig::hop_samples(uint32_t rate) const {
  return static_cast<size_t>(hop_ms * rate / 1000.0 + 0.5);
}

void MfccConfig::validate() const {
  if (n_coeffs == 0 || n_coeffs > n_mel_filters) {
    throw DataError("mfcc config: need 0 < n_coeffs <= n_mel_filters");
  }
  if (!(window_ms > hop_ms && hop_ms > 0)) {
    throw DataError("mfcc config: need window_ms > hop_ms > 0");
  }
  if (!(log_floor > 0)) throw DataError("mfcc config: log_floor must be > 0");
  if (pre_emphasis < 0 || pre_emphasis >= 1) {
    throw DataError("mfcc config: pre_emphasis must be in [0, 1)");
  }
  if ((fft_size & (fft_size - 1)) != 0 || fft_size == 0) {
    throw DataError("mfcc config: fft_size must be a power of two");
  }
  if (!(high_hz > low_hz && low_hz >= 0)) {
    throw DataError("mfcc config: need high_hz > low_hz >= 0");
  }
}

void fft_radix2(std::vector<std::complex<double>>& x) {
  const size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DataError("fft size must be a power of two");
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = x[i + j];
        const std::complex<double> v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

Mat extract_mfcc(const Waveform& w, const MfccConfig& cfg) {
  cfg.validate();
  if (w.sample_rate != kRequiredSampleRate) {
    throw DataError("unsupported rate " + std::to_string(w.sample_rate) + " Hz");
  }
  const size_t win = cfg.window_samples(w.sample_rate);
  const size_t hop = cfg.hop_samples(w.sample_rate);
  if (cfg.fft_size < win) throw DataError("mfcc config: fft_size < window");
  if (w.samples.size() < win) {
    throw DataError("insufficient audio: " + std::to_string(w.samples.size()) +
                    " samples < one window (" + std::to_string(win) + ")");
  }

  std::vector<double> signal = w.to_double();
  for (size_t i = signal.size(); i-- > 1;) {
    signal[i] -= cfg.pre_emphasis * signal[i - 1];
  }

  std::vector<double> hamming(win);
  for (size_t i = 0; i < win; ++i) {
    hamming[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (win - 1));
  }

  const Mat fb = mel_filterbank(cfg, w.sample_rate);
  const Mat dct = dct2_basis(cfg.n_coeffs, cfg.n_mel_filters);
  const size_t n_bins = cfg.fft_size / 2 + 1;
  const size_t n_frames = (signal.size() - win) / hop + 1;

  Mat out(n_frames, cfg.n_coeffs);
  const ptrdiff_t nf = static_cast<ptrdiff_t>(n_frames);
#pragma omp parallel for schedule(static)
  for (ptrdiff_t t = 0; t < nf; ++t) {
    std::vector<std::complex<double>> buf(cfg.fft_size, {0.0, 0.0});
    const size_t start = static_cast<size_t>(t) * hop;
    for (size_t i = 0; i < win; ++i) {
      buf[i] = signal[start + i] * hamming[i];
    }
    fft_radix2(buf);
    std::vector<double> power(n_bins);
    for (size_t k = 0; k < n_bins; ++k) power[k] = std::norm(buf[k]);

    std::vector<double> log_mel(cfg.n_mel_filters);
    for (size_t j = 0; j < cfg.n_mel_filters; ++j) {
      double e = 0.0;
      const double* fj = fb.row(j);
      for (size_t k = 0; k < n_bins; ++k) e += fj[k] * power[k];
      log_mel[j] = std::log(std::max(e, cfg.log_floor));
    }
    double* row = out.row(t);
    for (size_t k = 0; k < cfg.n_coeffs; ++k) {
      double s = 0.0;
      const double* bk = dct.row(k);
      for (size_t m = 0; m < cfg.n_mel_filters; ++m) s += bk[m] * log_mel[m];
      row[k] = s;
    }
  }
  return out;
}

Mat append_deltas(const Mat& statics, size_t delta_radius) {
  if (statics.rows() == 0) throw DataError("empty sequence");
  if (delta_radius < 1) throw DataError("delta radius must be >= 1");
  const size_t t_len = statics.rows(), d = statics.cols();
  double denom = 0.0;
  for (size_t k = 1; k <= delta_radius; ++k) denom += static_cast<double>(k * k);
  denom *= 2.0;

  auto regression = [&](const Mat& src) {
    Mat dst(t_len, d);
    for (size_t t = 0; t < t_len; ++t) {
      double* row = dst.row(t);
      for (size_t k = 1; k <= delta_radius; ++k) {
        const size_t ahead = std::min(t + k, t_len - 1);
        const size_t behind = t >= k ? t - k : 0;  // replicate edges
        const double* fa = src.row(ahead);
        const double* fb = src.row(behind);
        for (size_t j = 0; j < d; ++j) row[j] += k * (fa[j] - fb[j]);
      }
      for (size_t j = 0; j < d; ++j) row[j] /= denom;
    }
    return dst;
  };

  const Mat delta = regression(statics);
  const Mat delta2 = regression(delta);
  Mat out(t_len, 3 * d);
  for (size_t t = 0; t < t_len; ++t) {
    double* row = out.row(t);
    std::copy(statics.row(t), statics.row(t) + d, row);
    std::copy(delta.row(t), delta.row(t) + d, row + d);
    std::copy(delta2.row(t), delta2.row(t) + d, row + 2 * d);
  }
  return out;
}

Mat build_context_windows(const Mat& frames, size_t radius) {
  if (frames.rows() == 0) throw DataError("empty sequence");
  const size_t t_len = frames.rows(), d = frames.cols();
  const size_t span = 2 * radius + 1;
  Mat out(t_len, span * d);
  for (size_t t = 0; t < t_len; ++t) {
    double* row = out.row(t);
    for (size_t s = 0; s < span; ++s) {
      const long idx = static_cast<long>(t) + static_cast<long>(s) - static_cast<long>(radius);
      const size_t src = static_cast<size_t>(std::clamp<long>(idx, 0, static_cast<long>(t_len) - 1));
      std::copy(frames.row(src), frames.row(src) + d, row + s * d);
    }
  }
  return out;
}

double frame_center_ms(size_t frame_index, const MfccConfig& cfg) {
  return frame_index * cfg.hop_ms + cfg.window_ms / 2.0;
}

}  // namespace vtinv
