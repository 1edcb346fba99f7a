// vtinv/synth.cc

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

#include "vtinv/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "vtinv/errors.h"
#include "vtinv/mfcc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vtinv {

void SynthSpec::validate() const {
  if (n_acquisitions == 0 || utterances_per_acquisition == 0) {
    throw DataError("synth spec: counts must be positive");
  }
  if (frames_per_utterance < 60) {
    throw DataError("synth spec: need at least 60 frames per utterance");
  }
  if (latent_dim == 0 || n_sinusoids == 0) {
    throw DataError("synth spec: latent_dim and n_sinusoids must be positive");
  }
  if (noise_level < 0) throw DataError("synth spec: noise level must be >= 0");
}

namespace {

constexpr size_t kFeatHidden = 16;

// Per-articulator template arcs spread over the 136 px image, roughly
// mimicking a medio-sagittal layout. Angles in radians.
struct ArcDef {
  double cx, cy, r, a0, a1;
};

const ArcDef kArcs[kNumArticulators] = {
    {96.0, 104.0, 10.0, -0.8, 1.2},   // arytenoid cartilage
    {78.0, 88.0, 16.0, -1.2, 0.9},    // epiglottis
    {34.0, 86.0, 14.0, -2.4, -0.6},   // lower lip
    {108.0, 64.0, 30.0, 1.2, 2.0},    // pharyngeal wall
    {66.0, 46.0, 18.0, -0.4, 1.4},    // soft palate midline
    {58.0, 72.0, 26.0, -2.8, 0.4},    // tongue
    {30.0, 58.0, 13.0, 0.5, 2.3},     // upper lip
    {100.0, 118.0, 9.0, -1.0, 1.0},   // vocal folds
};

}  // namespace

GroundTruthMap make_ground_truth(const SynthSpec& spec, Rng& rng) {
  GroundTruthMap map;
  const size_t d = spec.latent_dim;

  map.contour_template.resize(kContourDim);
  for (size_t a = 0; a < kNumArticulators; ++a) {
    const ArcDef& arc = kArcs[a];
    for (size_t p = 0; p < kPointsPerContour; ++p) {
      const double th = arc.a0 + (arc.a1 - arc.a0) * p / (kPointsPerContour - 1);
      map.contour_template[a * kArticulatorDim + p] = arc.cx + arc.r * std::cos(th);
      map.contour_template[a * kArticulatorDim + kPointsPerContour + p] =
          arc.cy + arc.r * std::sin(th);
    }
  }

  // Deformation fields smooth along the contour: each (articulator, latent)
  // pair moves the points with a low-order sinusoidal profile.
  map.contour_map.resize(kContourDim, d);
  for (size_t a = 0; a < kNumArticulators; ++a) {
    for (size_t j = 0; j < d; ++j) {
      const double amp_x = rng.uniform(-5.0, 5.0);
      const double amp_y = rng.uniform(-5.0, 5.0);
      const double mode = 1.0 + static_cast<double>(rng.below(2));
      const double phase = rng.uniform(0.0, 2.0 * M_PI);
      for (size_t p = 0; p < kPointsPerContour; ++p) {
        const double u = static_cast<double>(p) / (kPointsPerContour - 1);
        const double prof = std::sin(2.0 * M_PI * mode * u + phase);
        map.contour_map(a * kArticulatorDim + p, j) = amp_x * prof;
        map.contour_map(a * kArticulatorDim + kPointsPerContour + p, j) = amp_y * prof;
      }
    }
  }

  map.feat_w1.resize(kFeatHidden, d);
  for (double& v : std::span(map.feat_w1.data(), map.feat_w1.size())) v = rng.uniform(-1.0, 1.0);
  map.feat_w2.resize(kFrameDim, kFeatHidden);
  for (double& v : std::span(map.feat_w2.data(), map.feat_w2.size())) v = rng.uniform(-0.5, 0.5);
  map.feat_w3.resize(kFrameDim, d);
  for (double& v : std::span(map.feat_w3.data(), map.feat_w3.size())) v = rng.uniform(-1.0, 1.0);
  map.feat_bias.resize(kFrameDim);
  for (double& v : map.feat_bias) v = rng.uniform(-0.2, 0.2);
  return map;
}

void GroundTruthMap::write_json(const std::string& path) const {
  json j;
  auto mat_to_json = [](const Mat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
      rows.push_back(std::vector<double>(m.row(i), m.row(i) + m.cols()));
    }
    return rows;
  };
  j["contour_template"] = contour_template;
  j["contour_map"] = mat_to_json(contour_map);
  j["feat_w1"] = mat_to_json(feat_w1);
  j["feat_w2"] = mat_to_json(feat_w2);
  j["feat_w3"] = mat_to_json(feat_w3);
  j["feat_bias"] = feat_bias;
  std::ofstream f(path);
  if (!f) throw DataError("cannot write ground truth sidecar: " + path);
  f << j.dump() << "\n";
}

Mat latent_trajectory(const SynthSpec& spec, Rng& rng, size_t n_frames) {
  const size_t d = spec.latent_dim;
  Mat z(n_frames, d);
  for (size_t j = 0; j < d; ++j) {
    std::vector<double> amp(spec.n_sinusoids), freq(spec.n_sinusoids), phase(spec.n_sinusoids);
    double amp_sum = 0.0;
    for (size_t k = 0; k < spec.n_sinusoids; ++k) {
      amp[k] = rng.uniform(0.2, 1.0);
      freq[k] = rng.uniform(0.3, 6.0);  // Hz, well under the 8 Hz bound
      phase[k] = rng.uniform(0.0, 2.0 * M_PI);
      amp_sum += amp[k];
    }
    // Low-pass noise: exponentially smoothed white noise.
    double lp = 0.0;
    const double alpha = 0.1;
    for (size_t t = 0; t < n_frames; ++t) {
      double s = 0.0;
      const double sec = static_cast<double>(t) / 100.0;
      for (size_t k = 0; k < spec.n_sinusoids; ++k) {
        s += amp[k] * std::sin(2.0 * M_PI * freq[k] * sec + phase[k]);
      }
      lp = (1.0 - alpha) * lp + alpha * rng.normal();
      const double v = 0.8 * s / amp_sum + 0.6 * lp;
      z(t, j) = std::clamp(v, -1.0, 1.0);
    }
  }
  return z;
}

namespace {

// Per-frame phone ids for one speech region, quantized from latent
// coordinate 0 with a minimum dwell of 4 frames.
void fill_speech_phones(const Mat& z, size_t begin, size_t end, std::vector<int>& phones) {
  const size_t min_dwell = 4;
  std::vector<int> raw(end - begin);
  for (size_t t = begin; t < end; ++t) {
    int bin = static_cast<int>((z(t, 0) + 1.0) / 2.0 * kNumPhones);
    bin = std::clamp(bin, 0, static_cast<int>(kNumPhones) - 1);
    // keep the silence symbol out of speech regions
    raw[t - begin] = std::min(bin, kSilencePhone - 1);
  }
  // merge runs shorter than the dwell into the preceding run
  size_t start = 0;
  int prev = -1;
  for (size_t i = 1; i <= raw.size(); ++i) {
    if (i == raw.size() || raw[i] != raw[i - 1]) {
      const size_t run_len = i - start;
      if (run_len < min_dwell && prev >= 0) {
        for (size_t k = start; k < i; ++k) raw[k] = prev;
      } else {
        prev = raw[start];
      }
      start = i;
    }
  }
  for (size_t t = begin; t < end; ++t) phones[t] = raw[t - begin];
}

}  // namespace

RawUtterance generate_utterance(const SynthSpec& spec, const GroundTruthMap& map, Rng rng,
                                size_t n_frames, const std::string& id) {
  RawUtterance utt;
  utt.id = id;
  const size_t d = spec.latent_dim;
  const Mat z = latent_trajectory(spec, rng, n_frames);

  // Region layout: lead silence, sentence 0, gap silence, sentence 1, trail
  // silence; sentence 0 may contain an intra-sentence pause.
  const size_t lead = 8 + rng.below(6);
  const size_t trail = 8 + rng.below(6);
  const size_t gap = 10 + rng.below(8);
  const size_t speech_total = n_frames - lead - trail - gap;
  const size_t sent0 = speech_total / 2 + rng.below(std::max<size_t>(speech_total / 8, 1));
  const size_t sent1 = speech_total - sent0;
  if (sent0 < 16 || sent1 < 16) throw DataError("utterance too short for the region layout");

  std::vector<int> phones(n_frames, kSilencePhone);
  std::vector<int> sentence(n_frames, -1);
  const size_t s0_begin = lead, s0_end = lead + sent0;
  const size_t s1_begin = s0_end + gap, s1_end = s1_begin + sent1;
  for (size_t t = s0_begin; t < s0_end; ++t) sentence[t] = 0;
  for (size_t t = s1_begin; t < s1_end; ++t) sentence[t] = 1;
  fill_speech_phones(z, s0_begin, s0_end, phones);
  fill_speech_phones(z, s1_begin, s1_end, phones);

  if (rng.below(2) == 0) {
    // intra-sentence pause inside sentence 0
    const size_t pause_len = 10 + rng.below(6);
    const size_t pause_at = s0_begin + sent0 / 3;
    for (size_t t = pause_at; t < std::min(pause_at + pause_len, s0_end - 8); ++t) {
      phones[t] = kSilencePhone;  // sentence id stays 0
    }
  }

  // Compress per-frame labels into intervals on the 10 ms grid.
  for (size_t t = 0; t < n_frames;) {
    size_t e = t + 1;
    while (e < n_frames && phones[e] == phones[t] && sentence[e] == sentence[t]) ++e;
    PhoneInterval iv;
    iv.start_ms = t * 10.0;
    iv.end_ms = e * 10.0;
    iv.symbol = phones[t];
    iv.sentence_id = sentence[t] >= 0 ? sentence[t] : (t < s0_begin ? 0 : 1);
    utt.intervals.push_back(iv);
    t = e;
  }
  derive_sentence_flags(utt.intervals, kSilencePhone);

  // Contours at 50 fps so that upsampling hits n_frames exactly.
  const size_t n_contours = (n_frames + 1) / 2;
  utt.contours.resize(n_contours, kContourDim);
  for (size_t k = 0; k < n_contours; ++k) {
    const size_t t = std::min(2 * k, n_frames - 1);
    double* row = utt.contours.row(k);
    for (size_t c = 0; c < kContourDim; ++c) {
      double v = map.contour_template[c];
      for (size_t j = 0; j < d; ++j) v += map.contour_map(c, j) * z(t, j);
      row[c] = v;
    }
  }

  // Features: tanh path + linear path + bias + white noise, at 100 fps.
  utt.features.resize(n_frames, kFrameDim);
  std::vector<double> hidden(kFeatHidden);
  for (size_t t = 0; t < n_frames; ++t) {
    for (size_t hidx = 0; hidx < kFeatHidden; ++hidx) {
      double s = 0.0;
      for (size_t j = 0; j < d; ++j) s += map.feat_w1(hidx, j) * z(t, j);
      hidden[hidx] = std::tanh(s);
    }
    double* row = utt.features.row(t);
    for (size_t c = 0; c < kFrameDim; ++c) {
      double v = map.feat_bias[c];
      for (size_t hidx = 0; hidx < kFeatHidden; ++hidx) v += map.feat_w2(c, hidx) * hidden[hidx];
      for (size_t j = 0; j < d; ++j) v += map.feat_w3(c, j) * z(t, j);
      row[c] = v + spec.noise_level * rng.normal();
    }
  }
  return utt;
}

RawCorpus generate_corpus(const SynthSpec& spec) {
  spec.validate();
  Rng master = Rng::seeded(spec.seed);
  GroundTruthMap map = make_ground_truth(spec, master);

  RawCorpus corpus;
  char buf[32];
  uint64_t stream = 0;
  for (size_t a = 0; a < spec.n_acquisitions; ++a) {
    RawAcquisition acq;
    std::snprintf(buf, sizeof buf, "acq%03zu", a);
    acq.id = buf;
    for (size_t u = 0; u < spec.utterances_per_acquisition; ++u) {
      std::snprintf(buf, sizeof buf, "utt%03zu", u);
      acq.utterances.push_back(generate_utterance(spec, map, master.fork(++stream),
                                                  spec.frames_per_utterance, buf));
    }
    corpus.acquisitions.push_back(std::move(acq));
  }
  return corpus;
}

void write_synth_corpus(const SynthSpec& spec, const std::string& dir) {
  const RawCorpus corpus = generate_corpus(spec);
  write_corpus(corpus, dir);
  Rng master = Rng::seeded(spec.seed);
  const GroundTruthMap map = make_ground_truth(spec, master);
  map.write_json((fs::path(dir) / "ground_truth.json").string());
}

std::vector<double> baseline_mean_contour(const PreparedDataset& ds) {
  if (ds.train.empty()) throw DataError("empty split");
  std::vector<double> mean(kContourDim, 0.0);
  size_t n = 0;
  for (size_t idx : ds.train) {
    const Mat& t = ds.utt(idx).targets;
    for (size_t k = 0; k < t.rows(); ++k) {
      const double* row = t.row(k);
      for (size_t c = 0; c < kContourDim; ++c) mean[c] += row[c];
      ++n;
    }
  }
  if (n == 0) throw DataError("empty split");
  for (double& v : mean) v /= static_cast<double>(n);
  return mean;
}

}  // namespace vtinv
