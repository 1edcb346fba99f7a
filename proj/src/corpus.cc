// vtinv/corpus.cc

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

#include "vtinv/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "vtinv/errors.h"
#include "vtinv/featfile.h"
#include "vtinv/rng.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vtinv {

namespace {

const std::array<std::string, kNumArticulators> kSlugs = {
    "arytenoid-cartilage", "epiglottis",          "lower-lip", "pharyngeal-wall",
    "soft-palate-midline", "tongue",              "upper-lip", "vocal-folds"};

const std::array<std::string, kNumArticulators> kDisplay = {
    "Arytenoid cartilage", "Epiglottis",          "Lower lip", "Pharyngeal wall",
    "Soft palate midline", "Tongue",              "Upper lip", "Vocal folds"};

}  // namespace

const std::string& articulator_slug(Articulator a) {
  return kSlugs[static_cast<size_t>(a)];
}

const std::string& articulator_display(Articulator a) {
  return kDisplay[static_cast<size_t>(a)];
}

Articulator articulator_from_slug(const std::string& slug) {
  for (size_t i = 0; i < kNumArticulators; ++i) {
    if (kSlugs[i] == slug) return static_cast<Articulator>(i);
  }
  throw DataError("unknown articulator: " + slug);
}

void PhoneInventory::validate() const {
  if (symbols.size() != kNumPhones) {
    throw DataError("phone inventory must have exactly 44 symbols, got " +
                    std::to_string(symbols.size()));
  }
  std::vector<std::string> sorted = symbols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DataError("phone inventory symbols must be unique");
  }
  if (silence_index < 0 || silence_index >= static_cast<int>(kNumPhones)) {
    throw DataError("silence index out of range");
  }
}

int PhoneInventory::index_of(const std::string& symbol) const {
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == symbol) return static_cast<int>(i);
  }
  throw DataError("unknown phone: " + symbol);
}

PhoneInventory PhoneInventory::default_inventory() {
  PhoneInventory inv;
  inv.symbols = {"a",  "an",  "b",  "b_cl", "d",  "d_cl", "e",    "E",   "E/",
                 "eu", "f",   "g",  "g_cl", "H",  "i",    "j",    "k",   "k_cl",
                 "l",  "m",   "n",  "gn",   "ng", "o",    "O",    "on",  "oe",
                 "oen", "p",  "p_cl", "R",  "s",  "S",    "t",    "t_cl", "u",
                 "v",  "w",   "y",  "z",    "Z",  "q",    "x",    "sil"};
  inv.silence_index = kSilencePhone;
  inv.validate();
  return inv;
}

std::vector<double> one_hot(int symbol, const PhoneInventory& inv) {
  if (symbol < 0 || symbol >= static_cast<int>(inv.symbols.size())) {
    throw DataError("unknown phone index " + std::to_string(symbol));
  }
  std::vector<double> v(inv.symbols.size(), 0.0);
  v[static_cast<size_t>(symbol)] = 1.0;
  return v;
}

size_t RawCorpus::total_utterances() const {
  size_t n = 0;
  for (const auto& a : acquisitions) n += a.utterances.size();
  return n;
}

void derive_sentence_flags(std::vector<PhoneInterval>& intervals, int silence_symbol) {
  for (size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!(iv.start_ms < iv.end_ms)) throw DataError("phone interval with start >= end");
    if (i > 0 && iv.start_ms < intervals[i - 1].end_ms - 1e-9) {
      throw DataError("phone intervals overlap or are unordered");
    }
  }
  for (size_t i = 0; i < intervals.size(); ++i) {
    auto& iv = intervals[i];
    if (iv.symbol != silence_symbol) {
      iv.sentence_internal = true;
      continue;
    }
    int prev_sentence = -1, next_sentence = -2;
    for (size_t j = i; j-- > 0;) {
      if (intervals[j].symbol != silence_symbol) {
        prev_sentence = intervals[j].sentence_id;
        break;
      }
    }
    for (size_t j = i + 1; j < intervals.size(); ++j) {
      if (intervals[j].symbol != silence_symbol) {
        next_sentence = intervals[j].sentence_id;
        break;
      }
    }
    iv.sentence_internal = (prev_sentence >= 0 && prev_sentence == next_sentence);
  }
}

Mat upsample_contours(const Mat& contours, size_t target_count) {
  if (contours.rows() == 0) throw DataError("empty contour sequence");
  const size_t n = contours.rows(), d = contours.cols();
  const size_t doubled = 2 * n;
  if (target_count != doubled - 1 && target_count != doubled) {
    throw DataError("alignment mismatch: " + std::to_string(n) + " contour frames cannot cover " +
                    std::to_string(target_count) + " acoustic frames");
  }
  Mat out(target_count, d);
  for (size_t i = 0; i < n; ++i) {
    std::copy(contours.row(i), contours.row(i) + d, out.row(2 * i));
    if (i + 1 < n) {
      const double* a = contours.row(i);
      const double* b = contours.row(i + 1);
      double* mid = out.row(2 * i + 1);
      for (size_t j = 0; j < d; ++j) mid[j] = 0.5 * (a[j] + b[j]);
    }
  }
  if (target_count == doubled) {
    std::copy(contours.row(n - 1), contours.row(n - 1) + d, out.row(target_count - 1));
  }
  return out;
}

SilenceFilterResult apply_silence_policy(const std::vector<double>& frame_centers_ms,
                                         const std::vector<PhoneInterval>& intervals,
                                         int silence_symbol, SilenceMode mode) {
  SilenceFilterResult res;
  size_t cursor = 0;
  for (size_t i = 0; i < frame_centers_ms.size(); ++i) {
    const double t = frame_centers_ms[i];
    while (cursor < intervals.size() && intervals[cursor].end_ms <= t) ++cursor;
    if (cursor >= intervals.size() || t < intervals[cursor].start_ms) {
      throw DataError("segmentation gap at " + std::to_string(t) + " ms");
    }
    const PhoneInterval& iv = intervals[cursor];
    const bool is_silence = iv.symbol == silence_symbol;
    if (is_silence && !iv.sentence_internal) continue;  // inter-sentence: drop
    const bool in_eval = !is_silence;
    if (mode == SilenceMode::kEval && !in_eval) continue;
    res.kept.push_back(i);
    res.eval_mask.push_back(in_eval ? 1 : 0);
    res.phones.push_back(iv.symbol);
  }
  return res;
}

NormStats fit_stats(const std::vector<const Mat*>& mats, const std::string& scope) {
  size_t n = 0, dim = 0;
  for (const Mat* m : mats) {
    if (m->rows() == 0) continue;
    if (dim == 0) dim = m->cols();
    if (m->cols() != dim) throw DataError("inconsistent dimension while fitting stats");
    n += m->rows();
  }
  if (n < 2) throw DataError("need at least 2 frames to fit stats");
  std::vector<double> sum(dim, 0.0), sumsq(dim, 0.0);
  for (const Mat* m : mats) {
    for (size_t i = 0; i < m->rows(); ++i) {
      const double* row = m->row(i);
      for (size_t j = 0; j < dim; ++j) {
        sum[j] += row[j];
        sumsq[j] += row[j] * row[j];
      }
    }
  }
  NormStats stats;
  stats.scope = scope;
  stats.mean.resize(dim);
  stats.std.resize(dim);
  size_t floored = 0;
  for (size_t j = 0; j < dim; ++j) {
    stats.mean[j] = sum[j] / n;
    const double var = std::max(0.0, sumsq[j] / n - stats.mean[j] * stats.mean[j]);
    double sd = std::sqrt(var);
    if (sd < NormStats::kStdFloor) {
      sd = NormStats::kStdFloor;
      ++floored;
    }
    stats.std[j] = sd;
  }
  if (floored > 0) {
    std::cerr << "warning: " << floored << " zero-variance dimension(s) floored while fitting "
              << scope << " stats\n";
  }
  return stats;
}

NormStats fit_stats(const Mat& m, const std::string& scope) {
  return fit_stats(std::vector<const Mat*>{&m}, scope);
}

void normalize_inplace(Mat& frames, const NormStats& stats) {
  if (frames.cols() != stats.dim()) throw DataError("stats dimension mismatch");
  for (size_t i = 0; i < frames.rows(); ++i) {
    double* row = frames.row(i);
    for (size_t j = 0; j < frames.cols(); ++j) {
      row[j] = (row[j] - stats.mean[j]) / stats.std[j];
    }
  }
}

void denormalize_span(std::span<const double> in, std::span<double> out,
                      std::span<const double> mean, std::span<const double> std) {
  for (size_t j = 0; j < in.size(); ++j) out[j] = in[j] * std[j] + mean[j];
}

NormStats fit_contour_stats_local(const std::vector<const Mat*>& recordings,
                                  size_t center, size_t half_window) {
  if (recordings.empty()) throw DataError("no recordings");
  if (center >= recordings.size()) throw DataError("center recording out of range");
  const size_t lo = center >= half_window ? center - half_window : 0;
  const size_t hi = std::min(recordings.size() - 1, center + half_window);
  std::vector<const Mat*> window(recordings.begin() + lo, recordings.begin() + hi + 1);
  return fit_stats(window, "contour-local@" + std::to_string(center));
}

Split split_by_acquisition(size_t n_acquisitions, uint64_t seed) {
  if (n_acquisitions < 3) throw DataError("corpus too small: need >= 3 acquisitions");
  std::vector<size_t> order(n_acquisitions);
  for (size_t i = 0; i < n_acquisitions; ++i) order[i] = i;
  Rng rng = Rng::seeded(seed);
  rng.shuffle(order);
  const size_t n_valid = n_acquisitions / 10;
  const size_t n_test = n_acquisitions / 10;
  Split s;
  s.test.assign(order.begin(), order.begin() + n_test);
  s.valid.assign(order.begin() + n_test, order.begin() + n_test + n_valid);
  s.train.assign(order.begin() + n_test + n_valid, order.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.valid.begin(), s.valid.end());
  std::sort(s.train.begin(), s.train.end());
  return s;
}

void write_contour_csv(const std::string& path, const Mat& contours) {
  if (contours.cols() != kContourDim) throw DataError("contour matrix must have 800 columns");
  std::ofstream f(path);
  if (!f) throw DataError("cannot write contour csv: " + path);
  f << "frame_index,articulator,point_index,x_px,y_px\n";
  char buf[96];
  for (size_t i = 0; i < contours.rows(); ++i) {
    const double* row = contours.row(i);
    for (size_t a = 0; a < kNumArticulators; ++a) {
      const std::string& slug = kSlugs[a];
      for (size_t p = 0; p < kPointsPerContour; ++p) {
        std::snprintf(buf, sizeof buf, "%zu,%s,%zu,%.4f,%.4f\n", i, slug.c_str(), p,
                      row[a * kArticulatorDim + p],
                      row[a * kArticulatorDim + kPointsPerContour + p]);
        f << buf;
      }
    }
  }
  if (!f) throw DataError("write failed: " + path);
}

Mat read_contour_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open contour csv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("empty contour csv: " + path);

  struct Row {
    size_t frame, art, point;
    double x, y;
  };
  std::vector<Row> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    char* p = line.data();
    char* end = nullptr;
    Row r;
    r.frame = std::strtoul(p, &end, 10);
    if (*end != ',') throw DataError("bad contour csv row: " + line);
    p = end + 1;
    char* comma = std::strchr(p, ',');
    if (!comma) throw DataError("bad contour csv row: " + line);
    r.art = static_cast<size_t>(articulator_from_slug(std::string(p, comma)));
    p = comma + 1;
    r.point = std::strtoul(p, &end, 10);
    if (*end != ',') throw DataError("bad contour csv row: " + line);
    p = end + 1;
    r.x = std::strtod(p, &end);
    if (*end != ',') throw DataError("bad contour csv row: " + line);
    p = end + 1;
    r.y = std::strtod(p, &end);
    if (r.point >= kPointsPerContour) throw DataError("point index out of range: " + line);
    rows.push_back(r);
  }
  if (rows.empty()) throw DataError("contour csv has no data rows: " + path);
  size_t n_frames = 0;
  for (const Row& r : rows) n_frames = std::max(n_frames, r.frame + 1);
  const size_t expected = n_frames * kNumArticulators * kPointsPerContour;
  if (rows.size() != expected) {
    throw DataError("contour csv incomplete: " + std::to_string(rows.size()) + " rows, expected " +
                    std::to_string(expected));
  }
  Mat m(n_frames, kContourDim);
  for (const Row& r : rows) {
    m(r.frame, r.art * kArticulatorDim + r.point) = r.x;
    m(r.frame, r.art * kArticulatorDim + kPointsPerContour + r.point) = r.y;
  }
  return m;
}

void write_segmentation_tsv(const std::string& path, const std::vector<PhoneInterval>& intervals,
                            const PhoneInventory& inv) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write segmentation tsv: " + path);
  f << "start_ms\tend_ms\tphone\tsentence_id\n";
  char buf[96];
  for (const auto& iv : intervals) {
    std::snprintf(buf, sizeof buf, "%.3f\t%.3f\t%s\t%d\n", iv.start_ms, iv.end_ms,
                  inv.symbols[static_cast<size_t>(iv.symbol)].c_str(), iv.sentence_id);
    f << buf;
  }
  if (!f) throw DataError("write failed: " + path);
}

std::vector<PhoneInterval> read_segmentation_tsv(const std::string& path,
                                                 const PhoneInventory& inv) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open segmentation tsv: " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("empty segmentation tsv: " + path);
  std::vector<PhoneInterval> intervals;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    PhoneInterval iv;
    char* p = line.data();
    char* end = nullptr;
    iv.start_ms = std::strtod(p, &end);
    if (*end != '\t') throw DataError("bad segmentation row: " + line);
    p = end + 1;
    iv.end_ms = std::strtod(p, &end);
    if (*end != '\t') throw DataError("bad segmentation row: " + line);
    p = end + 1;
    char* tab = std::strchr(p, '\t');
    if (!tab) throw DataError("bad segmentation row: " + line);
    iv.symbol = inv.index_of(std::string(p, tab));
    iv.sentence_id = static_cast<int>(std::strtol(tab + 1, &end, 10));
    intervals.push_back(iv);
  }
  derive_sentence_flags(intervals, inv.silence_index);
  return intervals;
}

void write_corpus(const RawCorpus& corpus, const std::string& dir) {
  fs::create_directories(dir);
  json manifest;
  manifest["format"] = "vtinv-corpus-v1";
  manifest["pixel_spacing_mm"] = corpus.pixel_spacing_mm;
  manifest["contour_fps"] = corpus.contour_fps;
  manifest["feature_hop_ms"] = corpus.feature_hop_ms;
  manifest["phone_inventory"] = corpus.inventory.symbols;
  json acqs = json::array();
  for (const auto& acq : corpus.acquisitions) {
    fs::create_directories(fs::path(dir) / acq.id);
    json utts = json::array();
    for (const auto& utt : acq.utterances) {
      const std::string base = acq.id + "/" + utt.id;
      json u;
      u["id"] = utt.id;
      u["contours"] = base + ".contours.csv";
      u["segmentation"] = base + ".seg.tsv";
      write_contour_csv((fs::path(dir) / (base + ".contours.csv")).string(), utt.contours);
      write_segmentation_tsv((fs::path(dir) / (base + ".seg.tsv")).string(), utt.intervals,
                             corpus.inventory);
      if (!utt.features.empty()) {
        u["features"] = base + ".vtf";
        write_vtf((fs::path(dir) / (base + ".vtf")).string(), utt.features);
      }
      if (!utt.wav_path.empty()) u["wav"] = utt.wav_path;
      utts.push_back(u);
    }
    acqs.push_back({{"id", acq.id}, {"utterances", utts}});
  }
  manifest["acquisitions"] = acqs;
  std::ofstream f(fs::path(dir) / "manifest.json");
  if (!f) throw DataError("cannot write manifest in " + dir);
  f << manifest.dump(2) << "\n";
}

RawCorpus load_corpus(const std::string& manifest_path) {
  std::ifstream f(manifest_path);
  if (!f) throw DataError("cannot open manifest: " + manifest_path);
  json manifest;
  try {
    f >> manifest;
  } catch (const json::exception& e) {
    throw DataError("bad manifest json: " + std::string(e.what()));
  }
  const fs::path root = fs::path(manifest_path).parent_path();
  RawCorpus corpus;
  corpus.pixel_spacing_mm = manifest.value("pixel_spacing_mm", kDefaultPixelSpacingMm);
  corpus.contour_fps = manifest.value("contour_fps", 50.0);
  corpus.feature_hop_ms = manifest.value("feature_hop_ms", 10.0);
  if (manifest.contains("phone_inventory")) {
    corpus.inventory.symbols = manifest["phone_inventory"].get<std::vector<std::string>>();
    corpus.inventory.validate();
  }
  for (const auto& ja : manifest.at("acquisitions")) {
    RawAcquisition acq;
    acq.id = ja.at("id").get<std::string>();
    for (const auto& ju : ja.at("utterances")) {
      RawUtterance utt;
      utt.id = ju.at("id").get<std::string>();
      utt.contours = read_contour_csv((root / ju.at("contours").get<std::string>()).string());
      utt.intervals =
          read_segmentation_tsv((root / ju.at("segmentation").get<std::string>()).string(),
                                corpus.inventory);
      if (ju.contains("features") && !ju["features"].is_null()) {
        utt.features = read_vtf((root / ju["features"].get<std::string>()).string());
      }
      if (ju.contains("wav") && !ju["wav"].is_null()) {
        utt.wav_path = (root / ju["wav"].get<std::string>()).string();
      }
      if (utt.features.empty() && utt.wav_path.empty()) {
        throw DataError("utterance " + utt.id + " has neither features nor wav");
      }
      acq.utterances.push_back(std::move(utt));
    }
    corpus.acquisitions.push_back(std::move(acq));
  }
  return corpus;
}

}  // namespace vtinv
