// vtinv/dataset.cc

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

#include "vtinv/dataset.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "vtinv/errors.h"
#include "vtinv/featfile.h"
#include "vtinv/mfcc.h"
#include "vtinv/wav.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vtinv {

namespace {

Mat utterance_features(const RawUtterance& utt) {
  if (!utt.features.empty()) {
    if (utt.features.cols() != kFrameDim) {
      throw DataError("utterance " + utt.id + ": features must be 39-dim");
    }
    return utt.features;
  }
  if (utt.wav_path.empty()) {
    throw DataError("utterance " + utt.id + " has neither features nor wav");
  }
  MfccConfig cfg;
  const Mat statics = extract_mfcc(read_wav(utt.wav_path), cfg);
  return append_deltas(statics, cfg.delta_radius);
}

}  // namespace

PreparedDataset prepare(const RawCorpus& corpus, uint64_t split_seed) {
  PreparedDataset ds;
  ds.pixel_spacing_mm = corpus.pixel_spacing_mm;
  ds.split_seed = split_seed;

  // Raw contour sequences in corpus order, for the local normalization window.
  std::vector<const Mat*> recordings;
  struct Pending {
    const RawUtterance* raw;
    std::string acq_id;
  };
  std::vector<Pending> pending;
  std::vector<size_t> acq_of_utt;
  for (size_t ai = 0; ai < corpus.acquisitions.size(); ++ai) {
    for (const RawUtterance& utt : corpus.acquisitions[ai].utterances) {
      recordings.push_back(&utt.contours);
      pending.push_back({&utt, corpus.acquisitions[ai].id});
      acq_of_utt.push_back(ai);
    }
  }
  if (pending.empty()) throw DataError("corpus has no utterances");

  const double hop_ms = corpus.feature_hop_ms;
  for (size_t r = 0; r < pending.size(); ++r) {
    const RawUtterance& raw = *pending[r].raw;
    PreparedUtterance pu;
    pu.id = pending[r].acq_id + "_" + raw.id;
    pu.acq_id = pending[r].acq_id;

    Mat features = utterance_features(raw);
    const size_t n_frames = features.rows();
    Mat aligned = upsample_contours(raw.contours, n_frames);

    std::vector<double> centers(n_frames);
    for (size_t i = 0; i < n_frames; ++i) centers[i] = i * hop_ms + hop_ms / 2.0;
    const SilenceFilterResult filt = apply_silence_policy(
        centers, raw.intervals, corpus.inventory.silence_index, SilenceMode::kTrain);
    if (filt.kept.empty()) {
      throw DataError("utterance " + pu.id + " has no frames after silence removal");
    }

    pu.contour_stats = fit_contour_stats_local(recordings, r);
    pu.frame_ids.reserve(filt.kept.size());
    pu.features.resize(filt.kept.size(), features.cols());
    pu.targets.resize(filt.kept.size(), kContourDim);
    for (size_t k = 0; k < filt.kept.size(); ++k) {
      const size_t src = filt.kept[k];
      pu.frame_ids.push_back(static_cast<int>(src));
      std::copy(features.row(src), features.row(src) + features.cols(), pu.features.row(k));
      std::copy(aligned.row(src), aligned.row(src) + kContourDim, pu.targets.row(k));
    }
    pu.eval_mask = filt.eval_mask;
    pu.phones = filt.phones;
    normalize_inplace(pu.targets, pu.contour_stats);
    ds.utterances.push_back(std::move(pu));
  }

  const Split split = split_by_acquisition(corpus.acquisitions.size(), split_seed);
  auto in = [](const std::vector<size_t>& v, size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (size_t u = 0; u < ds.utterances.size(); ++u) {
    const size_t acq = acq_of_utt[u];
    if (in(split.train, acq)) {
      ds.train.push_back(u);
    } else if (in(split.valid, acq)) {
      ds.valid.push_back(u);
    } else {
      ds.test.push_back(u);
    }
  }

  // Global MFCC stats from the training split only.
  std::vector<const Mat*> train_feats;
  for (size_t u : ds.train) train_feats.push_back(&ds.utterances[u].features);
  ds.mfcc_stats = fit_stats(train_feats, "global-mfcc");
  for (PreparedUtterance& pu : ds.utterances) normalize_inplace(pu.features, ds.mfcc_stats);
  return ds;
}

void save_prepared(const PreparedDataset& ds, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "utt");
  json j;
  j["format"] = "vtinv-prepared-v1";
  j["split_seed"] = ds.split_seed;
  j["pixel_spacing_mm"] = ds.pixel_spacing_mm;
  j["mfcc_stats"] = {{"mean", ds.mfcc_stats.mean}, {"std", ds.mfcc_stats.std}};
  auto ids = [&](const std::vector<size_t>& v) {
    std::vector<std::string> out;
    for (size_t i : v) out.push_back(ds.utterances[i].id);
    return out;
  };
  j["train"] = ids(ds.train);
  j["valid"] = ids(ds.valid);
  j["test"] = ids(ds.test);
  json utts = json::array();
  for (const PreparedUtterance& pu : ds.utterances) {
    utts.push_back({{"id", pu.id}, {"acq", pu.acq_id}});
    write_vtf((fs::path(dir) / "utt" / (pu.id + ".feat.vtf")).string(), pu.features);
    write_vtf((fs::path(dir) / "utt" / (pu.id + ".target.vtf")).string(), pu.targets);
    Mat stats(2, kContourDim);
    std::copy(pu.contour_stats.mean.begin(), pu.contour_stats.mean.end(), stats.row(0));
    std::copy(pu.contour_stats.std.begin(), pu.contour_stats.std.end(), stats.row(1));
    write_vtf((fs::path(dir) / "utt" / (pu.id + ".stats.vtf")).string(), stats);
    std::ofstream f(fs::path(dir) / "utt" / (pu.id + ".frames.csv"));
    if (!f) throw DataError("cannot write frames csv for " + pu.id);
    f << "frame_id,phone,eval_mask\n";
    for (size_t k = 0; k < pu.frame_ids.size(); ++k) {
      f << pu.frame_ids[k] << ',' << pu.phones[k] << ',' << int(pu.eval_mask[k]) << "\n";
    }
  }
  j["utterances"] = utts;
  std::ofstream f(fs::path(dir) / "dataset.json");
  if (!f) throw DataError("cannot write dataset.json in " + dir);
  f << j.dump(2) << "\n";
}

PreparedDataset load_prepared(const std::string& dir) {
  std::ifstream f(fs::path(dir) / "dataset.json");
  if (!f) throw DataError("cannot open prepared dataset in " + dir);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw DataError("bad dataset.json: " + std::string(e.what()));
  }
  PreparedDataset ds;
  ds.split_seed = j.value("split_seed", 0ULL);
  ds.pixel_spacing_mm = j.value("pixel_spacing_mm", kDefaultPixelSpacingMm);
  ds.mfcc_stats.mean = j.at("mfcc_stats").at("mean").get<std::vector<double>>();
  ds.mfcc_stats.std = j.at("mfcc_stats").at("std").get<std::vector<double>>();
  ds.mfcc_stats.scope = "global-mfcc";

  std::vector<std::string> order;
  for (const auto& ju : j.at("utterances")) {
    PreparedUtterance pu;
    pu.id = ju.at("id").get<std::string>();
    pu.acq_id = ju.at("acq").get<std::string>();
    pu.features = read_vtf((fs::path(dir) / "utt" / (pu.id + ".feat.vtf")).string());
    pu.targets = read_vtf((fs::path(dir) / "utt" / (pu.id + ".target.vtf")).string());
    const Mat stats = read_vtf((fs::path(dir) / "utt" / (pu.id + ".stats.vtf")).string());
    if (stats.rows() != 2 || stats.cols() != kContourDim) {
      throw DataError("bad stats file for " + pu.id);
    }
    pu.contour_stats.mean.assign(stats.row(0), stats.row(0) + kContourDim);
    pu.contour_stats.std.assign(stats.row(1), stats.row(1) + kContourDim);
    pu.contour_stats.scope = "contour-local";
    std::ifstream fc(fs::path(dir) / "utt" / (pu.id + ".frames.csv"));
    if (!fc) throw DataError("missing frames csv for " + pu.id);
    std::string line;
    std::getline(fc, line);
    while (std::getline(fc, line)) {
      if (line.empty()) continue;
      int frame = 0, phone = 0, mask = 0;
      if (std::sscanf(line.c_str(), "%d,%d,%d", &frame, &phone, &mask) != 3) {
        throw DataError("bad frames csv row for " + pu.id + ": " + line);
      }
      pu.frame_ids.push_back(frame);
      pu.phones.push_back(phone);
      pu.eval_mask.push_back(static_cast<uint8_t>(mask));
    }
    if (pu.frame_ids.size() != pu.features.rows() || pu.targets.rows() != pu.features.rows()) {
      throw DataError("inconsistent prepared utterance " + pu.id);
    }
    order.push_back(pu.id);
    ds.utterances.push_back(std::move(pu));
  }
  auto index_of = [&](const std::string& id) -> size_t {
    for (size_t i = 0; i < order.size(); ++i) {
      if (order[i] == id) return i;
    }
    throw DataError("split references unknown utterance " + id);
  };
  for (const auto& id : j.at("train")) ds.train.push_back(index_of(id.get<std::string>()));
  for (const auto& id : j.at("valid")) ds.valid.push_back(index_of(id.get<std::string>()));
  for (const auto& id : j.at("test")) ds.test.push_back(index_of(id.get<std::string>()));
  return ds;
}

}  // namespace vtinv
