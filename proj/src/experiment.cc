// vtinv/experiment.cc

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

#include "vtinv/experiment.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "vtinv/errors.h"
#include "vtinv/mfcc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace vtinv {

void ExperimentConfig::validate() const {
  train.validate();
  if (hidden_width == 0) throw DataError("experiment config: hidden_width must be positive");
  for (int a : articulators) {
    if (a < 0 || a >= static_cast<int>(kNumArticulators)) {
      throw DataError("experiment config: bad articulator index");
    }
  }
  if (approach == TaskMode::kAAT && !articulators.empty()) {
    throw DataError("experiment config: articulator list only applies to ABA");
  }
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["variant"] = variant_name(variant);
  j["approach"] = task_mode_name(approach);
  if (!articulators.empty()) {
    std::vector<std::string> slugs;
    for (int a : articulators) slugs.push_back(articulator_slug(static_cast<Articulator>(a)));
    j["articulators"] = slugs;
  }
  j["hidden_width"] = hidden_width;
  j["train"] = {{"max_epochs", train.max_epochs}, {"batch_size", train.batch_size},
                {"learning_rate", train.learning_rate}, {"patience", train.patience},
                {"min_delta", train.min_delta}, {"seed", train.seed},
                {"precision", train.precision}};
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError("bad experiment config json: " + std::string(e.what()));
  }
  ExperimentConfig cfg;
  cfg.variant = variant_from_name(j.value("variant", "ST-5"));
  cfg.approach = task_mode_from_name(j.value("approach", "AAT"));
  if (j.contains("articulators")) {
    for (const auto& s : j["articulators"]) {
      cfg.articulators.push_back(
          static_cast<int>(articulator_from_slug(s.get<std::string>())));
    }
  }
  cfg.hidden_width = j.value("hidden_width", 300);
  if (j.contains("train")) {
    const json& t = j["train"];
    cfg.train.max_epochs = t.value("max_epochs", cfg.train.max_epochs);
    cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
    cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
    cfg.train.patience = t.value("patience", cfg.train.patience);
    cfg.train.min_delta = t.value("min_delta", cfg.train.min_delta);
    cfg.train.seed = t.value("seed", cfg.train.seed);
    cfg.train.precision = t.value("precision", cfg.train.precision);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open experiment config: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return from_json(text);
}

void ExperimentConfig::write_file(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write experiment config: " + path);
  f << to_json() << "\n";
}

namespace {

// Owns any materialized feature/target matrices the TrainItems point into.
struct ItemStore {
  std::vector<Mat> owned;
  std::vector<TrainItem> items;
};

ItemStore build_items(const PreparedDataset& ds, const std::vector<size_t>& indices,
                      size_t context_radius, int articulator) {
  ItemStore store;
  store.owned.reserve(indices.size() * 2);
  for (size_t idx : indices) {
    const PreparedUtterance& pu = ds.utt(idx);
    TrainItem item;
    if (context_radius > 0) {
      store.owned.push_back(build_context_windows(pu.features, context_radius));
      item.features = store.owned.back();
    } else {
      item.features = pu.features;
    }
    if (articulator >= 0) {
      const size_t off = static_cast<size_t>(articulator) * kArticulatorDim;
      Mat sliced(pu.targets.rows(), kArticulatorDim);
      for (size_t r = 0; r < pu.targets.rows(); ++r) {
        std::copy(pu.targets.row(r) + off, pu.targets.row(r) + off + kArticulatorDim,
                  sliced.row(r));
      }
      store.owned.push_back(std::move(sliced));
      item.targets = store.owned.back();
    } else {
      item.targets = pu.targets;
    }
    item.phones = &pu.phones;
    store.items.push_back(item);
  }
  return store;
}

// Frame errors of precomputed normalized outputs for one utterance.
void collect_errors(const PreparedUtterance& pu, CMatView out, int only_articulator,
                    double pixel_spacing_mm, std::vector<FrameError>& sink) {
  const size_t first = only_articulator >= 0 ? static_cast<size_t>(only_articulator) : 0;
  const size_t last = only_articulator >= 0 ? first + 1 : kNumArticulators;
  for (size_t k = 0; k < pu.frame_ids.size(); ++k) {
    for (size_t a = first; a < last; ++a) {
      const size_t off = a * kArticulatorDim;
      const size_t out_off = only_articulator >= 0 ? 0 : off;
      FrameError e;
      e.articulator = static_cast<int>(a);
      e.utt_id = pu.id;
      e.frame_id = pu.frame_ids[k];
      e.eval_included = pu.eval_mask[k] != 0;
      e.rmse_mm = rmse_frame_articulator(
          {out.row(k) + out_off, kArticulatorDim}, {pu.targets.row(k) + off, kArticulatorDim},
          {pu.contour_stats.mean.data() + off, kArticulatorDim},
          {pu.contour_stats.std.data() + off, kArticulatorDim}, pixel_spacing_mm);
      sink.push_back(std::move(e));
    }
  }
}

}  // namespace

std::vector<FrameError> evaluate_model(const Model& model, const PreparedDataset& ds,
                                       const std::vector<size_t>& utt_indices) {
  const size_t radius = model.spec().context_radius();
  const int articulator =
      model.spec().task_mode == TaskMode::kABA ? model.spec().articulator : -1;
  std::vector<std::vector<FrameError>> parts(utt_indices.size());
#pragma omp parallel for schedule(dynamic)
  for (ptrdiff_t i = 0; i < static_cast<ptrdiff_t>(utt_indices.size()); ++i) {
    const PreparedUtterance& pu = ds.utt(utt_indices[i]);
    Model::Forward f;
    if (radius > 0) {
      const Mat stacked = build_context_windows(pu.features, radius);
      model.forward(stacked, f);
    } else {
      model.forward(pu.features, f);
    }
    collect_errors(pu, model.output(f), articulator, ds.pixel_spacing_mm, parts[i]);
  }
  std::vector<FrameError> errors;
  for (auto& p : parts) {
    errors.insert(errors.end(), std::make_move_iterator(p.begin()),
                  std::make_move_iterator(p.end()));
  }
  return errors;
}

std::vector<FrameError> evaluate_constant_predictor(const std::vector<double>& contour,
                                                    const PreparedDataset& ds,
                                                    const std::vector<size_t>& utt_indices) {
  if (contour.size() != kContourDim) throw DataError("constant predictor needs an 800-dim contour");
  std::vector<FrameError> errors;
  for (size_t idx : utt_indices) {
    const PreparedUtterance& pu = ds.utt(idx);
    Mat out(pu.frame_ids.size(), kContourDim);
    for (size_t k = 0; k < out.rows(); ++k) {
      std::copy(contour.begin(), contour.end(), out.row(k));
    }
    collect_errors(pu, out, -1, ds.pixel_spacing_mm, errors);
  }
  return errors;
}

double mean_frame_rmse_mm(const std::vector<FrameError>& errors) {
  double sum = 0.0;
  size_t n = 0;
  for (const FrameError& e : errors) {
    if (!e.eval_included) continue;
    sum += e.rmse_mm;
    ++n;
  }
  if (n == 0) throw DataError("no eval frames");
  return sum / static_cast<double>(n);
}

double phone_accuracy(const Model& model, const PreparedDataset& ds,
                      const std::vector<size_t>& utt_indices) {
  if (!model.spec().has_classifier()) throw DataError("model has no classification head");
  size_t hits = 0, total = 0;
  for (size_t idx : utt_indices) {
    const PreparedUtterance& pu = ds.utt(idx);
    Model::Forward f;
    if (model.spec().context_radius() > 0) {
      model.forward(build_context_windows(pu.features, model.spec().context_radius()), f);
    } else {
      model.forward(pu.features, f);
    }
    const Mat probs = model.phone_probs(f);
    for (size_t k = 0; k < pu.frame_ids.size(); ++k) {
      if (!pu.eval_mask[k]) continue;
      const double* row = probs.row(k);
      size_t arg = 0;
      for (size_t c = 1; c < probs.cols(); ++c) {
        if (row[c] > row[arg]) arg = c;
      }
      hits += static_cast<int>(arg) == pu.phones[k] ? 1 : 0;
      ++total;
    }
  }
  if (total == 0) throw DataError("no eval frames");
  return static_cast<double>(hits) / static_cast<double>(total);
}

ExperimentResult run_experiment(const PreparedDataset& ds, const ExperimentConfig& cfg,
                                const std::string& out_dir) {
  cfg.validate();
  if (!out_dir.empty()) fs::create_directories(out_dir);

  const size_t radius = Variant::kST5Cw11 == cfg.variant ? 5 : 0;
  ExperimentResult result;

  if (cfg.approach == TaskMode::kAAT) {
    ModelSpec spec;
    spec.variant = cfg.variant;
    spec.task_mode = TaskMode::kAAT;
    spec.input_dim = frame_dim_for_radius(radius);
    spec.hidden_width = cfg.hidden_width;
    Model model(spec, cfg.train.seed);

    const ItemStore train_store = build_items(ds, ds.train, radius, -1);
    const ItemStore valid_store = build_items(ds, ds.valid, radius, -1);
    result.logs.push_back(train_model(model, train_store.items, valid_store.items, cfg.train));
    result.frame_errors = evaluate_model(model, ds, ds.test);
    if (spec.has_classifier()) {
      result.phone_accuracy = phone_accuracy(model, ds, ds.test);
    }
    if (!out_dir.empty()) {
      const std::string ckpt = (fs::path(out_dir) / "model.vtm").string();
      save_checkpoint(ckpt, model);
      result.checkpoint_paths.push_back(ckpt);
      result.logs.back().write_csv((fs::path(out_dir) / "trainlog.csv").string());
    }
  } else {
    std::vector<int> arts = cfg.articulators;
    if (arts.empty()) {
      for (size_t a = 0; a < kNumArticulators; ++a) arts.push_back(static_cast<int>(a));
    }
    for (int a : arts) {
      ModelSpec spec;
      spec.variant = cfg.variant;
      spec.task_mode = TaskMode::kABA;
      spec.articulator = a;
      spec.input_dim = frame_dim_for_radius(radius);
      spec.hidden_width = cfg.hidden_width;
      Model model(spec, cfg.train.seed + static_cast<uint64_t>(a));

      const ItemStore train_store = build_items(ds, ds.train, radius, a);
      const ItemStore valid_store = build_items(ds, ds.valid, radius, a);
      result.logs.push_back(train_model(model, train_store.items, valid_store.items, cfg.train));
      std::vector<FrameError> errors = evaluate_model(model, ds, ds.test);
      result.frame_errors.insert(result.frame_errors.end(),
                                 std::make_move_iterator(errors.begin()),
                                 std::make_move_iterator(errors.end()));
      if (!out_dir.empty()) {
        const std::string slug = articulator_slug(static_cast<Articulator>(a));
        const std::string ckpt = (fs::path(out_dir) / ("model_" + slug + ".vtm")).string();
        save_checkpoint(ckpt, model);
        result.checkpoint_paths.push_back(ckpt);
        result.logs.back().write_csv((fs::path(out_dir) / ("trainlog_" + slug + ".csv")).string());
      }
    }
  }

  // Aggregate only when every articulator is covered (full run).
  std::array<bool, kNumArticulators> seen{};
  for (const FrameError& e : result.frame_errors) {
    if (e.eval_included) seen[static_cast<size_t>(e.articulator)] = true;
  }
  if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    MetricsReport rep = aggregate(result.frame_errors);
    rep.model = variant_name(cfg.variant);
    rep.approach = task_mode_name(cfg.approach);
    result.report = rep;
  }

  if (!out_dir.empty()) {
    write_frame_errors_csv((fs::path(out_dir) / "frame_errors.csv").string(),
                           result.frame_errors);
    if (result.report) {
      write_metrics_csv((fs::path(out_dir) / "metrics.csv").string(), *result.report);
    }
  }
  return result;
}

PredictionDump dump_predictions(const Model& model, const PreparedDataset& ds, size_t utt_index,
                                const std::string& out_dir) {
  if (model.spec().task_mode != TaskMode::kAAT) {
    throw DataError("prediction dump expects an AAT model");
  }
  fs::create_directories(out_dir);
  const PreparedUtterance& pu = ds.utt(utt_index);
  Model::Forward f;
  if (model.spec().context_radius() > 0) {
    model.forward(build_context_windows(pu.features, model.spec().context_radius()), f);
  } else {
    model.forward(pu.features, f);
  }
  const Mat& out = model.output(f);

  Mat pred_px(out.rows(), kContourDim), truth_px(out.rows(), kContourDim);
  PredictionDump dump;
  for (size_t k = 0; k < out.rows(); ++k) {
    denormalize_span(out.row_span(k), pred_px.row_span(k), pu.contour_stats.mean,
                     pu.contour_stats.std);
    denormalize_span(pu.targets.row_span(k), truth_px.row_span(k), pu.contour_stats.mean,
                     pu.contour_stats.std);
    double sum = 0.0;
    for (size_t a = 0; a < kNumArticulators; ++a) {
      const size_t off = a * kArticulatorDim;
      sum += rmse_frame_articulator({out.row(k) + off, kArticulatorDim},
                                    {pu.targets.row(k) + off, kArticulatorDim},
                                    {pu.contour_stats.mean.data() + off, kArticulatorDim},
                                    {pu.contour_stats.std.data() + off, kArticulatorDim},
                                    ds.pixel_spacing_mm);
    }
    dump.frame_rmse_mm.push_back(sum / kNumArticulators);
  }
  dump.pred_path = (fs::path(out_dir) / (pu.id + ".pred.csv")).string();
  dump.truth_path = (fs::path(out_dir) / (pu.id + ".truth.csv")).string();
  write_contour_csv(dump.pred_path, pred_px);
  write_contour_csv(dump.truth_path, truth_px);
  return dump;
}

}  // namespace vtinv
