// vtinv/model.cc

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

#include "vtinv/model.h"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "vtinv/errors.h"
#include "vtinv/mfcc.h"

using nlohmann::json;

namespace vtinv {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kST5: return "ST-5";
    case Variant::kST8: return "ST-8";
    case Variant::kMT5: return "MT-5";
    case Variant::kST5Cw11: return "ST-5-cw11";
  }
  throw DataError("bad variant enum");
}

Variant variant_from_name(const std::string& name) {
  if (name == "ST-5") return Variant::kST5;
  if (name == "ST-8") return Variant::kST8;
  if (name == "MT-5") return Variant::kMT5;
  if (name == "ST-5-cw11") return Variant::kST5Cw11;
  throw DataError("unknown model variant: " + name);
}

std::string task_mode_name(TaskMode m) { return m == TaskMode::kABA ? "ABA" : "AAT"; }

TaskMode task_mode_from_name(const std::string& name) {
  if (name == "ABA") return TaskMode::kABA;
  if (name == "AAT") return TaskMode::kAAT;
  throw DataError("unknown task mode: " + name);
}

void ModelSpec::validate() const {
  const size_t expected_input = frame_dim_for_radius(context_radius());
  if (input_dim != expected_input) {
    throw DataError("bad spec: " + variant_name(variant) + " requires input_dim " +
                    std::to_string(expected_input));
  }
  if (hidden_width == 0) throw DataError("bad spec: hidden_width must be positive");
  if (task_mode == TaskMode::kABA) {
    if (articulator < 0 || articulator >= static_cast<int>(kNumArticulators)) {
      throw DataError("bad spec: ABA needs an articulator index in [0, 8)");
    }
  }
  if (has_classifier() && n_phones != kNumPhones) {
    throw DataError("bad spec: MT-5 classifier must have 44 phones");
  }
}

std::string ModelSpec::to_json() const {
  json j;
  j["variant"] = variant_name(variant);
  j["task_mode"] = task_mode_name(task_mode);
  j["articulator"] = articulator;
  j["input_dim"] = input_dim;
  j["hidden_width"] = hidden_width;
  j["n_phones"] = n_phones;
  return j.dump();
}

ModelSpec ModelSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError("bad model spec json: " + std::string(e.what()));
  }
  ModelSpec s;
  s.variant = variant_from_name(j.at("variant").get<std::string>());
  s.task_mode = task_mode_from_name(j.at("task_mode").get<std::string>());
  s.articulator = j.value("articulator", -1);
  s.input_dim = j.at("input_dim").get<size_t>();
  s.hidden_width = j.at("hidden_width").get<size_t>();
  s.n_phones = j.value("n_phones", kNumPhones);
  s.validate();
  return s;
}

Model::Model(const ModelSpec& spec, uint64_t seed) : spec_(spec) {
  spec_.validate();
  const size_t h = spec_.hidden_width;
  const size_t out = spec_.output_dim();
  d1_.build(ps_, "dense1", spec_.input_dim, h, nn::Act::kTanh);
  d2_.build(ps_, "dense2", h, h, nn::Act::kTanh);
  b1_.build(ps_, "bilstm1", h, h);
  b2_.build(ps_, "bilstm2", 2 * h, h);
  if (spec_.variant == Variant::kST8) {
    post_.resize(4);
    post_[0].build(ps_, "extra1", 2 * h, out, nn::Act::kTanh);
    post_[1].build(ps_, "extra2", out, out, nn::Act::kTanh);
    post_[2].build(ps_, "extra3", out, out, nn::Act::kIdentity);
    post_[3].build(ps_, "output", out, out, nn::Act::kIdentity);
  } else {
    post_.resize(1);
    post_[0].build(ps_, "output", 2 * h, out, nn::Act::kIdentity);
  }
  if (spec_.has_classifier()) {
    cls_.emplace();
    cls_->build(ps_, "phones", 2 * h, spec_.n_phones, nn::Act::kIdentity);
  }
  ps_.freeze();

  Rng rng = Rng::seeded(seed);
  d1_.init(ps_, rng);
  d2_.init(ps_, rng);
  b1_.init(ps_, rng);
  b2_.init(ps_, rng);
  for (const auto& layer : post_) layer.init(ps_, rng);
  if (cls_) cls_->init(ps_, rng);
}

void Model::forward(CMatView frames, Forward& f) const {
  if (frames.rows == 0) throw DataError("empty sequence");
  if (frames.cols != spec_.input_dim) {
    throw DataError("dimension error: model expects " + std::to_string(spec_.input_dim) +
                    "-dim frames, got " + std::to_string(frames.cols));
  }
  d1_.forward(ps_, frames, f.a1);
  d2_.forward(ps_, f.a1, f.a2);
  b1_.forward(ps_, f.a2, f.s1);
  b2_.forward(ps_, f.s1.y, f.s2);
  f.post.resize(post_.size());
  CMatView cur = f.s2.y;
  for (size_t i = 0; i < post_.size(); ++i) {
    post_[i].forward(ps_, cur, f.post[i]);
    cur = f.post[i];
  }
  if (cls_) {
    cls_->forward(ps_, f.s2.y, f.logits);
  }
}

Mat Model::phone_probs(const Forward& f) const {
  if (!cls_) throw DataError("model has no classification head");
  Mat probs;
  nn::softmax_rows(f.logits, probs);
  return probs;
}

void Model::backward(CMatView frames, const Forward& f, CMatView d_out, CMatView d_logits,
                     std::span<double> grad) const {
  if (f.post.empty()) throw DataError("no forward state");
  const size_t t_len = frames.rows;

  // Post chain, reverse order. Input of post_[i] is post_[i-1] (or s2.y).
  Mat d_cur(t_len, 0);
  CMatView dy = d_out;
  Mat d_shared(t_len, b2_.fwd.hidden * 2);
  for (size_t i = post_.size(); i-- > 0;) {
    const CMatView x_in = i == 0 ? CMatView(f.s2.y) : CMatView(f.post[i - 1]);
    MatView dx_target;
    Mat d_next;
    if (i == 0) {
      dx_target = d_shared;
    } else {
      d_next.resize(t_len, post_[i].in);
      dx_target = d_next;
    }
    post_[i].backward(ps_, x_in, f.post[i], dy, grad, dx_target);
    if (i > 0) {
      d_cur = std::move(d_next);
      dy = d_cur;
    }
  }
  if (cls_ && !d_logits.empty()) {
    cls_->backward(ps_, f.s2.y, f.logits, d_logits, grad, d_shared);
  }

  Mat d_y1(t_len, b1_.fwd.hidden * 2);
  b2_.backward(ps_, f.s1.y, f.s2, d_shared, grad, d_y1);
  Mat d_a2(t_len, d2_.out);
  b1_.backward(ps_, f.a2, f.s1, d_y1, grad, d_a2);
  Mat d_a1(t_len, d1_.out);
  d2_.backward(ps_, f.a1, f.a2, d_a2, grad, d_a1);
  d1_.backward(ps_, frames, f.a1, d_a1, grad, MatView());
}

void save_checkpoint(const std::string& path, const Model& model) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write checkpoint: " + path);
  const std::string spec = model.spec().to_json();
  const uint32_t version = 1;
  const uint32_t len = static_cast<uint32_t>(spec.size());
  f.write("VTM1", 4);
  f.write(reinterpret_cast<const char*>(&version), 4);
  f.write(reinterpret_cast<const char*>(&len), 4);
  f.write(spec.data(), len);
  const auto flat = model.params().flat();
  f.write(reinterpret_cast<const char*>(flat.data()),
          static_cast<std::streamsize>(flat.size() * sizeof(double)));
  if (!f) throw DataError("write failed: " + path);
}

Model load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open checkpoint: " + path);
  char magic[4];
  uint32_t version = 0, len = 0;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&version), 4);
  f.read(reinterpret_cast<char*>(&len), 4);
  if (!f || std::memcmp(magic, "VTM1", 4) != 0) throw DataError("bad checkpoint magic: " + path);
  if (version != 1) throw DataError("unsupported checkpoint version");
  std::string spec_text(len, '\0');
  f.read(spec_text.data(), len);
  if (!f) throw DataError("truncated checkpoint spec: " + path);
  Model model(ModelSpec::from_json(spec_text), /*seed=*/0);
  auto flat = model.params().flat();
  f.read(reinterpret_cast<char*>(flat.data()),
         static_cast<std::streamsize>(flat.size() * sizeof(double)));
  if (!f) throw DataError("truncated checkpoint parameters: " + path);
  char probe;
  if (f.read(&probe, 1)) throw DataError("checkpoint has trailing bytes: " + path);
  return model;
}

}  // namespace vtinv
