// vtinv/model.h

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

#ifndef VTINV_MODEL_H_
#define VTINV_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "vtinv/corpus.h"
#include "vtinv/mat.h"
#include "vtinv/nn.h"

namespace vtinv {

enum class Variant { kST5, kST8, kMT5, kST5Cw11 };
enum class TaskMode { kABA, kAAT };

std::string variant_name(Variant v);        // "ST-5", "ST-8", "MT-5", "ST-5-cw11"
Variant variant_from_name(const std::string& name);
std::string task_mode_name(TaskMode m);     // "ABA", "AAT"
TaskMode task_mode_from_name(const std::string& name);

struct ModelSpec {
  Variant variant = Variant::kST5;
  TaskMode task_mode = TaskMode::kAAT;
  int articulator = -1;  // canonical index, ABA only
  size_t input_dim = 39;
  size_t hidden_width = 300;
  size_t n_phones = kNumPhones;

  size_t output_dim() const {
    return task_mode == TaskMode::kABA ? kArticulatorDim : kContourDim;
  }
  bool has_classifier() const { return variant == Variant::kMT5; }
  size_t context_radius() const { return variant == Variant::kST5Cw11 ? 5 : 0; }

  void validate() const;  // throws DataError("bad spec: ...")
  std::string to_json() const;
  static ModelSpec from_json(const std::string& text);
};

// One of the four inversion networks. The trunk is
// dense(tanh) x2 -> BiLSTM x2; ST-8 inserts three extra dense layers of the
// output width (tanh, tanh, identity) before the output dense; MT-5 adds a
// phone-classification dense head on the second BiLSTM output.
class Model {
 public:
  Model(const ModelSpec& spec, uint64_t seed);

  const ModelSpec& spec() const { return spec_; }
  nn::ParameterStore& params() { return ps_; }
  const nn::ParameterStore& params() const { return ps_; }
  size_t n_params() const { return ps_.size(); }

  struct Forward {
    Mat a1, a2;                // dense trunk activations
    nn::BiLstm::State s1, s2;  // BiLSTM states (s2.y is the shared representation)
    std::vector<Mat> post;     // post-chain outputs; back() is the regression output
    Mat logits;                // MT-5 phone logits (empty otherwise)
  };

  void forward(CMatView frames, Forward& f) const;
  const Mat& output(const Forward& f) const { return f.post.back(); }
  // Phone distribution rows (softmax of logits); MT-5 only.
  Mat phone_probs(const Forward& f) const;

  // d_out: upstream gradient on the regression output. d_logits: upstream
  // gradient on the phone logits (empty unless MT-5). grad must be a
  // params-congruent buffer; contributions are accumulated.
  void backward(CMatView frames, const Forward& f, CMatView d_out, CMatView d_logits,
                std::span<double> grad) const;

 private:
  ModelSpec spec_;
  nn::ParameterStore ps_;
  nn::Dense d1_, d2_;
  nn::BiLstm b1_, b2_;
  std::vector<nn::Dense> post_;
  std::optional<nn::Dense> cls_;
};

// Checkpoint file: magic "VTM1", u32 version, u32 spec length, spec JSON,
// parameter values in store order as float64 little-endian.
void save_checkpoint(const std::string& path, const Model& model);
Model load_checkpoint(const std::string& path);

}  // namespace vtinv

#endif  // VTINV_MODEL_H_
