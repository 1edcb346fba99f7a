// vtinv/nn.h

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

#ifndef VTINV_NN_H_
#define VTINV_NN_H_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "vtinv/mat.h"
#include "vtinv/rng.h"

namespace vtinv {
namespace nn {

// Flat, stably addressed collection of learnable arrays. Layers register
// their blocks before freeze(); afterwards the flat storage is fixed and a
// congruent gradient buffer can be allocated with grad_buffer().
class ParameterStore {
 public:
  struct Block {
    std::string name;
    size_t offset, rows, cols;
    size_t size() const { return rows * cols; }
  };

  size_t add(const std::string& name, size_t rows, size_t cols);
  void freeze();
  bool frozen() const { return frozen_; }

  size_t size() const { return total_; }
  size_t n_blocks() const { return blocks_.size(); }
  const Block& block(size_t id) const { return blocks_[id]; }

  MatView mat(size_t id);
  CMatView mat(size_t id) const;
  std::span<double> vec(size_t id);
  std::span<const double> vec(size_t id) const;

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  std::vector<double> grad_buffer() const { return std::vector<double>(total_, 0.0); }
  MatView grad_mat(std::span<double> grad, size_t id) const;

 private:
  std::vector<Block> blocks_;
  std::vector<double> data_;
  size_t total_ = 0;
  bool frozen_ = false;
};

enum class Act { kIdentity, kTanh };

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Fully connected layer; forward runs over a whole (T x in) sequence.
struct Dense {
  size_t in = 0, out = 0;
  Act act = Act::kIdentity;
  size_t w = 0, b = 0;  // parameter blocks: w is (out x in), b is (1 x out)

  void build(ParameterStore& ps, const std::string& prefix, size_t in_dim, size_t out_dim,
             Act activation);
  void init(ParameterStore& ps, Rng& rng) const;

  // y = act(x W^T + b); y is resized.
  void forward(const ParameterStore& ps, CMatView x, Mat& y) const;
  // Consumes dY, accumulates parameter gradients, and if dx is non-empty
  // accumulates the input gradient into it.
  void backward(const ParameterStore& ps, CMatView x, const Mat& y, CMatView dy,
                std::span<double> grad, MatView dx) const;
};

// One LSTM direction with standard gates; gate order in the 4h blocks is
// input, forget, cell candidate, output.
struct LstmDir {
  size_t in = 0, hidden = 0;
  bool reverse = false;
  size_t wx = 0, wh = 0, b = 0;  // (4h x in), (4h x h), (1 x 4h)

  struct State {
    Mat gates;  // T x 4h, post-activation
    Mat c;      // T x h
    Mat h;      // T x h, rows indexed by input time
  };

  void build(ParameterStore& ps, const std::string& prefix, size_t in_dim, size_t hidden_dim,
             bool run_reversed);
  void init(ParameterStore& ps, Rng& rng) const;

  void forward(const ParameterStore& ps, CMatView x, State& st) const;
  void backward(const ParameterStore& ps, CMatView x, const State& st, CMatView dh,
                std::span<double> grad, MatView dx) const;
};

// Single LSTM step exposed for unit tests: returns (h, c) for one input.
void lstm_step(const ParameterStore& ps, const LstmDir& dir, std::span<const double> x,
               std::span<const double> h_prev, std::span<const double> c_prev,
               std::span<double> h_out, std::span<double> c_out);

// Bidirectional wrapper: output per frame is [h_forward | h_backward].
struct BiLstm {
  LstmDir fwd, bwd;

  struct State {
    LstmDir::State fs, bs;
    Mat y;  // T x 2h
  };

  void build(ParameterStore& ps, const std::string& prefix, size_t in_dim, size_t hidden_dim);
  void init(ParameterStore& ps, Rng& rng) const;

  void forward(const ParameterStore& ps, CMatView x, State& st) const;
  void backward(const ParameterStore& ps, CMatView x, const State& st, CMatView dy,
                std::span<double> grad, MatView dx) const;
};

// Row-wise softmax with max subtraction.
void softmax_rows(const Mat& logits, Mat& probs);

}  // namespace nn
}  // namespace vtinv

#endif  // VTINV_NN_H_
