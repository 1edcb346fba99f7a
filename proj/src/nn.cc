// vtinv/nn.cc

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

#include "vtinv/nn.h"

#include <algorithm>
#include <cassert>

#include "vtinv/errors.h"
#include "vtinv/kernels.h"

namespace vtinv {
namespace nn {

size_t ParameterStore::add(const std::string& name, size_t rows, size_t cols) {
  if (frozen_) throw DataError("parameter store is frozen");
  blocks_.push_back({name, total_, rows, cols});
  total_ += rows * cols;
  return blocks_.size() - 1;
}

void ParameterStore::freeze() {
  data_.assign(total_, 0.0);
  frozen_ = true;
}

MatView ParameterStore::mat(size_t id) {
  const Block& blk = blocks_[id];
  return {data_.data() + blk.offset, blk.rows, blk.cols};
}

CMatView ParameterStore::mat(size_t id) const {
  const Block& blk = blocks_[id];
  return {data_.data() + blk.offset, blk.rows, blk.cols};
}

std::span<double> ParameterStore::vec(size_t id) {
  const Block& blk = blocks_[id];
  return {data_.data() + blk.offset, blk.size()};
}

std::span<const double> ParameterStore::vec(size_t id) const {
  const Block& blk = blocks_[id];
  return {data_.data() + blk.offset, blk.size()};
}

MatView ParameterStore::grad_mat(std::span<double> grad, size_t id) const {
  const Block& blk = blocks_[id];
  assert(grad.size() == total_);
  return {grad.data() + blk.offset, blk.rows, blk.cols};
}

namespace {

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in))
void init_uniform(MatView w, size_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (double& v : w.flat()) v = rng.uniform(-bound, bound);
}

void apply_act_rows(Mat& y, Act act) {
  if (act == Act::kIdentity) return;
  for (double* p = y.data(); p != y.data() + y.size(); ++p) *p = std::tanh(*p);
}

}  // namespace

void Dense::build(ParameterStore& ps, const std::string& prefix, size_t in_dim, size_t out_dim,
                  Act activation) {
  in = in_dim;
  out = out_dim;
  act = activation;
  w = ps.add(prefix + ".w", out_dim, in_dim);
  b = ps.add(prefix + ".b", 1, out_dim);
}

void Dense::init(ParameterStore& ps, Rng& rng) const {
  init_uniform(ps.mat(w), in, rng);
  // biases stay zero
}

void Dense::forward(const ParameterStore& ps, CMatView x, Mat& y) const {
  if (x.cols != in) {
    throw DataError("dimension error: dense expects " + std::to_string(in) + ", got " +
                    std::to_string(x.cols));
  }
  y.resize(x.rows, out);
  kern::matmul_nt(x, ps.mat(w), y);
  kern::add_row(y, ps.vec(b));
  apply_act_rows(y, act);
}

void Dense::backward(const ParameterStore& ps, CMatView x, const Mat& y, CMatView dy,
                     std::span<double> grad, MatView dx) const {
  assert(dy.rows == x.rows && dy.cols == out);
  Mat dpre(dy.rows, dy.cols);
  if (act == Act::kTanh) {
    for (size_t i = 0; i < dy.rows; ++i) {
      const double* yi = y.row(i);
      const double* di = dy.row(i);
      double* oi = dpre.row(i);
      for (size_t j = 0; j < dy.cols; ++j) oi[j] = di[j] * (1.0 - yi[j] * yi[j]);
    }
  } else {
    std::copy(dy.ptr, dy.ptr + dy.rows * dy.cols, dpre.data());
  }
  kern::matmul_tn_acc(dpre, x, ps.grad_mat(grad, w));
  kern::colsum_acc(dpre, ps.grad_mat(grad, b).flat());
  if (!dx.empty()) {
    kern::matmul_nn(dpre, ps.mat(w), dx, /*accumulate=*/true);
  }
}

void LstmDir::build(ParameterStore& ps, const std::string& prefix, size_t in_dim,
                    size_t hidden_dim, bool run_reversed) {
  in = in_dim;
  hidden = hidden_dim;
  reverse = run_reversed;
  wx = ps.add(prefix + ".wx", 4 * hidden_dim, in_dim);
  wh = ps.add(prefix + ".wh", 4 * hidden_dim, hidden_dim);
  b = ps.add(prefix + ".b", 1, 4 * hidden_dim);
}

void LstmDir::init(ParameterStore& ps, Rng& rng) const {
  init_uniform(ps.mat(wx), in, rng);
  init_uniform(ps.mat(wh), hidden, rng);
}

void LstmDir::forward(const ParameterStore& ps, CMatView x, State& st) const {
  if (x.rows == 0) throw DataError("empty sequence");
  if (x.cols != in) {
    throw DataError("dimension error: lstm expects " + std::to_string(in) + ", got " +
                    std::to_string(x.cols));
  }
  const size_t t_len = x.rows, h = hidden;
  st.gates.resize(t_len, 4 * h);
  st.c.resize(t_len, h);
  st.h.resize(t_len, h);

  // Input projections for the whole sequence in one pass.
  kern::matmul_nt(x, ps.mat(wx), st.gates);
  kern::add_row(st.gates, ps.vec(b));

  const CMatView whm = ps.mat(wh);
  std::vector<double> h_prev(h, 0.0), c_prev(h, 0.0);
  for (size_t s = 0; s < t_len; ++s) {
    const size_t t = reverse ? t_len - 1 - s : s;
    double* g = st.gates.row(t);
    kern::matvec_acc(whm, h_prev, {g, 4 * h});
    double* ct = st.c.row(t);
    double* ht = st.h.row(t);
    for (size_t j = 0; j < h; ++j) {
      const double ig = sigmoid(g[j]);
      const double fg = sigmoid(g[h + j]);
      const double gg = std::tanh(g[2 * h + j]);
      const double og = sigmoid(g[3 * h + j]);
      g[j] = ig;
      g[h + j] = fg;
      g[2 * h + j] = gg;
      g[3 * h + j] = og;
      ct[j] = fg * c_prev[j] + ig * gg;
      ht[j] = og * std::tanh(ct[j]);
    }
    std::copy(ht, ht + h, h_prev.data());
    std::copy(ct, ct + h, c_prev.data());
  }
}

void LstmDir::backward(const ParameterStore& ps, CMatView x, const State& st, CMatView dh,
                       std::span<double> grad, MatView dx) const {
  const size_t t_len = x.rows, h = hidden;
  assert(dh.rows == t_len && dh.cols == h);
  Mat dgates(t_len, 4 * h);  // gradients w.r.t. pre-activation gates
  std::vector<double> dh_carry(h, 0.0), dc_carry(h, 0.0);
  const CMatView whm = ps.mat(wh);

  for (size_t s = t_len; s-- > 0;) {
    const size_t t = reverse ? t_len - 1 - s : s;
    const double* g = st.gates.row(t);
    const double* ct = st.c.row(t);
    const double* cp = s > 0 ? st.c.row(reverse ? t + 1 : t - 1) : nullptr;
    const double* dht = dh.row(t);
    double* dg = dgates.row(t);
    for (size_t j = 0; j < h; ++j) {
      const double ig = g[j], fg = g[h + j], gg = g[2 * h + j], og = g[3 * h + j];
      const double tc = std::tanh(ct[j]);
      const double dh_total = dht[j] + dh_carry[j];
      const double dog = dh_total * tc;
      double dc = dh_total * og * (1.0 - tc * tc) + dc_carry[j];
      const double cprev = cp ? cp[j] : 0.0;
      const double dig = dc * gg;
      const double dfg = dc * cprev;
      const double dgg = dc * ig;
      dg[j] = dig * ig * (1.0 - ig);
      dg[h + j] = dfg * fg * (1.0 - fg);
      dg[2 * h + j] = dgg * (1.0 - gg * gg);
      dg[3 * h + j] = dog * og * (1.0 - og);
      dc_carry[j] = dc * fg;
    }
    kern::matvec_t(whm, {dg, 4 * h}, dh_carry);
  }

  kern::matmul_tn_acc(dgates, x, ps.grad_mat(grad, wx));
  kern::colsum_acc(dgates, ps.grad_mat(grad, b).flat());

  // h inputs to the recurrent matrix, aligned with dgates rows.
  Mat h_prev_seq(t_len, h);
  for (size_t s = 0; s < t_len; ++s) {
    const size_t t = reverse ? t_len - 1 - s : s;
    if (s == 0) {
      std::fill(h_prev_seq.row(t), h_prev_seq.row(t) + h, 0.0);
    } else {
      const size_t tp = reverse ? t + 1 : t - 1;
      std::copy(st.h.row(tp), st.h.row(tp) + h, h_prev_seq.row(t));
    }
  }
  kern::matmul_tn_acc(dgates, h_prev_seq, ps.grad_mat(grad, wh));

  if (!dx.empty()) {
    kern::matmul_nn(dgates, ps.mat(wx), dx, /*accumulate=*/true);
  }
}

void lstm_step(const ParameterStore& ps, const LstmDir& dir, std::span<const double> x,
               std::span<const double> h_prev, std::span<const double> c_prev,
               std::span<double> h_out, std::span<double> c_out) {
  const size_t h = dir.hidden;
  if (x.size() != dir.in || h_prev.size() != h || c_prev.size() != h) {
    throw DataError("dimension error in lstm_step");
  }
  std::vector<double> g(4 * h);
  std::copy(ps.vec(dir.b).begin(), ps.vec(dir.b).end(), g.begin());
  kern::matvec_acc(ps.mat(dir.wx), x, g);
  kern::matvec_acc(ps.mat(dir.wh), h_prev, g);
  for (size_t j = 0; j < h; ++j) {
    const double ig = sigmoid(g[j]);
    const double fg = sigmoid(g[h + j]);
    const double gg = std::tanh(g[2 * h + j]);
    const double og = sigmoid(g[3 * h + j]);
    c_out[j] = fg * c_prev[j] + ig * gg;
    h_out[j] = og * std::tanh(c_out[j]);
  }
}

void BiLstm::build(ParameterStore& ps, const std::string& prefix, size_t in_dim,
                   size_t hidden_dim) {
  fwd.build(ps, prefix + ".fwd", in_dim, hidden_dim, /*run_reversed=*/false);
  bwd.build(ps, prefix + ".bwd", in_dim, hidden_dim, /*run_reversed=*/true);
}

void BiLstm::init(ParameterStore& ps, Rng& rng) const {
  fwd.init(ps, rng);
  bwd.init(ps, rng);
}

void BiLstm::forward(const ParameterStore& ps, CMatView x, State& st) const {
  fwd.forward(ps, x, st.fs);
  bwd.forward(ps, x, st.bs);
  const size_t t_len = x.rows, h = fwd.hidden;
  st.y.resize(t_len, 2 * h);
  for (size_t t = 0; t < t_len; ++t) {
    double* row = st.y.row(t);
    std::copy(st.fs.h.row(t), st.fs.h.row(t) + h, row);
    std::copy(st.bs.h.row(t), st.bs.h.row(t) + h, row + h);
  }
}

void BiLstm::backward(const ParameterStore& ps, CMatView x, const State& st, CMatView dy,
                      std::span<double> grad, MatView dx) const {
  const size_t t_len = x.rows, h = fwd.hidden;
  assert(dy.cols == 2 * h);
  Mat dhf(t_len, h), dhb(t_len, h);
  for (size_t t = 0; t < t_len; ++t) {
    const double* row = dy.row(t);
    std::copy(row, row + h, dhf.row(t));
    std::copy(row + h, row + 2 * h, dhb.row(t));
  }
  fwd.backward(ps, x, st.fs, dhf, grad, dx);
  bwd.backward(ps, x, st.bs, dhb, grad, dx);
}

void softmax_rows(const Mat& logits, Mat& probs) {
  probs.resize(logits.rows(), logits.cols());
  for (size_t i = 0; i < logits.rows(); ++i) {
    const double* in = logits.row(i);
    double* out = probs.row(i);
    double mx = in[0];
    for (size_t j = 1; j < logits.cols(); ++j) mx = std::max(mx, in[j]);
    double sum = 0.0;
    for (size_t j = 0; j < logits.cols(); ++j) {
      out[j] = std::exp(in[j] - mx);
      sum += out[j];
    }
    for (size_t j = 0; j < logits.cols(); ++j) out[j] /= sum;
  }
}

}  // namespace nn
}  // namespace vtinv
