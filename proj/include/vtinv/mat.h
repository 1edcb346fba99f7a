// vtinv/mat.h

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

#ifndef VTINV_MAT_H_
#define VTINV_MAT_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace vtinv {

// Dense row-major matrix of doubles. Frame sequences are stored as
// (frames x dim) matrices throughout the pipeline.
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double* row(size_t r) { return data_.data() + r * cols_; }
  const double* row(size_t r) const { return data_.data() + r * cols_; }

  std::span<double> row_span(size_t r) { return {row(r), cols_}; }
  std::span<const double> row_span(size_t r) const { return {row(r), cols_}; }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  void resize(size_t rows, size_t cols, double fill = 0.0) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(rows * cols, fill);
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Non-owning mutable view over row-major storage; lets kernels operate on
// parameter blocks inside a flat store without copies.
struct MatView {
  double* ptr = nullptr;
  size_t rows = 0, cols = 0;

  MatView() = default;
  MatView(double* p, size_t r, size_t c) : ptr(p), rows(r), cols(c) {}
  MatView(Mat& m) : ptr(m.data()), rows(m.rows()), cols(m.cols()) {}

  double* row(size_t r) const { return ptr + r * cols; }
  double& operator()(size_t r, size_t c) const { return ptr[r * cols + c]; }
  std::span<double> row_span(size_t r) const { return {row(r), cols}; }
  std::span<double> flat() const { return {ptr, rows * cols}; }
  bool empty() const { return ptr == nullptr || rows * cols == 0; }
};

struct CMatView {
  const double* ptr = nullptr;
  size_t rows = 0, cols = 0;

  CMatView() = default;
  CMatView(const double* p, size_t r, size_t c) : ptr(p), rows(r), cols(c) {}
  CMatView(const Mat& m) : ptr(m.data()), rows(m.rows()), cols(m.cols()) {}
  CMatView(const MatView& m) : ptr(m.ptr), rows(m.rows), cols(m.cols) {}

  const double* row(size_t r) const { return ptr + r * cols; }
  double operator()(size_t r, size_t c) const { return ptr[r * cols + c]; }
  std::span<const double> row_span(size_t r) const { return {row(r), cols}; }
  std::span<const double> flat() const { return {ptr, rows * cols}; }
  bool empty() const { return ptr == nullptr || rows * cols == 0; }
};

}  // namespace vtinv

#endif  // VTINV_MAT_H_
