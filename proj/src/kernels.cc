// vtinv/kernels.cc

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

#include "vtinv/kernels.h"

#include <cassert>
#include <cstddef>

namespace vtinv {
namespace kern {

// Below this many multiply-adds the parallel-for overhead dominates.
static constexpr size_t kParallelCutoff = 1 << 15;

void matmul_nt(CMatView a, CMatView b, MatView c) {
  assert(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows);
  const ptrdiff_t m = static_cast<ptrdiff_t>(a.rows);
  const size_t n = b.rows, k = a.cols;
  const bool par = a.rows * n * k >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (par)
  for (ptrdiff_t i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (size_t j = 0; j < n; ++j) {
      const double* bj = b.row(j);
      double s = 0.0;
      for (size_t l = 0; l < k; ++l) s += ai[l] * bj[l];
      ci[j] = s;
    }
  }
}

void matmul_nn(CMatView a, CMatView b, MatView c, bool accumulate) {
  assert(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols);
  const ptrdiff_t m = static_cast<ptrdiff_t>(a.rows);
  const size_t n = b.cols, k = a.cols;
  const bool par = a.rows * n * k >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (par)
  for (ptrdiff_t i = 0; i < m; ++i) {
    double* ci = c.row(i);
    if (!accumulate) {
      for (size_t j = 0; j < n; ++j) ci[j] = 0.0;
    }
    const double* ai = a.row(i);
    for (size_t l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b.row(l);
      for (size_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
    }
  }
}

void matmul_tn_acc(CMatView a, CMatView b, MatView c) {
  assert(a.rows == b.rows && c.rows == a.cols && c.cols == b.cols);
  const ptrdiff_t m = static_cast<ptrdiff_t>(a.cols);
  const size_t n = b.cols, t = a.rows;
  const bool par = a.cols * n * t >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (par)
  for (ptrdiff_t i = 0; i < m; ++i) {
    double* ci = c.row(i);
    for (size_t s = 0; s < t; ++s) {
      const double asi = a(s, i);
      const double* bs = b.row(s);
      for (size_t j = 0; j < n; ++j) ci[j] += asi * bs[j];
    }
  }
}

void matvec_acc(CMatView w, std::span<const double> x, std::span<double> y) {
  assert(w.cols == x.size() && w.rows == y.size());
  const ptrdiff_t m = static_cast<ptrdiff_t>(w.rows);
  const size_t n = w.cols;
  const bool par = w.rows * n >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (par)
  for (ptrdiff_t i = 0; i < m; ++i) {
    const double* wi = w.row(i);
    double s = 0.0;
    for (size_t j = 0; j < n; ++j) s += wi[j] * x[j];
    y[i] += s;
  }
}

void matvec_t(CMatView w, std::span<const double> x, std::span<double> y) {
  assert(w.rows == x.size() && w.cols == y.size());
  for (size_t j = 0; j < w.cols; ++j) y[j] = 0.0;
  for (size_t i = 0; i < w.rows; ++i) {
    const double xi = x[i];
    const double* wi = w.row(i);
    for (size_t j = 0; j < w.cols; ++j) y[j] += xi * wi[j];
  }
}

void colsum_acc(CMatView a, std::span<double> y) {
  assert(a.cols == y.size());
  for (size_t i = 0; i < a.rows; ++i) {
    const double* ai = a.row(i);
    for (size_t j = 0; j < a.cols; ++j) y[j] += ai[j];
  }
}

void add_row(MatView a, std::span<const double> v) {
  assert(a.cols == v.size());
  const ptrdiff_t m = static_cast<ptrdiff_t>(a.rows);
  const bool par = a.rows * a.cols >= kParallelCutoff;
#pragma omp parallel for schedule(static) if (par)
  for (ptrdiff_t i = 0; i < m; ++i) {
    double* ai = a.row(i);
    for (size_t j = 0; j < a.cols; ++j) ai[j] += v[j];
  }
}

namespace ref {

void matmul_nt(CMatView a, CMatView b, MatView c) {
  for (size_t i = 0; i < a.rows; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (size_t j = 0; j < b.rows; ++j) {
      const double* bj = b.row(j);
      double s = 0.0;
      for (size_t l = 0; l < a.cols; ++l) s += ai[l] * bj[l];
      ci[j] = s;
    }
  }
}

void matmul_nn(CMatView a, CMatView b, MatView c, bool accumulate) {
  for (size_t i = 0; i < a.rows; ++i) {
    double* ci = c.row(i);
    if (!accumulate) {
      for (size_t j = 0; j < b.cols; ++j) ci[j] = 0.0;
    }
    const double* ai = a.row(i);
    for (size_t l = 0; l < a.cols; ++l) {
      const double ail = ai[l];
      const double* bl = b.row(l);
      for (size_t j = 0; j < b.cols; ++j) ci[j] += ail * bl[j];
    }
  }
}

void matmul_tn_acc(CMatView a, CMatView b, MatView c) {
  for (size_t i = 0; i < a.cols; ++i) {
    double* ci = c.row(i);
    for (size_t s = 0; s < a.rows; ++s) {
      const double asi = a(s, i);
      const double* bs = b.row(s);
      for (size_t j = 0; j < b.cols; ++j) ci[j] += asi * bs[j];
    }
  }
}

void matvec_acc(CMatView w, std::span<const double> x, std::span<double> y) {
  for (size_t i = 0; i < w.rows; ++i) {
    const double* wi = w.row(i);
    double s = 0.0;
    for (size_t j = 0; j < w.cols; ++j) s += wi[j] * x[j];
    y[i] += s;
  }
}

void matvec_t(CMatView w, std::span<const double> x, std::span<double> y) {
  for (size_t j = 0; j < w.cols; ++j) y[j] = 0.0;
  for (size_t i = 0; i < w.rows; ++i) {
    const double xi = x[i];
    const double* wi = w.row(i);
    for (size_t j = 0; j < w.cols; ++j) y[j] += xi * wi[j];
  }
}

void colsum_acc(CMatView a, std::span<double> y) {
  for (size_t i = 0; i < a.rows; ++i) {
    const double* ai = a.row(i);
    for (size_t j = 0; j < a.cols; ++j) y[j] += ai[j];
  }
}

void add_row(MatView a, std::span<const double> v) {
  for (size_t i = 0; i < a.rows; ++i) {
    double* ai = a.row(i);
    for (size_t j = 0; j < a.cols; ++j) ai[j] += v[j];
  }
}

}  // namespace ref
}  // namespace kern
}  // namespace vtinv
