// vtinv/kernels.h

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

#ifndef VTINV_KERNELS_H_
#define VTINV_KERNELS_H_

#include <span>

#include "vtinv/mat.h"

namespace vtinv {
namespace kern {

// OpenMP-parallel kernels. Every output element is produced by exactly one
// thread with a fixed inner summation order, so results are bit-identical to
// the serial reference (kern::ref) for any thread count.

// C(m x n) = A(m x k) * B(n x k)^T
void matmul_nt(CMatView a, CMatView b, MatView c);

// C(m x n) = [C +] A(m x k) * B(k x n)
void matmul_nn(CMatView a, CMatView b, MatView c, bool accumulate = false);

// C(m x n) += A(t x m)^T * B(t x n)
void matmul_tn_acc(CMatView a, CMatView b, MatView c);

// y(m) += W(m x n) * x(n)
void matvec_acc(CMatView w, std::span<const double> x, std::span<double> y);

// y(n) = W(m x n)^T * x(m)
void matvec_t(CMatView w, std::span<const double> x, std::span<double> y);

// y(n) += column sums of A(t x n)
void colsum_acc(CMatView a, std::span<double> y);

// every row of A += v
void add_row(MatView a, std::span<const double> v);

namespace ref {
// Serial reference implementations, kept for kernel tests and the benchmark.
void matmul_nt(CMatView a, CMatView b, MatView c);
void matmul_nn(CMatView a, CMatView b, MatView c, bool accumulate = false);
void matmul_tn_acc(CMatView a, CMatView b, MatView c);
void matvec_acc(CMatView w, std::span<const double> x, std::span<double> y);
void matvec_t(CMatView w, std::span<const double> x, std::span<double> y);
void colsum_acc(CMatView a, std::span<double> y);
void add_row(MatView a, std::span<const double> v);
}  // namespace ref

}  // namespace kern
}  // namespace vtinv

#endif  // VTINV_KERNELS_H_
