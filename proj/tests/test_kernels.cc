// tests/test_kernels.cc

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

#include <doctest.h>

#include "testutil.h"
#include "vtinv/kernels.h"

using namespace vtinv;
using vtinv::testing::random_mat;

namespace {

bool bit_equal(const Mat& a, const Mat& b) { return a == b; }

}  // namespace

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  Rng rng = Rng::seeded(7);
  // Small sizes stay under the parallel cutoff, large ones go over it.
  const std::pair<size_t, size_t> shapes[] = {{5, 9}, {64, 80}, {200, 256}};
  for (auto [m, k] : shapes) {
    const size_t n = k + 3;
    const Mat a = random_mat(m, k, rng);
    const Mat bt = random_mat(n, k, rng);  // for nt
    const Mat b = random_mat(k, n, rng);   // for nn

    Mat c1(m, n), c2(m, n);
    kern::matmul_nt(a, bt, c1);
    kern::ref::matmul_nt(a, bt, c2);
    CHECK(bit_equal(c1, c2));

    kern::matmul_nn(a, b, c1);
    kern::ref::matmul_nn(a, b, c2);
    CHECK(bit_equal(c1, c2));

    Mat acc1 = random_mat(m, n, rng);
    Mat acc2 = acc1;
    kern::matmul_nn(a, b, acc1, /*accumulate=*/true);
    kern::ref::matmul_nn(a, b, acc2, /*accumulate=*/true);
    CHECK(bit_equal(acc1, acc2));

    // A (m x k)^T * B (m x n)
    const Mat bmn = random_mat(m, n, rng);
    Mat g1 = random_mat(k, n, rng);
    Mat g2 = g1;
    kern::matmul_tn_acc(a, bmn, g1);
    kern::ref::matmul_tn_acc(a, bmn, g2);
    CHECK(bit_equal(g1, g2));

    std::vector<double> x(k), y1(m), y2(m);
    for (auto& v : x) v = rng.uniform(-1, 1);
    for (size_t i = 0; i < m; ++i) y1[i] = y2[i] = rng.uniform(-1, 1);
    kern::matvec_acc(a, x, y1);
    kern::ref::matvec_acc(a, x, y2);
    CHECK(y1 == y2);

    std::vector<double> xm(m), z1(k), z2(k);
    for (auto& v : xm) v = rng.uniform(-1, 1);
    kern::matvec_t(a, xm, z1);
    kern::ref::matvec_t(a, xm, z2);
    CHECK(z1 == z2);

    std::vector<double> s1(k, 0.25), s2(k, 0.25);
    kern::colsum_acc(a, s1);
    kern::ref::colsum_acc(a, s2);
    CHECK(s1 == s2);

    Mat r1 = a, r2 = a;
    kern::add_row(r1, x);
    kern::ref::add_row(r2, x);
    CHECK(bit_equal(r1, r2));
  }
}

TEST_CASE("matmul_nt computes dot products of rows") {
  Mat a(2, 2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  Mat b(2, 2);
  b(0, 0) = 5; b(0, 1) = 6; b(1, 0) = 7; b(1, 1) = 8;
  Mat c(2, 2);
  kern::matmul_nt(a, b, c);
  CHECK(c(0, 0) == doctest::Approx(17));  // 1*5+2*6
  CHECK(c(0, 1) == doctest::Approx(23));  // 1*7+2*8
  CHECK(c(1, 0) == doctest::Approx(39));
  CHECK(c(1, 1) == doctest::Approx(53));
}

TEST_CASE("matmul_tn_acc accumulates A^T B") {
  Mat a(3, 2), b(3, 2);
  Rng rng = Rng::seeded(3);
  a = random_mat(3, 2, rng);
  b = random_mat(3, 2, rng);
  Mat c(2, 2, 1.0);
  kern::matmul_tn_acc(a, b, c);
  for (size_t i = 0; i < 2; ++i) {
    for (size_t j = 0; j < 2; ++j) {
      double expect = 1.0;
      for (size_t t = 0; t < 3; ++t) expect += a(t, i) * b(t, j);
      CHECK(c(i, j) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}
