// vtinv/ttest.h

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

#ifndef VTINV_TTEST_H_
#define VTINV_TTEST_H_

#include <span>

namespace vtinv {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction;
// absolute accuracy better than 1e-9 over the t-test range.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  bool significant = false;  // p < 0.05
};

// Paired two-sided t-test on per-frame values (sample standard deviation of
// the differences, df = n-1). Identical samples give t = 0, p = 1.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace vtinv

#endif  // VTINV_TTEST_H_
