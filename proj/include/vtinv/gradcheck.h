// vtinv/gradcheck.h

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

#ifndef VTINV_GRADCHECK_H_
#define VTINV_GRADCHECK_H_

#include <cstdint>
#include <functional>
#include <span>

namespace vtinv {

struct GradCheckReport {
  double max_rel_error = 0.0;
  size_t coords_checked = 0;
  size_t worst_coord = 0;
};

// Compares an analytic gradient against central finite differences of
// loss() on a random subsample of parameter coordinates (at least
// min_coords, or all of them when the model is small). loss() must evaluate
// the scalar objective at the current contents of params; params are
// restored after probing. Relative error per coordinate is
// |ga - gf| / max(|ga|, |gf|, 1e-12).
GradCheckReport gradient_check(std::span<double> params, std::span<const double> analytic,
                               const std::function<double()>& loss, double eps = 1e-4,
                               size_t min_coords = 200, uint64_t seed = 0);

}  // namespace vtinv

#endif  // VTINV_GRADCHECK_H_
