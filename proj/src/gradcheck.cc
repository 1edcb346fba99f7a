// vtinv/gradcheck.cc

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

#include "vtinv/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vtinv/rng.h"

namespace vtinv {

GradCheckReport gradient_check(std::span<double> params, std::span<const double> analytic,
                               const std::function<double()>& loss, double eps,
                               size_t min_coords, uint64_t seed) {
  const size_t n = params.size();
  std::vector<size_t> coords;
  if (n <= min_coords) {
    coords.resize(n);
    for (size_t i = 0; i < n; ++i) coords[i] = i;
  } else {
    // sample without replacement via partial shuffle
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    Rng rng = Rng::seeded(seed ^ 0xc0ffee);
    for (size_t i = 0; i < min_coords; ++i) {
      std::swap(all[i], all[i + rng.below(n - i)]);
    }
    coords.assign(all.begin(), all.begin() + min_coords);
  }

  GradCheckReport rep;
  rep.coords_checked = coords.size();
  for (size_t idx : coords) {
    const double saved = params[idx];
    params[idx] = saved + eps;
    const double up = loss();
    params[idx] = saved - eps;
    const double down = loss();
    params[idx] = saved;
    const double fd = (up - down) / (2.0 * eps);
    const double ga = analytic[idx];
    const double rel = std::fabs(ga - fd) / std::max({std::fabs(ga), std::fabs(fd), 1e-12});
    if (rel > rep.max_rel_error) {
      rep.max_rel_error = rel;
      rep.worst_coord = idx;
    }
  }
  return rep;
}

}  // namespace vtinv
