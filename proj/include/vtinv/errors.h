// vtinv/errors.h

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

#ifndef VTINV_ERRORS_H_
#define VTINV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vtinv {

// Malformed or inconsistent input: bad files, shape mismatches, invalid
// configs. CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: divergence, non-finite values, failed convergence.
// CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vtinv

#endif  // VTINV_ERRORS_H_
