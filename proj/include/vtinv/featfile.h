// vtinv/featfile.h

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

#ifndef VTINV_FEATFILE_H_
#define VTINV_FEATFILE_H_

#include <string>

#include "vtinv/mat.h"

namespace vtinv {

// Per-utterance feature container: magic "VTF1", uint32 frame count,
// uint32 dim, then row-major float64 little-endian.
void write_vtf(const std::string& path, const Mat& frames);
Mat read_vtf(const std::string& path);

// Equivalent CSV export for inspection: header "frame,c0,..,c<dim-1>".
void write_feature_csv(const std::string& path, const Mat& frames);

}  // namespace vtinv

#endif  // VTINV_FEATFILE_H_
