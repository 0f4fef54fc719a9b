// Copyright 2026 The tate-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TATELAB_FORMAT_HPP_
#define TATELAB_FORMAT_HPP_

#include <cstdio>
#include <string>

namespace tatelab {

/// Fixed report formatting: 12 significant digits, "%.12g".
inline std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, for JSON emission (the JSON writer
/// prints the shortest round-trip form of the rounded value).
inline double round12(double x) { return std::stod(fmt_real(x)); }

}  // namespace tatelab

#endif  // TATELAB_FORMAT_HPP_
