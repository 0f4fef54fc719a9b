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

#include "tatelab/tate_ff.hpp"

#include <stdexcept>

namespace tatelab {

std::string AngleClass::to_string() const {
  if (kind == Kind::infinite_order) return "infinite_order";
  return "root_of_unity(" + std::to_string(order) + ")";
}

AngleClass classify(const FrobeniusPair& fp) {
  const BigInt a2 = fp.a * fp.a;
  const BigInt& q = fp.q;
  if (a2 > 4 * q) throw std::domain_error("Hasse bound violated: a^2 > 4q");
  using K = AngleClass::Kind;
  const bool positive = fp.a > 0;
  // 2 cos(theta) = a / sqrt(q)
  if (a2 == 0) return {K::root_of_unity, 4};
  if (a2 == q) return {K::root_of_unity, positive ? 6U : 3U};
  if (a2 == 2 * q) return {K::root_of_unity, 8};
  if (a2 == 3 * q) return {K::root_of_unity, 12};
  if (a2 == 4 * q) return {K::root_of_unity, positive ? 1U : 2U};
  return {K::infinite_order, 0};
}

std::uint64_t tate_multiplicity(const FrobeniusPair& fp, unsigned m,
                                unsigned j) {
  if (j < 1 || j > m || m > kMaxTatePower) {
    throw std::invalid_argument("tate_multiplicity needs 1 <= j <= m <= 8");
  }
  const AngleClass angle = classify(fp);
  std::uint64_t count = 0;
  // t factors contribute H^2 (eigenvalue q), w = 2j - 2t contribute H^1 and
  // the rest H^0. Among the H^1 factors, r pick alpha and w - r pick beta;
  // the product equals q^j iff u^(2r - w) = 1.
  const unsigned t_min = 2 * j > m ? 2 * j - m : 0;
  for (unsigned t = t_min; t <= j; ++t) {
    const unsigned w = 2 * j - 2 * t;
    const std::uint64_t placements = binomial(m, t) * binomial(m - t, w);
    std::uint64_t fixed = 0;
    for (unsigned r = 0; r <= w; ++r) {
      if (angle.kills(2 * static_cast<long>(r) - static_cast<long>(w))) {
        fixed += binomial(w, r);
      }
    }
    count += placements * fixed;
  }
  return count;
}

}  // namespace tatelab
