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

// Finite-field Tate bookkeeping for E^m over F_q: how often q^j occurs among
// the Frobenius eigenvalues on H^{2j}, which by semisimplicity is both the
// dimension of the Tate space and the pole order of zeta(E^m, s) at s = j.

#ifndef TATELAB_TATE_FF_HPP_
#define TATELAB_TATE_FF_HPP_

#include <cstdint>
#include <string>

#include "tatelab/curves.hpp"

namespace tatelab {

/// Angle of u = alpha / sqrt(q): either of infinite multiplicative order or a
/// root of unity of order d in {1, 2, 3, 4, 6, 8, 12}.
struct AngleClass {
  enum class Kind { infinite_order, root_of_unity };
  Kind kind;
  unsigned order;  // d; 0 for infinite_order

  bool is_torsion() const { return kind == Kind::root_of_unity; }
  /// Whether u^k = 1.
  bool kills(long k) const {
    if (kind == Kind::infinite_order) return k == 0;
    return k % static_cast<long>(order) == 0;
  }
  std::string to_string() const;

  friend bool operator==(const AngleClass&, const AngleClass&) = default;
};

/// Decided by the integer test a^2 in {0, q, 2q, 3q, 4q} and the sign of a.
AngleClass classify(const FrobeniusPair& fp);

inline constexpr unsigned kMaxTatePower = 8;

/// Number of Kunneth eigenvalues on H^{2j}(E^m) equal to q^j.
/// Requires 1 <= j <= m <= 8, else std::invalid_argument.
std::uint64_t tate_multiplicity(const FrobeniusPair& fp, unsigned m,
                                unsigned j);

/// Order of the pole of zeta(E^m / F_q, s) at s = j.
inline std::uint64_t zeta_pole_order(const FrobeniusPair& fp, unsigned m,
                                     unsigned j) {
  return tate_multiplicity(fp, m, j);
}

}  // namespace tatelab

#endif  // TATELAB_TATE_FF_HPP_
