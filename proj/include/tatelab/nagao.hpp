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

// Nagao's rank heuristic for elliptic surfaces y^2 = x^3 + A(T)x + B(T)
// over Q(T): fibral trace averages
//
//   A_p = (1/p) sum_{t=0}^{p-1} a_p(E_t),  a_p(E_t) = p + 1 - #E_t(F_p),
//
// the Tauberian sum -(1/X) sum_{p<=X} A_p log p and a residue proxy for
// -Res_{s=1} sum_p A_p log p / p^s. Every fiber is counted, singular ones
// included, as projective points on the Weierstrass cubic.

#ifndef TATELAB_NAGAO_HPP_
#define TATELAB_NAGAO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tatelab/arith.hpp"
#include "tatelab/curves.hpp"

namespace tatelab {

/// Integer polynomial, coefficients low to high.
using IntPoly = std::vector<i64>;

/// Parses "1,2,0,-1" into {1, 2, 0, -1}. Throws std::invalid_argument.
IntPoly parse_poly(const std::string& text);
std::string format_poly(const IntPoly& poly);

class SurfaceQT {
 public:
  /// Throws std::invalid_argument when 4A^3 + 27B^2 is the zero polynomial.
  SurfaceQT(IntPoly a, IntPoly b);

  const IntPoly& A() const { return a_; }
  const IntPoly& B() const { return b_; }

  /// Coefficients of 4A(T)^3 + 27B(T)^2.
  std::vector<BigInt> discriminant_poly() const;

  /// True when j(T) is constant (A = 0, B = 0, or A^3 proportional to B^2).
  bool has_constant_j() const;

  /// Coefficients reduced into [0, p).
  std::vector<u64> A_mod(u64 p) const;
  std::vector<u64> B_mod(u64 p) const;

 private:
  IntPoly a_;
  IntPoly b_;
};

/// B(T) := Qy(T)^2 - Px(T)^3 - A(T) Px(T), so (Px, Qy) is a section.
/// Throws std::invalid_argument when the result is degenerate or a
/// coefficient leaves the 64-bit range.
SurfaceQT make_section_surface(const IntPoly& a, const IntPoly& px,
                               const IntPoly& qy);

/// A_p = numerator / p, kept unreduced.
struct FibralAverage {
  u64 p;
  i64 numerator;  // sum_t a_p(E_t)
  u64 denominator;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const FibralAverage&, const FibralAverage&) = default;
};

/// Builds a residue table when ctx has none.
FibralAverage fibral_average(const SurfaceQT& surface, const PrimeCtx& ctx);

struct NagaoRow {
  FibralAverage average;
  double partial_tauberian;  // -(1/p) sum_{p' <= p} A_p' log p'
};

struct ResiduePoint {
  double delta;
  double estimate;  // delta * D(1 + delta)
};

struct NagaoReport {
  u64 X;
  std::vector<NagaoRow> rows;
  double tauberian;  // -(1/X) sum_{p <= X} A_p log p
  std::vector<ResiduePoint> residue_grid;
};

struct NagaoOptions {
  unsigned workers = 0;
  std::vector<u64> excluded;  // primes skipped in every sum
};

/// Primes 3 < p <= X (minus exclusions); averages computed in parallel and
/// reduced in prime order.
NagaoReport tauberian_sum(const SurfaceQT& surface, u64 bound,
                          const NagaoOptions& options = {});

/// delta * D(1 + delta) with D(s) = -sum A_p log p p^-s over the averages.
/// Throws std::invalid_argument for delta <= 0.
std::vector<ResiduePoint> residue_from_averages(
    std::span<const FibralAverage> averages, std::span<const double> deltas);

std::vector<ResiduePoint> residue_estimate(const SurfaceQT& surface,
                                           u64 bound,
                                           std::span<const double> deltas,
                                           const NagaoOptions& options = {});

}  // namespace tatelab

#endif  // TATELAB_NAGAO_HPP_
