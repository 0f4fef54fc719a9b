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

// Elliptic curves y^2 = x^3 + Ax + B over Q and over prime fields: reduction,
// traces of Frobenius by character sums, and the Frobenius eigenvalue data
// (a, q) with its extension-field recurrence.

#ifndef TATELAB_CURVES_HPP_
#define TATELAB_CURVES_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tatelab/arith.hpp"

namespace tatelab {

using BigInt = boost::multiprecision::cpp_int;

/// Short Weierstrass curve over Q with integer coefficients.
class CurveQ {
 public:
  /// Throws std::invalid_argument when the discriminant vanishes.
  CurveQ(i64 a, i64 b);

  i64 A() const { return a_; }
  i64 B() const { return b_; }

  /// -16 (4A^3 + 27B^2).
  BigInt discriminant() const;

  /// True iff p divides the discriminant (p > 3).
  bool is_bad_prime(u64 p) const;

  friend bool operator==(const CurveQ&, const CurveQ&) = default;

 private:
  i64 a_;
  i64 b_;
};

enum class Reduction { good, bad };

struct ReducedCurve {
  Reduction tag;
  u64 p;
  u64 A;  // meaningful only when tag == good
  u64 B;
};

/// Reduction modulo p. Throws std::invalid_argument for p <= 3.
ReducedCurve reduce(const CurveQ& curve, u64 p);

/// Trace of Frobenius a_p = -sum_x (x^3 + Ax + B | p) for a nonsingular
/// reduced curve. Builds a residue table if ctx lacks one. Throws
/// std::invalid_argument when 4A^3 + 27B^2 = 0 mod p.
i64 trace_fp(u64 A, u64 B, const PrimeCtx& ctx);

/// Raw character sum sum_{x in F_p} (x^3 + Ax + B | p), singular or not.
i64 cubic_character_sum(u64 A, u64 B, u64 p, const QrTable& table);

struct TraceRecord {
  u64 p;
  i64 a_p;
  double theta_p;  // arccos(a_p / (2 sqrt p)) in [0, pi]

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Builds a record; throws std::domain_error on a Hasse-bound violation.
TraceRecord make_trace_record(u64 p, i64 a_p);

/// Exact Hasse test a^2 <= 4p.
bool within_hasse(u64 p, i64 a_p);

/// One record per good prime 3 < p <= bound, increasing in p.
/// `workers` = 0 picks the hardware concurrency.
std::vector<TraceRecord> trace_sequence(const CurveQ& curve, u64 bound,
                                        unsigned workers = 0);

/// Same, restricted to the given ascending prime list.
std::vector<TraceRecord> trace_records_for(const CurveQ& curve,
                                           const std::vector<u64>& primes,
                                           unsigned workers = 0);

/// Frobenius data over F_q, q = base^degree: the eigenvalues are the roots
/// of x^2 - a x + q.
struct FrobeniusPair {
  BigInt a;
  BigInt q;
  u64 base;
  unsigned degree;

  /// Validates a^2 <= 4q and q = base^degree; throws std::domain_error.
  static FrobeniusPair make(BigInt a, u64 base, unsigned degree);
  static FrobeniusPair from_trace(i64 a, u64 p) { return make(a, p, 1); }

  /// #E(F_q) = q + 1 - a.
  BigInt point_count() const { return q + 1 - a; }

  friend bool operator==(const FrobeniusPair&, const FrobeniusPair&) = default;
};

/// (alpha^n + beta^n, q^n) by t_k = a t_{k-1} - q t_{k-2}. Uses 64-bit
/// arithmetic until a step would overflow, then finishes in BigInt.
FrobeniusPair extension_trace(const FrobeniusPair& fp, unsigned n);

/// Coefficients {1, -a, q} of P_1(t) = 1 - a t + q t^2, low to high.
std::array<BigInt, 3> zeta_numerator(const FrobeniusPair& fp);

/// zeta(E/F_q, s) = P_1(q^-s) / ((1 - q^-s)(1 - q^{1-s})) at real s.
double zeta_value(const FrobeniusPair& fp, double s);

}  // namespace tatelab

#endif  // TATELAB_CURVES_HPP_
