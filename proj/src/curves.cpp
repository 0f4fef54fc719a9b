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

#include "tatelab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "tatelab/parallel.hpp"

namespace tatelab {

CurveQ::CurveQ(i64 a, i64 b) : a_(a), b_(b) {
  if (discriminant() == 0) {
    throw std::invalid_argument("singular curve: 4A^3 + 27B^2 = 0 for A=" +
                                std::to_string(a) + " B=" + std::to_string(b));
  }
}

BigInt CurveQ::discriminant() const {
  const BigInt a = a_;
  const BigInt b = b_;
  return -16 * (4 * a * a * a + 27 * b * b);
}

bool CurveQ::is_bad_prime(u64 p) const {
  const u64 a = reduce_signed(a_, p);
  const u64 b = reduce_signed(b_, p);
  const u64 a3 = mulmod(mulmod(a, a, p), a, p);
  const u64 d = (mulmod(4 % p, a3, p) + mulmod(27 % p, mulmod(b, b, p), p)) % p;
  return d == 0;
}

ReducedCurve reduce(const CurveQ& curve, u64 p) {
  if (p <= 3) {
    throw std::invalid_argument("reduction at p <= 3 is not supported");
  }
  if (curve.is_bad_prime(p)) return {Reduction::bad, p, 0, 0};
  return {Reduction::good, p, reduce_signed(curve.A(), p),
          reduce_signed(curve.B(), p)};
}

i64 cubic_character_sum(u64 A, u64 B, u64 p, const QrTable& table) {
  // f(x) = x^3 + Ax + B stepped by forward differences:
  // df = 3x^2 + 3x + 1 + A, d2f = 6x + 6, d3f = 6.
  u64 f = B % p;
  u64 d1 = (1 + A % p) % p;
  u64 d2 = 6 % p;
  const u64 d3 = 6 % p;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    sum += f == 0 ? 0 : (table.is_square(f) ? 1 : -1);
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return sum;
}

i64 trace_fp(u64 A, u64 B, const PrimeCtx& ctx) {
  const u64 p = ctx.p();
  A %= p;
  B %= p;
  const u64 disc = (mulmod(4, mulmod(mulmod(A, A, p), A, p), p) +
                    mulmod(27, mulmod(B, B, p), p)) %
                   p;
  if (disc == 0) {
    throw std::invalid_argument("singular reduction mod " + std::to_string(p));
  }
  if (ctx.has_table()) return -cubic_character_sum(A, B, p, *ctx.table());
  const QrTable table(p);
  return -cubic_character_sum(A, B, p, table);
}

bool within_hasse(u64 p, i64 a_p) {
  const auto a = static_cast<unsigned __int128>(a_p < 0 ? -a_p : a_p);
  return a * a <= static_cast<unsigned __int128>(4) * p;
}

TraceRecord make_trace_record(u64 p, i64 a_p) {
  if (!within_hasse(p, a_p)) {
    throw std::domain_error("Hasse bound violated: a_" + std::to_string(p) +
                            " = " + std::to_string(a_p));
  }
  const double c = static_cast<double>(a_p) /
                   (2.0 * std::sqrt(static_cast<double>(p)));
  return {p, a_p, std::acos(std::clamp(c, -1.0, 1.0))};
}

std::vector<TraceRecord> trace_records_for(const CurveQ& curve,
                                           const std::vector<u64>& primes,
                                           unsigned workers) {
  std::vector<u64> good;
  good.reserve(primes.size());
  for (u64 p : primes) {
    if (p > 3 && !curve.is_bad_prime(p)) good.push_back(p);
  }
  return parallel_map(std::span<const u64>(good), workers, [&](u64 p) {
    const ReducedCurve r = reduce(curve, p);
    const QrTable table(p);
    return make_trace_record(p, -cubic_character_sum(r.A, r.B, p, table));
  });
}

std::vector<TraceRecord> trace_sequence(const CurveQ& curve, u64 bound,
                                        unsigned workers) {
  return trace_records_for(curve, sweep_primes(bound), workers);
}

FrobeniusPair FrobeniusPair::make(BigInt a, u64 base, unsigned degree) {
  if (degree == 0 || !is_prime(base)) {
    throw std::domain_error("Frobenius pair needs a prime base and degree >= 1");
  }
  BigInt q = boost::multiprecision::pow(BigInt(base), degree);
  if (a * a > 4 * q) {
    throw std::domain_error("Hasse bound violated: a^2 > 4q");
  }
  return {std::move(a), std::move(q), base, degree};
}

namespace {

bool checked_step(i64 a, i64 q, i64 t1, i64 t0, i64& out) {
  i64 x;
  i64 y;
  if (__builtin_mul_overflow(a, t1, &x)) return false;
  if (__builtin_mul_overflow(q, t0, &y)) return false;
  return !__builtin_sub_overflow(x, y, &out);
}

}  // namespace

FrobeniusPair extension_trace(const FrobeniusPair& fp, unsigned n) {
  if (n == 0) throw std::invalid_argument("extension degree must be >= 1");
  // t_0 = 2, t_1 = a
  unsigned k = 1;
  bool fast = fp.a >= std::numeric_limits<i64>::min() &&
              fp.a <= std::numeric_limits<i64>::max() &&
              fp.q <= std::numeric_limits<i64>::max();
  BigInt big_prev = 2;
  BigInt big_cur = fp.a;
  if (fast) {
    const i64 a = static_cast<i64>(fp.a);
    const i64 q = static_cast<i64>(fp.q);
    i64 prev = 2;
    i64 cur = a;
    while (k < n) {
      i64 next;
      if (!checked_step(a, q, cur, prev, next)) break;
      prev = cur;
      cur = next;
      ++k;
    }
    big_prev = prev;
    big_cur = cur;
  }
  while (k < n) {
    BigInt next = fp.a * big_cur - fp.q * big_prev;
    big_prev = std::move(big_cur);
    big_cur = std::move(next);
    ++k;
  }
  return FrobeniusPair::make(std::move(big_cur), fp.base, fp.degree * n);
}

std::array<BigInt, 3> zeta_numerator(const FrobeniusPair& fp) {
  return {BigInt(1), BigInt(-fp.a), fp.q};
}

double zeta_value(const FrobeniusPair& fp, double s) {
  const double q = static_cast<double>(fp.q);
  const double a = static_cast<double>(fp.a);
  const double t = std::pow(q, -s);
  const double num = 1.0 - a * t + q * t * t;
  const double den = (1.0 - t) * (1.0 - q * t);
  if (den == 0.0) {
    throw std::domain_error("zeta(E, s) has a pole at s = " + std::to_string(s));
  }
  return num / den;
}

}  // namespace tatelab
