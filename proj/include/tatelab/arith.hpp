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

// Prime-field arithmetic: modular products, primality, sieving and the
// quadratic character used by every point count in the library.

#ifndef TATELAB_ARITH_HPP_
#define TATELAB_ARITH_HPP_

#include <cstdint>
#include <memory>
#include <vector>

namespace tatelab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// a*b mod m with a 128-bit intermediate; requires m < 2^63.
inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Reduces a signed integer into [0, m).
inline u64 reduce_signed(i64 x, u64 m) {
  const i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Binomial coefficient; 0 when k > n. Exact while the result fits.
u64 binomial(unsigned n, unsigned k);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// All primes <= bound in increasing order. Empty when bound < 2.
std::vector<u64> primes_up_to(u64 bound);

/// Primes p with 3 < p <= bound; the range every sweep in the library uses.
std::vector<u64> sweep_primes(u64 bound);

/// Legendre symbol by Euler's criterion, x^((p-1)/2) mod p.
int legendre_euler(u64 x, u64 p);

/// Bitset of nonzero squares modulo p; bit x set iff x is a nonzero square.
class QrTable {
 public:
  explicit QrTable(u64 p);

  bool is_square(u64 x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  u64 count() const;

 private:
  std::vector<u64> words_;
};

/// Immutable prime-modulus context. Copies share the residue table.
class PrimeCtx {
 public:
  /// Context without a residue table; throws std::invalid_argument unless
  /// p is a prime greater than 3.
  explicit PrimeCtx(u64 p);

  u64 p() const { return p_; }
  bool has_table() const { return table_ != nullptr; }
  const QrTable* table() const { return table_.get(); }

  /// Quadratic character of x mod p: 0, 1 or -1.
  int legendre(u64 x) const {
    x %= p_;
    if (x == 0) return 0;
    if (table_) return table_->is_square(x) ? 1 : -1;
    return legendre_euler(x, p_);
  }

  int legendre_signed(i64 x) const { return legendre(reduce_signed(x, p_)); }

 private:
  friend PrimeCtx build_qr_table(u64 p);

  u64 p_;
  std::shared_ptr<const QrTable> table_;
};

/// Context carrying a residue table built by squaring 1..(p-1)/2.
PrimeCtx build_qr_table(u64 p);

}  // namespace tatelab

#endif  // TATELAB_ARITH_HPP_
