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

#include "tatelab/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tatelab {

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u64 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                    29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 bound) {
  std::vector<u64> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<u64> sweep_primes(u64 bound) {
  std::vector<u64> primes = primes_up_to(bound);
  std::erase_if(primes, [](u64 p) { return p <= 3; });
  return primes;
}

int legendre_euler(u64 x, u64 p) {
  x %= p;
  if (x == 0) return 0;
  return powmod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

QrTable::QrTable(u64 p) : words_((p + 63) / 64, 0) {
  // (p-x)^2 = x^2, so the first half of the residues hits every square once.
  u64 sq = 0;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) {
    sq += 2 * x - 1;  // x^2 = (x-1)^2 + 2x - 1
    if (sq >= p) sq %= p;
    words_[sq >> 6] |= u64{1} << (sq & 63);
  }
}

u64 QrTable::count() const {
  u64 total = 0;
  for (u64 w : words_) total += static_cast<u64>(__builtin_popcountll(w));
  return total;
}

PrimeCtx::PrimeCtx(u64 p) : p_(p) {
  if (p <= 3 || p >= (u64{1} << 63) || !is_prime(p)) {
    throw std::invalid_argument("modulus must be a prime > 3, got " +
                                std::to_string(p));
  }
}

PrimeCtx build_qr_table(u64 p) {
  PrimeCtx ctx(p);
  ctx.table_ = std::make_shared<const QrTable>(p);
  return ctx;
}

}  // namespace tatelab
