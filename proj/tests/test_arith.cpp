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

#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tatelab/arith.hpp"

using namespace tatelab;

TEST_CASE("legendre small cases agree with and without a table") {
  const PrimeCtx plain(7);
  const PrimeCtx tabled = build_qr_table(7);
  for (const PrimeCtx* ctx : {&plain, &tabled}) {
    CHECK(ctx->legendre(0) == 0);
    CHECK(ctx->legendre(4) == 1);
    CHECK(ctx->legendre(3) == -1);  // squares mod 7 are {1, 2, 4}
    CHECK(ctx->legendre(7) == 0);
    CHECK(ctx->legendre_signed(-3) == 1);  // -3 = 4 mod 7
  }
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<u64>{2, 3, 5, 7});
  CHECK(primes_up_to(2) == std::vector<u64>{2});
  CHECK(primes_up_to(1).empty());
  const auto primes = primes_up_to(100000);
  const auto reference = oracle::trial_division_primes(100000);
  CHECK(reference.size() == 9592);
  CHECK(primes == reference);
  CHECK(sweep_primes(13) == std::vector<u64>{5, 7, 11, 13});
}

TEST_CASE("build_qr_table residue sets") {
  const auto residues = [](u64 p) {
    const PrimeCtx ctx = build_qr_table(p);
    std::vector<u64> out;
    for (u64 x = 0; x < p; ++x) {
      if (ctx.table()->is_square(x)) out.push_back(x);
    }
    return out;
  };
  CHECK(residues(5) == std::vector<u64>{1, 4});
  CHECK(residues(7) == std::vector<u64>{1, 2, 4});
  CHECK_THROWS_AS(build_qr_table(4), std::invalid_argument);
  CHECK_THROWS_AS(build_qr_table(3), std::invalid_argument);
  CHECK_THROWS_AS(PrimeCtx(2), std::invalid_argument);
}

TEST_CASE("table and Euler criterion agree; character is balanced") {
  for (u64 p : sweep_primes(1500)) {
    const PrimeCtx ctx = build_qr_table(p);
    REQUIRE(ctx.table()->count() == (p - 1) / 2);
    long total = 0;
    for (u64 x = 1; x < p; ++x) {
      const int fast = ctx.legendre(x);
      REQUIRE(fast == legendre_euler(x, p));
      total += fast;
    }
    CHECK(total == 0);
  }
}

TEST_CASE("legendre is multiplicative on random samples") {
  std::mt19937_64 rng(7);
  const std::vector<u64> primes = sweep_primes(20000);
  for (int trial = 0; trial < 2000; ++trial) {
    const u64 p = primes[rng() % primes.size()];
    const PrimeCtx ctx = build_qr_table(p);
    const u64 x = 1 + rng() % (p - 1);
    const u64 y = 1 + rng() % (p - 1);
    REQUIRE(ctx.legendre(mulmod(x, y, p)) == ctx.legendre(x) * ctx.legendre(y));
  }
}

TEST_CASE("is_prime against trial division and at 64-bit scale") {
  const auto reference = oracle::trial_division_primes(20000);
  std::size_t k = 0;
  for (u64 n = 0; n <= 20000; ++n) {
    const bool expected = k < reference.size() && reference[k] == n;
    if (expected) ++k;
    REQUIRE(is_prime(n) == expected);
  }
  CHECK(is_prime((u64{1} << 61) - 1));
  CHECK_FALSE(is_prime(u64{3215031751}));  // strong pseudoprime to 2,3,5,7
  CHECK(powmod(3, 0, 7) == 1);
  CHECK(binomial(12, 6) == 924);
  CHECK(binomial(3, 5) == 0);
}
