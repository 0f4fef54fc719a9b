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

#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tatelab/nagao.hpp"

using namespace tatelab;

TEST_CASE("parse_poly and format_poly") {
  CHECK(parse_poly("1,2,0,-1") == IntPoly{1, 2, 0, -1});
  CHECK(parse_poly(" 3 , +4") == IntPoly{3, 4});
  CHECK(parse_poly("0") == IntPoly{0});
  CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("1.5"), std::invalid_argument);
  CHECK(format_poly({1, 2, 0, -1}) == "1,2,0,-1");
  CHECK(format_poly({}) == "0");
}

TEST_CASE("surface construction") {
  const SurfaceQT s({1, 0, 0}, {1, 2});
  CHECK(s.A() == IntPoly{1});
  CHECK(s.B() == IntPoly{1, 2});
  CHECK_THROWS_AS(SurfaceQT({-3}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceQT({0, 0, -3}, {0, 0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceQT({}, {}), std::invalid_argument);

  const std::vector<BigInt> disc = SurfaceQT({0, 1}, {1}).discriminant_poly();
  REQUIRE(disc.size() == 4);
  CHECK(disc[0] == 27);
  CHECK(disc[3] == 4);

  CHECK(SurfaceQT({1}, {1}).has_constant_j());
  CHECK(SurfaceQT({}, {0, 1}).has_constant_j());
  CHECK(SurfaceQT({0, 0, 3}, {0, 0, 0, 2}).has_constant_j());
  CHECK_FALSE(SurfaceQT({0, 1}, {1}).has_constant_j());
  CHECK_FALSE(SurfaceQT({1}, {0, 1}).has_constant_j());
}

TEST_CASE("section surfaces") {
  const SurfaceQT s = make_section_surface({0, 1}, {0, 1}, {1});
  CHECK(s.B() == IntPoly{1, 0, -1, -1});
  CHECK(make_section_surface({0, 1}, {0, 1}, {1, 1}).B() == IntPoly{1, 2, 0, -1});
  CHECK(make_section_surface({}, {}, {1}).B() == IntPoly{1});
  CHECK(make_section_surface({}, {0, 1}, {}).B() == IntPoly{0, 0, 0, -1});
  // (Px(t), Qy(t)) lies on every fiber.
  const SurfaceQT r = make_section_surface({2, 0, 1}, {1, 3}, {0, 1, 1});
  for (i64 t = -5; t <= 5; ++t) {
    const auto eval = [t](const IntPoly& f) {
      i64 v = 0;
      for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * t + *it;
      return v;
    };
    const i64 x = 1 + 3 * t;
    const i64 y = t + t * t;
    CHECK(y * y == x * x * x + eval(r.A()) * x + eval(r.B()));
  }
  // A = -3, P = 1, Q = 0 gives B = 2 and a zero discriminant.
  CHECK_THROWS_AS(make_section_surface({-3}, {1}, {0}), std::invalid_argument);
}

TEST_CASE("constant surfaces reproduce p a_p") {
  const CurveQ curve(1, 1);
  const SurfaceQT constant({1}, {1});
  for (u64 p : sweep_primes(300)) {
    if (curve.is_bad_prime(p)) continue;
    const FibralAverage avg = fibral_average(constant, PrimeCtx(p));
    CHECK(avg.p == p);
    CHECK(avg.denominator == p);
    CHECK(avg.numerator == static_cast<i64>(p) * trace_fp(1, 1, PrimeCtx(p)));
  }
}

TEST_CASE("A = 0, B = T averages vanish for p = 2 mod 3") {
  const SurfaceQT s({}, {0, 1});
  for (u64 p : sweep_primes(400)) {
    if (p % 3 != 2) continue;
    CHECK(fibral_average(s, PrimeCtx(p)).numerator == 0);
  }
}

TEST_CASE("fibral averages match the naive triple loop") {
  std::mt19937_64 rng(5);
  const auto coeff = [&] { return static_cast<i64>(rng() % 7) - 3; };
  int surfaces = 0;
  while (surfaces < 12) {
    IntPoly a{coeff(), coeff()};
    IntPoly b{coeff(), coeff(), coeff(), coeff()};
    std::optional<SurfaceQT> s;
    try {
      s.emplace(a, b);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++surfaces;
    for (u64 p : sweep_primes(31)) {
      CHECK(fibral_average(*s, PrimeCtx(p)).numerator ==
            oracle::naive_fibral_numerator(s->A(), s->B(), p));
    }
  }
}

TEST_CASE("fibral averages are bounded") {
  const SurfaceQT s = make_section_surface({0, 1}, {0, 1}, {1});
  for (u64 p : sweep_primes(600)) {
    const double v = fibral_average(s, PrimeCtx(p)).value();
    CHECK(std::abs(v) <= 2.0 * std::sqrt(double(p)) + 2.0);
  }
}

TEST_CASE("tauberian sums") {
  const SurfaceQT split({1}, {1});
  const std::vector<TraceRecord> records = trace_sequence(CurveQ(1, 1), 1000);
  const NagaoReport r = tauberian_sum(split, 1000, {0, {31}});
  REQUIRE(r.rows.size() == records.size());
  double expect = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(r.rows[k].average.p == records[k].p);
    CHECK(r.rows[k].average.value() == double(records[k].a_p));
    expect += double(records[k].a_p) * std::log(double(records[k].p));
    CHECK(r.rows[k].partial_tauberian ==
          doctest::Approx(-expect / double(records[k].p)).epsilon(1e-12));
  }
  CHECK(r.X == 1000);
  CHECK(r.tauberian == doctest::Approx(-expect / 1000.0).epsilon(1e-12));

  const NagaoReport zero = tauberian_sum(SurfaceQT({}, {0, 1}), 200);
  for (const NagaoRow& row : zero.rows) {
    if (row.average.p % 3 == 2) CHECK(row.average.numerator == 0);
  }

  CHECK(tauberian_sum(split, 5).rows.size() == 1);
  CHECK_THROWS_AS(tauberian_sum(split, 4), std::invalid_argument);
}

TEST_CASE("tauberian sums do not depend on the worker count") {
  const SurfaceQT s = make_section_surface({0, 1}, {0, 1}, {1});
  const NagaoReport one = tauberian_sum(s, 400, {1, {}});
  for (unsigned w : {2u, 4u, 8u}) {
    const NagaoReport many = tauberian_sum(s, 400, {w, {}});
    REQUIRE(many.rows.size() == one.rows.size());
    for (std::size_t k = 0; k < one.rows.size(); ++k) {
      CHECK(many.rows[k].average == one.rows[k].average);
      CHECK(many.rows[k].partial_tauberian == one.rows[k].partial_tauberian);
    }
    CHECK(many.tauberian == one.tauberian);
  }
}

TEST_CASE("residue estimates") {
  const std::vector<FibralAverage> avgs{{5, -5, 5}, {7, 14, 7}};
  const std::vector<double> deltas{0.5, 1.0};
  const auto grid = residue_from_averages(avgs, deltas);
  REQUIRE(grid.size() == 2);
  for (const ResiduePoint& pt : grid) {
    const double d = std::log(5.0) * std::pow(5.0, -1.0 - pt.delta) -
                     2.0 * std::log(7.0) * std::pow(7.0, -1.0 - pt.delta);
    CHECK(pt.estimate == doctest::Approx(pt.delta * d).epsilon(1e-14));
  }
  CHECK(residue_from_averages({}, deltas)[0].estimate == 0.0);
  const std::vector<double> bad{0.1, 0.0};
  CHECK_THROWS_AS(residue_from_averages(avgs, bad), std::invalid_argument);
  CHECK_THROWS_AS(residue_estimate(SurfaceQT({1}, {1}), 50, bad),
                  std::invalid_argument);

  const SurfaceQT s = make_section_surface({0, 1}, {0, 1}, {1});
  const auto direct = residue_estimate(s, 300, deltas);
  std::vector<FibralAverage> collected;
  for (const NagaoRow& row : tauberian_sum(s, 300).rows) {
    collected.push_back(row.average);
  }
  const auto via = residue_from_averages(collected, deltas);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    CHECK(direct[k].estimate == via[k].estimate);
  }
}
