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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tatelab/sato_tate.hpp"

using namespace tatelab;
using std::numbers::pi;

namespace {

double st_density(double t) { return 2.0 / pi * std::sin(t) * std::sin(t); }

TraceRecord at_angle(u64 p, double theta) { return {p, 0, theta}; }

// Inverse of haar_cdf by bisection.
double st_quantile(double u) {
  double lo = 0.0;
  double hi = pi;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (haar_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("haar_cdf values and shape") {
  CHECK(haar_cdf(pi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(haar_cdf(pi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(haar_cdf(0.0) == 0.0);
  // quadrature of the density over [0, pi/3]
  const double quad = oracle::simpson(st_density, 0.0, pi / 3);
  CHECK(quad == doctest::Approx(0.19550110947788).epsilon(1e-12));
  CHECK(haar_cdf(pi / 3) == doctest::Approx(quad).epsilon(1e-12));
  double prev = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double v = haar_cdf(pi * k / 1000.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(haar_cdf(-0.1), std::domain_error);
  CHECK_THROWS_AS(haar_cdf(4.0), std::domain_error);
}

TEST_CASE("character values, limits and the sine-ratio form") {
  for (double t : {0.0, 0.3, 1.0, 2.5, pi}) CHECK(character(0, t) == 1.0);
  for (double t : {0.3, 1.0, 2.5}) {
    CHECK(character(1, t) == doctest::Approx(2 * std::cos(t)).epsilon(1e-14));
  }
  CHECK(character(2, pi / 2) == doctest::Approx(-1.0).epsilon(1e-14));
  for (unsigned m = 0; m <= 12; ++m) {
    CHECK(character(m, 0.0) == doctest::Approx(m + 1.0));
    CHECK(character(m, pi) == doctest::Approx((m % 2 ? -1.0 : 1.0) * (m + 1.0)));
    for (int k = 1; k < 200; ++k) {
      const double t = pi * k / 200.0;
      const double ratio = std::sin((m + 1) * t) / std::sin(t);
      REQUIRE(std::abs(character(m, t) - ratio) < 1e-12);
    }
  }
}

TEST_CASE("Clebsch-Gordan recursion and orthogonality against mu") {
  for (unsigned m = 1; m <= 15; ++m) {
    for (int k = 0; k <= 300; ++k) {
      const double t = pi * k / 300.0;
      REQUIRE(std::abs(character(1, t) * character(m, t) -
                       character(m + 1, t) - character(m - 1, t)) < 1e-10);
    }
  }
  for (unsigned m = 0; m <= 10; ++m) {
    const double integral = oracle::simpson(
        [m](double t) { return character(m, t) * st_density(t); }, 0.0, pi);
    CHECK(std::abs(integral - (m == 0 ? 1.0 : 0.0)) < 1e-8);
  }
}

TEST_CASE("ks_statistic") {
  const std::vector<TraceRecord> one{at_angle(5, pi / 2)};
  CHECK(ks_statistic(one) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(ks_statistic(std::vector<TraceRecord>{}), std::invalid_argument);

  const int n = 500;
  std::vector<TraceRecord> quantiles;
  for (int i = 1; i <= n; ++i) {
    quantiles.push_back(at_angle(5, st_quantile(double(i) / (n + 1))));
  }
  CHECK(ks_statistic(quantiles) <= 1.0 / (n + 1) + 1e-9);

  std::mt19937_64 rng(3);
  std::vector<TraceRecord> random;
  for (int i = 0; i < 300; ++i) {
    random.push_back(at_angle(5, pi * (rng() >> 11) * 0x1.0p-53));
  }
  const double d = ks_statistic(random);
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
  std::shuffle(random.begin(), random.end(), rng);
  CHECK(ks_statistic(random) == d);
  std::reverse(random.begin(), random.end());
  CHECK(ks_statistic(random) == d);
}

TEST_CASE("moments: Catalan targets and controls") {
  for (unsigned k = 1; k <= 8; ++k) {
    const double quad = oracle::simpson(
        [k](double t) { return std::pow(2 * std::cos(t), 2.0 * k) * st_density(t); },
        0.0, pi);
    CHECK(quad == doctest::Approx(double(catalan(k))).epsilon(1e-9));
  }
  CHECK(catalan(1) == 1);
  CHECK(catalan(2) == 2);
  CHECK(catalan(3) == 5);
  CHECK(catalan(8) == 1430);

  // CM mixture 1/2 delta_{pi/2} + 1/2 uniform: the 4th moment of 2cos is 3.
  const double cm_m4 =
      0.5 * 0.0 +
      0.5 * oracle::simpson([](double t) { return std::pow(2 * std::cos(t), 4) / pi; },
                            0.0, pi);
  CHECK(cm_m4 == doctest::Approx(3.0).epsilon(1e-10));

  const std::vector<TraceRecord> flat(10, at_angle(5, pi / 2));
  for (const MomentRow& row : moment_report(flat, 8)) {
    CHECK(std::abs(row.empirical) < 1e-28);
  }
  CHECK_THROWS_AS(moment_report(flat, 9), std::invalid_argument);
}

TEST_CASE("c_chi_estimate partial sums") {
  const std::vector<TraceRecord> records{at_angle(5, pi / 2), at_angle(7, pi / 3),
                                         at_angle(11, 0.0)};
  const CharSum full = c_chi_estimate(records, 1, 11);
  const double s1 = 2 * std::cos(pi / 2) + 2 * std::cos(pi / 3) + 2.0;
  CHECK(full.sum == doctest::Approx(s1));
  CHECK(full.c_hat == doctest::Approx(s1 * std::log(11.0) / 11.0));
  CHECK(full.mean == doctest::Approx(s1 / 3));
  const CharSum cut = c_chi_estimate(records, 1, 8);
  CHECK(cut.sum == doctest::Approx(2 * std::cos(pi / 2) + 2 * std::cos(pi / 3)));
  CHECK(c_chi_estimate(records, 4, 11).sum == c_chi_estimate(records, 4, 11).sum);
  CHECK_THROWS_AS(c_chi_estimate(records, 0, 11), std::invalid_argument);
}

TEST_CASE("STReport serialization") {
  const auto records = trace_sequence(CurveQ(1, 1), 2000);
  const STReport report = sato_tate_report(records, 2000, 3, 4);
  CHECK(report.n_primes == records.size());
  CHECK(report.moments.size() == 3);
  CHECK(report.char_sums.size() == 4);
  for (const MomentRow& row : report.moments) {
    CHECK(std::isfinite(row.empirical));
    CHECK(row.empirical <= std::pow(4.0, row.k));
  }
  const std::string csv = to_csv(report);
  CHECK(csv.rfind("kind,index,value,target,c_hat,mean\nks,0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 + 3 + 4);
  const nlohmann::json j = to_json(report);
  CHECK(j["n_primes"] == records.size());
  CHECK(j["moments"][1]["target"] == 2);
}
