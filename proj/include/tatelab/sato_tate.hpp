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

// Equidistribution diagnostics for Frobenius angle sequences against the
// Sato-Tate measure mu = (2/pi) sin^2(theta) d theta on [0, pi].
//
// Every sum here is a left fold in record (prime) order, so reports are
// bit-reproducible for a given record list.

#ifndef TATELAB_SATO_TATE_HPP_
#define TATELAB_SATO_TATE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tatelab/curves.hpp"

namespace tatelab {

/// mu([0, theta]) = theta/pi - sin(2 theta)/(2 pi). Throws std::domain_error
/// outside [0, pi].
double haar_cdf(double theta);

/// Character of the m-th symmetric power of SU(2) at angle theta,
/// sum_{a=0}^{m} cos((m - 2a) theta) = sin((m+1) theta) / sin(theta).
double character(unsigned m, double theta);

/// C_k = binom(2k, k) / (k + 1), the 2k-th moment of 2cos(theta) under mu.
std::uint64_t catalan(unsigned k);

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of the
/// angles and haar_cdf. Throws std::invalid_argument on empty input.
double ks_statistic(std::span<const TraceRecord> records);

struct MomentRow {
  unsigned k;
  double empirical;  // (1/n) sum (2 cos theta_p)^{2k}
  std::uint64_t target;  // C_k
};

/// Rows k = 1..k_max; k_max <= 8.
std::vector<MomentRow> moment_report(std::span<const TraceRecord> records,
                                     unsigned k_max);

struct CharSum {
  unsigned m;
  double sum;    // S_m = sum over p <= X of chi_m(theta_p)
  double c_hat;  // S_m log X / X
  double mean;   // S_m / #{p <= X}
};

CharSum c_chi_estimate(std::span<const TraceRecord> records, unsigned m,
                       std::uint64_t bound);

struct STReport {
  std::uint64_t X;
  std::size_t n_primes;
  double ks_stat;
  std::vector<MomentRow> moments;
  std::vector<CharSum> char_sums;
};

STReport sato_tate_report(std::span<const TraceRecord> records,
                          std::uint64_t bound, unsigned k_max,
                          unsigned m_max);

/// CSV with columns kind,index,value,target,c_hat,mean: one "ks" row, one
/// "n_primes" row, one "moment" row per k, one "char" row per m.
std::string to_csv(const STReport& report);

nlohmann::json to_json(const STReport& report);

}  // namespace tatelab

#endif  // TATELAB_SATO_TATE_HPP_
