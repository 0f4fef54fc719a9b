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

#include "tatelab/sato_tate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tatelab/format.hpp"

namespace tatelab {

double haar_cdf(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::domain_error("haar_cdf: angle outside [0, pi]");
  }
  return theta / std::numbers::pi -
         std::sin(2.0 * theta) / (2.0 * std::numbers::pi);
}

double character(unsigned m, double theta) {
  // The cosine sum is regular at 0 and pi, where it gives m+1 and
  // (-1)^m (m+1) without a limit argument.
  double sum = 0.0;
  for (unsigned a = 0; a <= m; ++a) {
    sum += std::cos((static_cast<double>(m) - 2.0 * a) * theta);
  }
  return sum;
}

std::uint64_t catalan(unsigned k) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

double ks_statistic(std::span<const TraceRecord> records) {
  if (records.empty()) throw std::invalid_argument("ks_statistic: no records");
  std::vector<double> angles;
  angles.reserve(records.size());
  for (const TraceRecord& r : records) angles.push_back(r.theta_p);
  std::sort(angles.begin(), angles.end());
  const double n = static_cast<double>(angles.size());
  double d = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double f = haar_cdf(angles[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

std::vector<MomentRow> moment_report(std::span<const TraceRecord> records,
                                     unsigned k_max) {
  if (k_max > 8) throw std::invalid_argument("moment_report: k_max > 8");
  if (records.empty()) throw std::invalid_argument("moment_report: no records");
  std::vector<MomentRow> rows;
  for (unsigned k = 1; k <= k_max; ++k) {
    double sum = 0.0;
    for (const TraceRecord& r : records) {
      const double x = 2.0 * std::cos(r.theta_p);
      sum += std::pow(x * x, static_cast<double>(k));
    }
    rows.push_back({k, sum / static_cast<double>(records.size()), catalan(k)});
  }
  return rows;
}

CharSum c_chi_estimate(std::span<const TraceRecord> records, unsigned m,
                       std::uint64_t bound) {
  if (m < 1) throw std::invalid_argument("c_chi_estimate: m must be >= 1");
  double sum = 0.0;
  std::size_t count = 0;
  for (const TraceRecord& r : records) {
    if (r.p > bound) break;
    sum += character(m, r.theta_p);
    ++count;
  }
  const double x = static_cast<double>(bound);
  const double c_hat = bound > 1 ? sum * std::log(x) / x : 0.0;
  const double mean = count > 0 ? sum / static_cast<double>(count) : 0.0;
  return {m, sum, c_hat, mean};
}

STReport sato_tate_report(std::span<const TraceRecord> records,
                          std::uint64_t bound, unsigned k_max,
                          unsigned m_max) {
  STReport report{bound, records.size(), ks_statistic(records),
                  moment_report(records, k_max), {}};
  for (unsigned m = 1; m <= m_max; ++m) {
    report.char_sums.push_back(c_chi_estimate(records, m, bound));
  }
  return report;
}

std::string to_csv(const STReport& report) {
  std::ostringstream out;
  out << "kind,index,value,target,c_hat,mean\n";
  out << "ks,0," << fmt_real(report.ks_stat) << ",,,\n";
  out << "n_primes,0," << report.n_primes << ",,,\n";
  for (const MomentRow& row : report.moments) {
    out << "moment," << row.k << ',' << fmt_real(row.empirical) << ','
        << row.target << ",,\n";
  }
  for (const CharSum& c : report.char_sums) {
    out << "char," << c.m << ',' << fmt_real(c.sum) << ",0,"
        << fmt_real(c.c_hat) << ',' << fmt_real(c.mean) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const STReport& report) {
  nlohmann::json moments = nlohmann::json::array();
  for (const MomentRow& row : report.moments) {
    moments.push_back({{"k", row.k},
                       {"empirical", round12(row.empirical)},
                       {"target", row.target}});
  }
  nlohmann::json chars = nlohmann::json::array();
  for (const CharSum& c : report.char_sums) {
    chars.push_back({{"m", c.m},
                     {"sum", round12(c.sum)},
                     {"c_hat", round12(c.c_hat)},
                     {"mean", round12(c.mean)}});
  }
  return {{"X", report.X},
          {"n_primes", report.n_primes},
          {"ks_stat", round12(report.ks_stat)},
          {"moments", moments},
          {"char_sums", chars}};
}

}  // namespace tatelab
