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

#include "tatelab/nagao.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tatelab/parallel.hpp"

namespace tatelab {

namespace {

using BigPoly = std::vector<BigInt>;

void trim(BigPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigPoly to_big(const IntPoly& p) {
  BigPoly out(p.begin(), p.end());
  trim(out);
  return out;
}

BigPoly mul(const BigPoly& x, const BigPoly& y) {
  if (x.empty() || y.empty()) return {};
  BigPoly out(x.size() + y.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  trim(out);
  return out;
}

BigPoly add(const BigPoly& x, const BigPoly& y, int sign_y = 1) {
  BigPoly out(std::max(x.size(), y.size()), BigInt(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += sign_y * y[i];
  trim(out);
  return out;
}

BigPoly scale(const BigPoly& x, long c) {
  BigPoly out = x;
  for (BigInt& v : out) v *= c;
  trim(out);
  return out;
}

std::vector<u64> reduce_poly(const IntPoly& poly, u64 p) {
  std::vector<u64> out;
  out.reserve(poly.size());
  for (i64 c : poly) out.push_back(reduce_signed(c, p));
  return out;
}

u64 horner(const std::vector<u64>& coeffs, u64 t, u64 p) {
  u64 v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    v = mulmod(v, t, p) + *it;
    if (v >= p) v -= p;
  }
  return v;
}

}  // namespace

IntPoly parse_poly(const std::string& text) {
  IntPoly out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string_view field(text.data() + start, end - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    i64 value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() ||
        ptr != field.data() + field.size()) {
      throw std::invalid_argument("bad polynomial coefficient list: '" + text +
                                  "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

std::string format_poly(const IntPoly& poly) {
  if (poly.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(poly[i]);
  }
  return out;
}

SurfaceQT::SurfaceQT(IntPoly a, IntPoly b) : a_(std::move(a)), b_(std::move(b)) {
  trim(a_);
  trim(b_);
  if (discriminant_poly().empty()) {
    throw std::invalid_argument("degenerate surface: 4A(T)^3 + 27B(T)^2 = 0");
  }
}

std::vector<BigInt> SurfaceQT::discriminant_poly() const {
  const BigPoly a = to_big(a_);
  const BigPoly b = to_big(b_);
  return add(scale(mul(mul(a, a), a), 4), scale(mul(b, b), 27));
}

bool SurfaceQT::has_constant_j() const {
  if (a_.empty() || b_.empty()) return true;
  const BigPoly a = to_big(a_);
  const BigPoly b = to_big(b_);
  const BigPoly a3 = mul(mul(a, a), a);
  const BigPoly b2 = mul(b, b);
  const std::size_t n = std::max(a3.size(), b2.size());
  const auto at = [](const BigPoly& p, std::size_t i) {
    return i < p.size() ? p[i] : BigInt(0);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (at(a3, i) * at(b2, k) != at(a3, k) * at(b2, i)) return false;
    }
  }
  return true;
}

std::vector<u64> SurfaceQT::A_mod(u64 p) const { return reduce_poly(a_, p); }
std::vector<u64> SurfaceQT::B_mod(u64 p) const { return reduce_poly(b_, p); }

SurfaceQT make_section_surface(const IntPoly& a, const IntPoly& px,
                               const IntPoly& qy) {
  const BigPoly A = to_big(a);
  const BigPoly x = to_big(px);
  const BigPoly y = to_big(qy);
  const BigPoly b = add(add(mul(y, y), mul(mul(x, x), x), -1), mul(A, x), -1);
  IntPoly out;
  for (const BigInt& c : b) {
    if (c > std::numeric_limits<i64>::max() ||
        c < std::numeric_limits<i64>::min()) {
      throw std::invalid_argument("section surface coefficient overflows int64");
    }
    out.push_back(static_cast<i64>(c));
  }
  return SurfaceQT(a, std::move(out));
}

FibralAverage fibral_average(const SurfaceQT& surface, const PrimeCtx& ctx) {
  const u64 p = ctx.p();
  std::shared_ptr<const QrTable> owned;
  const QrTable* table = ctx.table();
  if (table == nullptr) {
    owned = std::make_shared<const QrTable>(p);
    table = owned.get();
  }
  std::vector<std::uint32_t> cubes(p);
  for (u64 x = 0; x < p; ++x) {
    cubes[x] = static_cast<std::uint32_t>(mulmod(mulmod(x, x, p), x, p));
  }
  const std::vector<u64> a_coeffs = surface.A_mod(p);
  const std::vector<u64> b_coeffs = surface.B_mod(p);

  // sum_t sum_x (x^3 + A(t)x + B(t) | p); each fiber contributes
  // a_p(E_t) = -(its character sum).
  i64 total = 0;
  for (u64 t = 0; t < p; ++t) {
    const u64 a = horner(a_coeffs, t, p);
    const u64 b = horner(b_coeffs, t, p);
    u64 ax = 0;
    i64 fiber = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 v = cubes[x] + ax;
      if (v >= p) v -= p;
      v += b;
      if (v >= p) v -= p;
      if (v != 0) fiber += table->is_square(v) ? 1 : -1;
      ax += a;
      if (ax >= p) ax -= p;
    }
    total -= fiber;
  }
  return {p, total, p};
}

namespace {

std::vector<u64> nagao_primes(u64 bound, const std::vector<u64>& excluded) {
  std::vector<u64> primes = sweep_primes(bound);
  std::erase_if(primes, [&](u64 p) {
    return std::find(excluded.begin(), excluded.end(), p) != excluded.end();
  });
  return primes;
}

std::vector<FibralAverage> averages_for(const SurfaceQT& surface,
                                        const std::vector<u64>& primes,
                                        unsigned workers) {
  return parallel_map(std::span<const u64>(primes), workers, [&](u64 p) {
    return fibral_average(surface, build_qr_table(p));
  });
}

}  // namespace

NagaoReport tauberian_sum(const SurfaceQT& surface, u64 bound,
                          const NagaoOptions& options) {
  if (bound < 5) throw std::invalid_argument("tauberian_sum: X must be >= 5");
  const std::vector<FibralAverage> averages =
      averages_for(surface, nagao_primes(bound, options.excluded),
                   options.workers);
  NagaoReport report{bound, {}, 0.0, {}};
  double running = 0.0;
  for (const FibralAverage& avg : averages) {
    running += avg.value() * std::log(static_cast<double>(avg.p));
    report.rows.push_back({avg, -running / static_cast<double>(avg.p)});
  }
  report.tauberian = -running / static_cast<double>(bound);
  return report;
}

std::vector<ResiduePoint> residue_from_averages(
    std::span<const FibralAverage> averages, std::span<const double> deltas) {
  std::vector<ResiduePoint> grid;
  for (double delta : deltas) {
    if (!(delta > 0.0)) {
      throw std::invalid_argument("residue_estimate: delta must be > 0");
    }
    double d = 0.0;
    for (const FibralAverage& avg : averages) {
      const double p = static_cast<double>(avg.p);
      d -= avg.value() * std::log(p) * std::pow(p, -1.0 - delta);
    }
    grid.push_back({delta, delta * d});
  }
  return grid;
}

std::vector<ResiduePoint> residue_estimate(const SurfaceQT& surface,
                                           u64 bound,
                                           std::span<const double> deltas,
                                           const NagaoOptions& options) {
  for (double delta : deltas) {
    if (!(delta > 0.0)) {
      throw std::invalid_argument("residue_estimate: delta must be > 0");
    }
  }
  const std::vector<FibralAverage> averages = averages_for(
      surface, nagao_primes(bound, options.excluded), options.workers);
  return residue_from_averages(averages, deltas);
}

}  // namespace tatelab
