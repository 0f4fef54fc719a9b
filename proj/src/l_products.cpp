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

#include "tatelab/l_products.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

namespace tatelab {

namespace {

using Complex = std::complex<double>;

// 1 - e^{i phi} x
Complex elementary(double phi, double x) {
  return Complex(1.0, 0.0) - std::polar(x, phi);
}

double invert_real(Complex z, const char* what) {
  if (z == Complex(0.0, 0.0)) throw SingularFactor(what);
  return (Complex(1.0, 0.0) / z).real();
}

// Local factor of L_rho_k(s) = L^1_k(s + k/2); trivial for k < 0.
double rho_factor(int k, double theta, double q, double s) {
  if (k < 0) return 1.0;
  return serre_factor(static_cast<unsigned>(k), theta, q, s + k / 2.0);
}

}  // namespace

double tate_factor(unsigned n, double theta, double q, double s) {
  const double x = std::pow(q, -s);
  if (n == 0) {
    return invert_real(Complex(1.0 - x, 0.0), "tate_factor: 1 - q^-s = 0");
  }
  const double phi = static_cast<double>(n) * theta;
  return invert_real(elementary(phi, x) * elementary(-phi, x),
                     "tate_factor: vanishing denominator");
}

double serre_factor(unsigned m, double theta, double q, double s) {
  const double x = std::pow(q, m / 2.0 - s);
  Complex prod(1.0, 0.0);
  for (unsigned a = 0; a <= m; ++a) {
    const double k = static_cast<double>(m) - 2.0 * a;
    prod *= elementary(k * theta, x);
  }
  return invert_real(prod, "serre_factor: vanishing denominator");
}

double factorization_conditioning(unsigned m, double theta, double q,
                                  double s) {
  double worst = INFINITY;
  for (double x : {std::pow(q, m / 2.0 - s), std::pow(q, -s)}) {
    for (int k = -static_cast<int>(m); k <= static_cast<int>(m); ++k) {
      worst = std::min(worst, std::abs(elementary(k * theta, x)));
    }
  }
  return worst;
}

FactorizationCheck verify_factorization(unsigned m, double theta, double q,
                                        double s) {
  if (factorization_conditioning(m, theta, q, s) < 1e-6) {
    return {true, 0.0, 0.0};
  }
  const double serre = serre_factor(m, theta, q, s);
  double regrouped = 1.0;
  for (unsigned r = 0; 2 * r <= m; ++r) {
    regrouped *= tate_factor(m - 2 * r, theta, q, s - m / 2.0);
  }
  const int mi = static_cast<int>(m);
  const double quotient =
      rho_factor(mi, theta, q, s) / rho_factor(mi - 2, theta, q, s);
  return {false, std::abs(serre - regrouped),
          std::abs(tate_factor(m, theta, q, s) - quotient)};
}

std::vector<FactorizationDraw> sample_factorization_draws(std::uint64_t seed,
                                                          std::size_t count,
                                                          unsigned m_max,
                                                          std::uint64_t q_max) {
  const std::vector<u64> primes = primes_up_to(q_max);
  if (primes.empty()) {
    throw std::invalid_argument("sample_factorization_draws: q_max < 2");
  }
  std::mt19937_64 rng(seed);
  const auto unit = [&rng] {  // (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  std::vector<FactorizationDraw> draws;
  draws.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto m = static_cast<unsigned>(rng() % (m_max + 1));
    const double theta = std::numbers::pi * (1.0 - unit());
    const double q = static_cast<double>(primes[rng() % primes.size()]);
    const double s = m / 2.0 + 1.0 + 3.0 * unit();
    draws.push_back({m, theta, q, s});
  }
  return draws;
}

TruncatedProduct truncated_product(LKind kind, unsigned index,
                                   std::span<const TraceRecord> records,
                                   double s) {
  double value = 1.0;
  for (const TraceRecord& r : records) {
    const double q = static_cast<double>(r.p);
    value *= kind == LKind::tate ? tate_factor(index, r.theta_p, q, s)
                                 : serre_factor(index, r.theta_p, q, s);
  }
  const double edge = kind == LKind::tate ? 1.0 : index / 2.0 + 1.0;
  return {value, s > edge};
}

PoleAssumptions PoleAssumptions::tate_default() {
  PoleAssumptions a;
  a.set(0, 1);
  a.set(2, -1);
  return a;
}

int PoleAssumptions::order(unsigned n) const {
  const auto it = orders_.find(n);
  return it == orders_.end() ? 0 : it->second;
}

EulerLedger build_ledger(unsigned m, unsigned i) {
  if (i > 2 * m) throw std::invalid_argument("build_ledger: need 0 <= i <= 2m");
  EulerLedger ledger{m, i, {}};
  for (unsigned r = 0; 2 * r <= i; ++r) {
    const std::uint64_t e = binomial(m, r) * binomial(m, i - r);
    if (e == 0) continue;
    ledger.terms.push_back({i - 2 * r, static_cast<std::int64_t>(e)});
  }
  return ledger;
}

std::int64_t ledger_pole_order(const EulerLedger& ledger,
                               const PoleAssumptions& assumptions) {
  std::int64_t order = 0;
  for (const LedgerTerm& t : ledger.terms) {
    order += t.exponent * assumptions.order(t.n);
  }
  return order;
}

std::int64_t generic_rank(unsigned m, unsigned i) {
  if (i > m) throw std::invalid_argument("generic_rank: need 0 <= i <= m");
  const auto c = [m](unsigned k) {
    return static_cast<std::int64_t>(binomial(m, k));
  };
  const std::int64_t below = i == 0 ? 0 : c(i - 1);
  return c(i) * c(i) - below * c(i + 1);
}

std::int64_t serre_pole_order(unsigned m, const PoleAssumptions& assumptions) {
  std::int64_t order = 0;
  for (unsigned r = 0; 2 * r <= m; ++r) order += assumptions.order(m - 2 * r);
  return order;
}

std::string render_ledger(const EulerLedger& ledger) {
  std::ostringstream out;
  out << "Φ_" << ledger.i << "(s) = ";
  std::string shift;
  if (ledger.i == 0) {
    shift = "s";
  } else if (ledger.i % 2 == 0) {
    shift = "s − " + std::to_string(ledger.i / 2);
  } else {
    shift = "s − " + std::to_string(ledger.i) + "/2";
  }
  for (std::size_t k = 0; k < ledger.terms.size(); ++k) {
    if (k > 0) out << " · ";
    out << "L_" << ledger.terms[k].n << '(' << shift << ")^"
        << ledger.terms[k].exponent;
  }
  return out.str();
}

}  // namespace tatelab
