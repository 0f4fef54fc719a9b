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

// Symmetric-power Euler factors in the two normalizations:
//
//   L_0(s) = prod (1 - q^-s)^-1,
//   L_n(s) = prod [(1 - e^{in theta} q^-s)(1 - e^{-in theta} q^-s)]^-1,
//   L^1_m(s) = prod prod_{a=0..m} (1 - e^{i(m-2a) theta} q^{m/2 - s})^-1,
//
// together with the symbolic ledger Phi_i(s) = prod_r L_{i-2r}(s - i/2)^e_r
// of E^m and its pole-order bookkeeping.

#ifndef TATELAB_L_PRODUCTS_HPP_
#define TATELAB_L_PRODUCTS_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatelab/curves.hpp"

namespace tatelab {

/// A local factor whose denominator vanishes at the requested point.
class SingularFactor : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Local factor of L_n at one prime of norm q. Throws SingularFactor.
double tate_factor(unsigned n, double theta, double q, double s);

/// Local factor of L^1_m at one prime of norm q. Throws SingularFactor.
double serre_factor(unsigned m, double theta, double q, double s);

struct FactorizationCheck {
  bool screened;  // true when a denominator fell below 1e-6; nothing compared
  double factorization_dev;  // |L^1_m(s) - prod_r L_{m-2r}(s - m/2)|
  double quotient_dev;       // |L_m(s) - L_rho_m(s) / L_rho_{m-2}(s)|
};

/// Checks the regrouping of L^1_m into Tate factors and the quotient
/// identity at one local factor.
FactorizationCheck verify_factorization(unsigned m, double theta, double q,
                                        double s);

/// Smallest |denominator| over all elementary factors the check touches.
double factorization_conditioning(unsigned m, double theta, double q,
                                  double s);

struct FactorizationDraw {
  unsigned m;
  double theta;
  double q;  // a prime
  double s;  // in (m/2 + 1, m/2 + 4]
};

/// Seeded parameter draws for identity sweeps: m uniform in [0, m_max],
/// theta uniform in [0, pi], q a uniform prime in [2, q_max]. Uses
/// std::mt19937_64 with explicit range mapping, so the sequence is the same
/// on every platform.
std::vector<FactorizationDraw> sample_factorization_draws(std::uint64_t seed,
                                                          std::size_t count,
                                                          unsigned m_max,
                                                          std::uint64_t q_max);

enum class LKind { tate, serre };

struct TruncatedProduct {
  double value;
  bool convergent;  // s inside the half-plane of absolute convergence
};

/// Product of local factors over the records, in record order.
TruncatedProduct truncated_product(LKind kind, unsigned index,
                                   std::span<const TraceRecord> records,
                                   double s);

struct LedgerTerm {
  unsigned n;             // index of L_n
  std::int64_t exponent;  // C(m, r) C(m, i - r)
};

/// Phi_i(s) for E^m; every term is evaluated at s - i/2.
struct EulerLedger {
  unsigned m;
  unsigned i;
  std::vector<LedgerTerm> terms;  // r = 0, 1, ... ; n = i - 2r decreasing
};

/// Orders c_n of the pole of L_n at s = 1. Unlisted indices have order 0.
class PoleAssumptions {
 public:
  /// c_0 = 1, c_2 = -1, all other c_n = 0.
  static PoleAssumptions tate_default();

  int order(unsigned n) const;
  void set(unsigned n, int c) { orders_[n] = c; }
  const std::map<unsigned, int>& overrides() const { return orders_; }

 private:
  std::map<unsigned, int> orders_;
};

/// Throws std::invalid_argument unless 0 <= i <= 2m.
EulerLedger build_ledger(unsigned m, unsigned i);

/// Order of the pole of Phi_i at s = 1 + i/2: sum of exponent * c_n.
std::int64_t ledger_pole_order(const EulerLedger& ledger,
                               const PoleAssumptions& assumptions);

/// C(m,i)^2 - C(m,i-1) C(m,i+1). Throws std::invalid_argument if i > m.
std::int64_t generic_rank(unsigned m, unsigned i);

/// Order of the pole of L^1_m at s = 1 + m/2: sum of c_{m-2r}.
std::int64_t serre_pole_order(unsigned m, const PoleAssumptions& assumptions);

/// "Φ_i(s) = L_n(s − i/2)^e · ..."
std::string render_ledger(const EulerLedger& ledger);

}  // namespace tatelab

#endif  // TATELAB_L_PRODUCTS_HPP_
