#pragma once

// The twin-prime constant, the prime-pair singular series C(h) by three
// routes (Euler product, closed form with divisor correction, truncated
// coefficient sum), and Mertens-product checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rflab/arith.hpp"
#include "rflab/ramanujan.hpp"
#include "rflab/summation.hpp"

namespace rflab {

// Euler's constant to the 10 digits used throughout the heuristic-constant
// comparisons.
inline constexpr double euler_gamma = 0.5772156649;

// A truncated singular-series value plus enough metadata to judge it:
// the largest prime kept in the product and an elementary tail bound.
struct singular_value {
  std::int64_t h = 0;
  double value = 0.0;
  std::int64_t truncation_prime = 0;
  double tail_bound = 0.0;
};

// Largest prime <= x in the tables (0 when none).
inline std::int64_t largest_prime_upto(const sieve_tables& tables,
                                       std::int64_t x) {
  const auto& primes = tables.primes();
  auto it = std::upper_bound(primes.begin(), primes.end(),
                             static_cast<std::uint32_t>(std::max<std::int64_t>(x, 0)));
  return it == primes.begin() ? 0 : static_cast<std::int64_t>(*(it - 1));
}

namespace detail {

// Above this many factors, products are accumulated as compensated sums of
// log1p terms and exponentiated once, to curb rounding drift.
inline constexpr std::size_t log_space_threshold = 100'000;

template <class FactorLog1pArg>
double prime_product(const sieve_tables& tables, std::int64_t lo_exclusive,
                     std::int64_t hi_inclusive, FactorLog1pArg&& arg) {
  std::size_t count = 0;
  for (std::uint32_t p : tables.primes()) {
    if (p > hi_inclusive) break;
    if (p > lo_exclusive) ++count;
  }
  if (count > log_space_threshold) {
    compensated_sum logs;
    for (std::uint32_t p : tables.primes()) {
      if (p > hi_inclusive) break;
      if (p <= lo_exclusive) continue;
      logs.add(std::log1p(arg(static_cast<std::int64_t>(p))));
    }
    return std::exp(logs.value());
  }
  double prod = 1.0;
  for (std::uint32_t p : tables.primes()) {
    if (p > hi_inclusive) break;
    if (p <= lo_exclusive) continue;
    prod *= 1.0 + arg(static_cast<std::int64_t>(p));
  }
  return prod;
}

}  // namespace detail

// A(P) = prod_{2 < p <= P} (1 - 1/(p-1)^2). The twin-prime constant is 2A;
// the two are exposed separately because the heuristic formulas downstream
// need A itself.
inline double prime_product_a(std::int64_t trunc_prime,
                              const sieve_tables& tables) {
  if (trunc_prime < 3) throw std::invalid_argument("prime_product_a: need P >= 3");
  if (trunc_prime > tables.limit())
    throw std::out_of_range("prime_product_a: P exceeds table limit");
  return detail::prime_product(tables, 2, trunc_prime, [](std::int64_t p) {
    const double pm1 = static_cast<double>(p - 1);
    return -1.0 / (pm1 * pm1);
  });
}

// 2A(P), recorded with the elementary tail bound
// sum_{n > P} 1/(n-1)^2 <= 1/(P-1).
inline singular_value twin_prime_constant(std::int64_t trunc_prime,
                                          const sieve_tables& tables) {
  singular_value out;
  out.h = 2;
  out.value = 2.0 * prime_product_a(trunc_prime, tables);
  out.truncation_prime = largest_prime_upto(tables, trunc_prime);
  out.tail_bound = 1.0 / static_cast<double>(trunc_prime - 1);
  return out;
}

// C(h): 0 for odd h; for even h, 2A(P) * prod_{p | h, p > 2} (p-1)/(p-2).
inline singular_value singular_series(std::int64_t h, std::int64_t trunc_prime,
                                      const sieve_tables& tables) {
  if (h == 0) throw std::invalid_argument("singular_series: h must be nonzero");
  const std::int64_t ah = h < 0 ? -h : h;
  if (ah > tables.limit())
    throw std::out_of_range("singular_series: |h| exceeds table limit");
  singular_value out;
  out.h = h;
  out.truncation_prime = largest_prime_upto(tables, trunc_prime);
  out.tail_bound = 1.0 / static_cast<double>(trunc_prime - 1);
  if (ah % 2 == 1) {
    out.value = 0.0;
    return out;
  }
  double correction = 1.0;
  for (const auto& pp : tables.factorize(ah))
    if (pp.p > 2)
      correction *= static_cast<double>(pp.p - 1) / static_cast<double>(pp.p - 2);
  out.value = 2.0 * prime_product_a(trunc_prime, tables) * correction;
  return out;
}

// Truncated coefficient-sum route: sum_{q <= Q} mu^2(q)/phi^2(q) c_q(h).
// Converges (with oscillation) to singular_series(h) as Q grows.
inline double singular_series_partial(std::int64_t h, std::int64_t q_max,
                                      const sieve_tables& tables) {
  if (q_max < 1) throw std::invalid_argument("singular_series_partial: Q >= 1");
  if (q_max > tables.limit())
    throw std::out_of_range("singular_series_partial: Q exceeds table limit");
  compensated_sum acc;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    if (tables.mu(q) == 0) continue;
    const double phi_q = static_cast<double>(tables.phi(q));
    acc.add(static_cast<double>(ramanujan_sum(q, h, tables)) / (phi_q * phi_q));
  }
  return acc.value();
}

struct product_pair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Both sides of the Euler-product regrouping, truncated at P:
// lhs runs over (1 + mu^2(p)/phi^2(p) c_p(h)); rhs regroups the factors by
// whether p divides h. Algebraically identical factor by factor.
inline product_pair euler_product_identity_check(std::int64_t h,
                                                 std::int64_t trunc_prime,
                                                 const sieve_tables& tables) {
  if (h == 0) throw std::invalid_argument("euler_product_identity_check: h != 0");
  if (trunc_prime > tables.limit())
    throw std::out_of_range("euler_product_identity_check: P exceeds limit");
  const std::int64_t ah = h < 0 ? -h : h;
  product_pair out;
  out.lhs = 1.0;
  out.rhs = 1.0;
  for (std::uint32_t pu : tables.primes()) {
    if (pu > trunc_prime) break;
    const auto p = static_cast<std::int64_t>(pu);
    const double pm1 = static_cast<double>(p - 1);
    const double cp = static_cast<double>(ramanujan_sum(p, ah, tables));
    out.lhs *= 1.0 + cp / (pm1 * pm1);
    if (ah % p == 0)
      out.rhs *= 1.0 + 1.0 / pm1;
    else
      out.rhs *= 1.0 - 1.0 / (pm1 * pm1);
  }
  return out;
}

// prod_{p <= x} (1 - 1/p); compare against exp(-gamma)/log x.
inline double mertens_product(std::int64_t x, const sieve_tables& tables) {
  if (x < 2) throw std::invalid_argument("mertens_product: x must be >= 2");
  if (x > tables.limit())
    throw std::out_of_range("mertens_product: x exceeds table limit");
  return detail::prime_product(tables, 1, x, [](std::int64_t p) {
    return -1.0 / static_cast<double>(p);
  });
}

}  // namespace rflab
