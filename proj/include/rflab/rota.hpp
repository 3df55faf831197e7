#pragma once

// Probabilistic reading of the zeta function: arithmetic density, the
// truncated measure P_s(A) ~ sum n^{-s} / zeta(s), independence of
// divisibility by distinct primes, and joint-kernel probabilities on the
// divisor lattice of a cyclic group via Moebius inversion.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rflab/arith.hpp"
#include "rflab/summation.hpp"

namespace rflab {

// Truncated zeta normalization: zeta_trunc = sum_{n <= m} n^{-s}, with the
// integral-comparison tail bound m^{1-s}/(s-1) on what was dropped.
struct zeta_measure_trunc {
  double s = 2.0;
  std::int64_t m = 0;
  double zeta_trunc = 0.0;
  double tail_bound = 0.0;
};

inline zeta_measure_trunc make_zeta_measure(double s, std::int64_t m) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta measure: need s > 1");
  if (m < 1) throw std::invalid_argument("zeta measure: need m >= 1");
  zeta_measure_trunc out;
  out.s = s;
  out.m = m;
  compensated_sum acc;
  for (std::int64_t n = 1; n <= m; ++n)
    acc.add(std::pow(static_cast<double>(n), -s));
  out.zeta_trunc = acc.value();
  out.tail_bound = std::pow(static_cast<double>(m), 1.0 - s) / (s - 1.0);
  return out;
}

// |A cap [1, n]| / n at finite n; the density is the limit this tends to.
template <class Pred>
double arithmetic_density(Pred&& in_set, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("arithmetic_density: n >= 1");
  std::int64_t count = 0;
  for (std::int64_t m = 1; m <= n; ++m)
    if (in_set(m)) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

// Truncated P_s(A) = (1/zeta_trunc) sum_{n <= m, n in A} n^{-s}.
template <class Pred>
double zeta_measure(Pred&& in_set, const zeta_measure_trunc& measure) {
  compensated_sum acc;
  for (std::int64_t n = 1; n <= measure.m; ++n)
    if (in_set(n)) acc.add(std::pow(static_cast<double>(n), -measure.s));
  return acc.value() / measure.zeta_trunc;
}

struct independence_result {
  double joint = 0.0;    // P_s(A_p cap A_q)
  double product = 0.0;  // P_s(A_p) P_s(A_q)
};

namespace detail {

inline bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

// Divisibility by distinct primes is independent under P_s; both sides come
// out near (pq)^{-s}.
inline independence_result independence_check(std::int64_t p, std::int64_t q,
                                              double s, std::int64_t m) {
  if (p == q) throw std::invalid_argument("independence_check: primes must differ");
  if (!detail::is_prime_small(p) || !detail::is_prime_small(q))
    throw std::invalid_argument("independence_check: arguments must be prime");
  const auto measure = make_zeta_measure(s, m);
  independence_result out;
  out.joint = zeta_measure([&](std::int64_t n) { return n % (p * q) == 0; }, measure);
  out.product = zeta_measure([&](std::int64_t n) { return n % p == 0; }, measure) *
                zeta_measure([&](std::int64_t n) { return n % q == 0; }, measure);
  return out;
}

struct density_row {
  double s = 0.0;
  double p_s = 0.0;
  double density = 0.0;
};

// P_s(A) along a ladder of s values next to the finite-n density, for
// inspecting the s -> 1 limit.
template <class Pred>
std::vector<density_row> density_limit_check(Pred&& in_set,
                                             const std::vector<double>& s_ladder,
                                             std::int64_t m, std::int64_t n) {
  const double dens = arithmetic_density(in_set, n);
  std::vector<density_row> rows;
  rows.reserve(s_ladder.size());
  for (double s : s_ladder) {
    density_row row;
    row.s = s;
    row.p_s = zeta_measure(in_set, make_zeta_measure(s, m));
    row.density = dens;
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

// Distinct prime factors by trial division; r here is a group order, small.
inline std::vector<std::int64_t> distinct_primes(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// Probability that the joint kernel of s random characters of a cyclic group
// of order r is exactly the subgroup of order n:
//   P = sum_{n | d | r} mu(d/n) d^{-s}.
// Only squarefree d/n contribute, so the sum runs over subsets of the
// distinct primes of r/n (fixed bitmask order for determinism).
inline double kernel_probability_finite(std::int64_t r, std::int64_t n, double s) {
  if (r < 1 || n < 1 || r % n != 0)
    throw std::invalid_argument("kernel_probability_finite: need n | r");
  const auto primes = detail::distinct_primes(r / n);
  const std::size_t subsets = std::size_t{1} << primes.size();
  compensated_sum acc;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::int64_t j = 1;
    int sign = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        j *= primes[i];
        sign = -sign;
      }
    }
    acc.add(sign * std::pow(static_cast<double>(n * j), -s));
  }
  return acc.value();
}

struct identity_pair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Moebius inversion round trip on the divisor lattice:
// n^{-s} = sum_{n | d | r} P_{C_d}. Both sides returned for comparison.
inline identity_pair kernel_sum_identity_check(std::int64_t r, std::int64_t n,
                                               double s) {
  if (r < 1 || n < 1 || r % n != 0)
    throw std::invalid_argument("kernel_sum_identity_check: need n | r");
  identity_pair out;
  out.lhs = std::pow(static_cast<double>(n), -s);
  compensated_sum acc;
  const std::int64_t quotient = r / n;
  for (std::int64_t j = 1; j * j <= quotient; ++j) {
    if (quotient % j != 0) continue;
    acc.add(kernel_probability_finite(r, n * j, s));
    const std::int64_t j2 = quotient / j;
    if (j2 != j) acc.add(kernel_probability_finite(r, n * j2, s));
  }
  out.rhs = acc.value();
  return out;
}

// Profinite limit, closed form: P_{C_n} = n^{-s} / zeta(s), evaluated with
// the truncated normalization.
inline double kernel_probability_profinite(std::int64_t n, double s,
                                           std::int64_t m) {
  if (n < 1) throw std::invalid_argument("kernel_probability_profinite: n >= 1");
  const auto measure = make_zeta_measure(s, m);
  return std::pow(static_cast<double>(n), -s) / measure.zeta_trunc;
}

// Same quantity by the direct Moebius series n^{-s} sum_{j <= m/n} mu(j) j^{-s};
// agrees with the closed form within the combined truncation tails.
inline double kernel_probability_profinite_direct(std::int64_t n, double s,
                                                  std::int64_t m,
                                                  const sieve_tables& tables) {
  if (n < 1) throw std::invalid_argument("kernel_probability_profinite_direct: n >= 1");
  const std::int64_t j_max = m / n;
  if (j_max > tables.limit())
    throw std::out_of_range("kernel_probability_profinite_direct: m/n exceeds tables");
  compensated_sum acc;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const int mu_j = tables.mu(j);
    if (mu_j != 0) acc.add(mu_j * std::pow(static_cast<double>(j), -s));
  }
  return std::pow(static_cast<double>(n), -s) * acc.value();
}

}  // namespace rflab
