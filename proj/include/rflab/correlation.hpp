#pragma once

// The prime-pair autocorrelation experiment Psi(h, N), the ratio tables it
// feeds, prime-pair and Goldbach counting, and the classical heuristic
// estimates (Hardy-Littlewood form, Sylvester's and Brun's variants with
// their historically wrong constants kept on purpose).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rflab/arith.hpp"
#include "rflab/singular.hpp"
#include "rflab/summation.hpp"

namespace rflab {

// Summand convention for the pair-correlation sum.
//
//   totient_mangoldt  sum_{n <= N} w(n) w(n+h) with w(n) = (phi(n)/n) Lambda(n).
//                     This is the defining form; use it for anything new.
//   reference_tables  w(n) = Lambda(n) for odd n and Lambda(n)/2 for even n,
//                     summed over pairs fully inside [1, N] (n + h <= N).
//                     This is the convention the published reference tables
//                     were computed with; it reproduces all their printed
//                     digits exactly and is kept solely for that purpose.
enum class psi_convention { totient_mangoldt, reference_tables };

// One row of a ratio table: the partial sum at N, its average, and the
// ratio C(h) / (Psi/N) when C(h) is nonzero.
struct correlation_row {
  std::int64_t n_limit = 0;
  double psi = 0.0;
  double psi_over_n = 0.0;
  std::optional<double> ratio;
};

struct pair_count {
  std::int64_t h = 0;
  std::int64_t n_limit = 0;
  std::int64_t count = 0;
};

// (phi(n)/n) Lambda(n): the weight whose Ramanujan-Fourier coefficients are
// mu(q)/phi(q). Zero off prime powers.
inline double weighted_tail(std::int64_t n, const sieve_tables& tables) {
  const auto pp = tables.prime_power_of(n);
  if (!pp) return 0.0;
  return static_cast<double>(tables.phi(n)) / static_cast<double>(n) *
         std::log(static_cast<double>(pp->p));
}

namespace detail {

inline double psi_term(std::int64_t n, std::int64_t h, psi_convention conv,
                       const sieve_tables& tables) {
  const auto a = tables.prime_power_of(n);
  if (!a) return 0.0;
  const auto b = tables.prime_power_of(n + h);
  if (!b) return 0.0;
  const double la = std::log(static_cast<double>(a->p));
  const double lb = std::log(static_cast<double>(b->p));
  if (conv == psi_convention::totient_mangoldt) {
    return (static_cast<double>(tables.phi(n)) / static_cast<double>(n) * la) *
           (static_cast<double>(tables.phi(n + h)) /
            static_cast<double>(n + h) * lb);
  }
  return (n % 2 == 0 ? 0.5 * la : la) * ((n + h) % 2 == 0 ? 0.5 * lb : lb);
}

inline std::int64_t psi_last_n(std::int64_t n_limit, std::int64_t h,
                               psi_convention conv) {
  return conv == psi_convention::totient_mangoldt ? n_limit : n_limit - h;
}

}  // namespace detail

// Psi(h, N): the weighted pair-correlation sum under the chosen convention.
// Ascending compensated summation; threads > 1 switches to the deterministic
// chunked reduction (identical bits for any thread count, and within 1e-12
// relative of the single-pass result).
inline double psi(std::int64_t h, std::int64_t n_limit,
                  const sieve_tables& tables,
                  psi_convention conv = psi_convention::totient_mangoldt,
                  unsigned threads = 1) {
  if (h < 1) throw std::invalid_argument("psi: h must be positive");
  if (n_limit < 1) throw std::invalid_argument("psi: N must be positive");
  if (n_limit + h > tables.limit())
    throw std::out_of_range("psi: N + h exceeds table limit");
  return deterministic_sum(
      1, detail::psi_last_n(n_limit, h, conv),
      [&](std::int64_t n) { return detail::psi_term(n, h, conv, tables); },
      threads);
}

// One row per N in ascending n_list; each row extends the previous partial
// sum by one chunked increment instead of recomputing, so a single-entry
// n_list yields a row bit-identical to a direct psi() call.
inline std::vector<correlation_row> ratio_table(
    std::int64_t h, const std::vector<std::int64_t>& n_list,
    const sieve_tables& tables, const singular_value& c_h,
    psi_convention conv = psi_convention::totient_mangoldt,
    unsigned threads = 1) {
  if (c_h.h != h) throw std::invalid_argument("ratio_table: C(h) is for a different h");
  std::vector<correlation_row> rows;
  rows.reserve(n_list.size());
  compensated_sum acc;
  std::int64_t done = 0;  // largest n already accumulated
  std::int64_t prev_limit = 0;
  for (std::int64_t n_limit : n_list) {
    if (n_limit <= prev_limit && !rows.empty())
      throw std::invalid_argument("ratio_table: N values must be ascending");
    prev_limit = n_limit;
    if (n_limit + h > tables.limit())
      throw std::out_of_range("ratio_table: N + h exceeds table limit");
    const std::int64_t last = detail::psi_last_n(n_limit, h, conv);
    acc.merge(deterministic_sum_acc(
        done + 1, last,
        [&](std::int64_t n) { return detail::psi_term(n, h, conv, tables); },
        threads));
    done = std::max(done, last);
    correlation_row row;
    row.n_limit = n_limit;
    row.psi = acc.value();
    row.psi_over_n = row.psi / static_cast<double>(n_limit);
    if (c_h.value > 0.0 && row.psi > 0.0) row.ratio = c_h.value / row.psi_over_n;
    rows.push_back(row);
  }
  return rows;
}

// pi_h(N): primes p <= N with p + h also prime. Prime powers are excluded;
// this counts actual prime pairs, unlike Psi's prime-power support.
inline pair_count prime_pair_count(std::int64_t h, std::int64_t n_limit,
                                   const sieve_tables& tables) {
  if (h < 2 || h % 2 != 0)
    throw std::invalid_argument("prime_pair_count: h must be even and positive");
  if (n_limit + h > tables.limit())
    throw std::out_of_range("prime_pair_count: N + h exceeds table limit");
  pair_count out;
  out.h = h;
  out.n_limit = n_limit;
  for (std::uint32_t p : tables.primes()) {
    if (p > n_limit) break;
    if (tables.is_prime(static_cast<std::int64_t>(p) + h)) ++out.count;
  }
  return out;
}

// C(h) N / log^2 N.
inline double hl_pair_estimate(std::int64_t n_limit,
                               const singular_value& c_h) {
  if (n_limit < 3) throw std::invalid_argument("hl_pair_estimate: N >= 3");
  const double log_n = std::log(static_cast<double>(n_limit));
  return c_h.value * static_cast<double>(n_limit) / (log_n * log_n);
}

// Ordered representations n = p + p' with both prime. Ordered to match the
// convolution the heuristic estimates approximate; the unordered variant is
// the human-facing count.
inline std::int64_t goldbach_count(std::int64_t n, const sieve_tables& tables) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("goldbach_count: n must be even and >= 4");
  if (n > tables.limit())
    throw std::out_of_range("goldbach_count: n exceeds table limit");
  std::int64_t count = 0;
  for (std::uint32_t p : tables.primes()) {
    if (p >= n) break;
    if (tables.is_prime(n - p)) ++count;
  }
  return count;
}

inline std::int64_t goldbach_count_unordered(std::int64_t n,
                                             const sieve_tables& tables) {
  const std::int64_t ordered = goldbach_count(n, tables);
  const std::int64_t diagonal = tables.is_prime(n / 2) ? 1 : 0;
  return (ordered + diagonal) / 2;
}

// sum_{m=1}^{n-1} w(m) w(n-m) with w = weighted_tail: the empirical
// convolution the heuristic n C(n) approximates.
inline double goldbach_weighted(std::int64_t n, const sieve_tables& tables) {
  if (n < 2) throw std::invalid_argument("goldbach_weighted: n must be >= 2");
  if (n > tables.limit())
    throw std::out_of_range("goldbach_weighted: n exceeds table limit");
  compensated_sum acc;
  for (std::int64_t m = 1; m < n; ++m) {
    const double wm = weighted_tail(m, tables);
    if (wm != 0.0) acc.add(wm * weighted_tail(n - m, tables));
  }
  return acc.value();
}

namespace detail {

// prod_{p | n, p > 2} (p-1)/(p-2); the finite correction shared by all the
// Goldbach-type estimates. Must stay one code path so constant-ratio checks
// between the estimates cancel it exactly.
inline double odd_divisor_correction(std::int64_t n, const sieve_tables& tables) {
  double prod = 1.0;
  for (const auto& pp : tables.factorize(n))
    if (pp.p > 2)
      prod *= static_cast<double>(pp.p - 1) / static_cast<double>(pp.p - 2);
  return prod;
}

}  // namespace detail

// Hardy-Littlewood form: C(n) n / log^2 n with C(n) = 2 a_value * correction.
// a_value is a truncated A = prod_{p>2}(1 - 1/(p-1)^2), normally from
// prime_product_a.
inline double hl_goldbach_estimate(std::int64_t n, const sieve_tables& tables,
                                   double a_value) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("hl_goldbach_estimate: n must be even and >= 4");
  if (n > tables.limit())
    throw std::out_of_range("hl_goldbach_estimate: n exceeds table limit");
  const double log_n = std::log(static_cast<double>(n));
  return 2.0 * a_value * detail::odd_divisor_correction(n, tables) *
         static_cast<double>(n) / (log_n * log_n);
}

// Sylvester's historical formula, kept verbatim with its wrong constant
// 4 A e^{-gamma}: off from the Hardy-Littlewood form by exactly 2 e^{-gamma}.
inline double sylvester_estimate(std::int64_t n, const sieve_tables& tables,
                                 double a_value) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("sylvester_estimate: n must be even and >= 4");
  if (n > tables.limit())
    throw std::out_of_range("sylvester_estimate: n exceeds table limit");
  const double log_n = std::log(static_cast<double>(n));
  return 4.0 * a_value * std::exp(-euler_gamma) *
         detail::odd_divisor_correction(n, tables) * static_cast<double>(n) /
         (log_n * log_n);
}

// The estimate Brun's double-sieve argument leads to, verbatim with its
// wrong constant 8 A e^{-2 gamma}: off by exactly 4 e^{-2 gamma}.
inline double brun_estimate(std::int64_t n, const sieve_tables& tables,
                            double a_value) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("brun_estimate: n must be even and >= 4");
  if (n > tables.limit())
    throw std::out_of_range("brun_estimate: n exceeds table limit");
  const double log_n = std::log(static_cast<double>(n));
  return 8.0 * a_value * std::exp(-2.0 * euler_gamma) *
         detail::odd_divisor_correction(n, tables) * static_cast<double>(n) /
         (log_n * log_n);
}

struct sieve_decomposition {
  std::int64_t exact = 0;   // decompositions surviving the double sieve
  double formula = 0.0;     // n * prod_{p|n} (1 - 1/p) * prod_{p not|n} (1 - 2/p)
};

// Double-sieve count behind Brun's heuristic: decompositions n = m + m'
// where neither part is divisible by any of the first l primes, next to the
// density formula. l = 0 means no sieving (exact = n - 1, formula = n; the
// off-by-one edge is inherent to the density approximation).
inline sieve_decomposition sieve_decomposition_count(std::int64_t n,
                                                     std::int64_t l,
                                                     const sieve_tables& tables) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("sieve_decomposition_count: n must be even and >= 2");
  if (n > tables.limit())
    throw std::out_of_range("sieve_decomposition_count: n exceeds table limit");
  if (l < 0 || static_cast<std::size_t>(l) > tables.primes().size())
    throw std::invalid_argument("sieve_decomposition_count: bad l");
  std::vector<std::int64_t> sieve_primes;
  for (std::int64_t i = 0; i < l; ++i) {
    const std::int64_t p = tables.primes()[static_cast<std::size_t>(i)];
    if (p > n) throw std::invalid_argument("sieve_decomposition_count: p_l > n");
    sieve_primes.push_back(p);
  }

  sieve_decomposition out;
  for (std::int64_t m = 1; m < n; ++m) {
    bool erased = false;
    for (std::int64_t p : sieve_primes) {
      if (m % p == 0 || (n - m) % p == 0) {
        erased = true;
        break;
      }
    }
    if (!erased) ++out.exact;
  }

  double formula = static_cast<double>(n);
  for (std::int64_t p : sieve_primes) {
    if (n % p == 0)
      formula *= 1.0 - 1.0 / static_cast<double>(p);
    else
      formula *= 1.0 - 2.0 / static_cast<double>(p);
  }
  out.formula = formula;
  return out;
}

}  // namespace rflab
