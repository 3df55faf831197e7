#pragma once

// Ramanujan sums c_q(n), finite Ramanujan-Fourier series, empirical
// coefficient extraction by mean values, and the exact finite-period
// autocorrelation identity (discrete Wiener-Khintchine).

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rflab/arith.hpp"
#include "rflab/errors.hpp"
#include "rflab/summation.hpp"

namespace rflab {

// A fraction k/q in lowest terms with 1 <= k <= q; these index the
// exponentials e(kn/q) underlying every c_q.
struct reduced_fraction {
  std::int64_t k = 1;
  std::int64_t q = 1;

  reduced_fraction(std::int64_t k_, std::int64_t q_) : k(k_), q(q_) {
    if (q < 1 || k < 1 || k > q || std::gcd(k, q) != 1)
      throw std::invalid_argument("reduced_fraction: need 1 <= k <= q, gcd(k,q) = 1");
  }
};

// Finite Ramanujan-Fourier expansion: modulus q -> coefficient a_q.
// Ordered map so every reduction over the series is deterministic.
struct rf_series {
  std::map<std::int64_t, double> coeffs;
};

namespace detail {

// n reduced into [0, q).
inline std::int64_t mod_into(std::int64_t n, std::int64_t q) {
  std::int64_t r = n % q;
  return r < 0 ? r + q : r;
}

inline std::complex<double> unit_exp(std::int64_t num, std::int64_t den) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

// c_q(n) summed literally over the reduced residues k mod q. Kept as the
// slow reference path; the result must be an integer to within 1e-9 or the
// complex-exponential machinery is broken.
inline std::int64_t ramanujan_sum_direct(std::int64_t q, std::int64_t n) {
  if (q < 1) throw std::invalid_argument("ramanujan_sum_direct: q must be >= 1");
  const std::int64_t nr = detail::mod_into(n, q);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t k = 1; k <= q; ++k) {
    if (std::gcd(k, q) != 1) continue;
    acc += detail::unit_exp(detail::mod_into(k * nr, q), q);
  }
  const double nearest = std::round(acc.real());
  if (std::abs(acc.imag()) > 1e-9 || std::abs(acc.real() - nearest) > 1e-9)
    throw internal_consistency_error(
        "ramanujan_sum_direct: non-integral exponential sum at q = " +
        std::to_string(q) + ", n = " + std::to_string(n));
  return static_cast<std::int64_t>(nearest);
}

// Closed-form evaluation: c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(n, q).
// Production path; agrees with ramanujan_sum_direct everywhere.
inline std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n,
                                  const sieve_tables& tables) {
  if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
  if (q > tables.limit())
    throw std::out_of_range("ramanujan_sum: q exceeds table limit");
  const std::int64_t g = std::gcd(detail::mod_into(n, q), q);  // gcd(0, q) = q
  const std::int64_t d = q / g;
  const int mu_d = tables.mu(d);
  if (mu_d == 0) return 0;
  return mu_d * (tables.phi(q) / tables.phi(d));
}

// (1/N) sum_{n<=N} a(n), compensated, ascending n.
template <class F>
double mean_value(F&& a, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("mean_value: N must be >= 1");
  compensated_sum acc;
  for (std::int64_t n = 1; n <= N; ++n) acc.add(a(n));
  return acc.value() / static_cast<double>(N);
}

// Empirical Ramanujan-Fourier coefficient at truncation N:
// (1/phi(q)) (1/N) sum_{n<=N} a(n) c_q(n).
template <class F>
double rf_coefficient(F&& a, std::int64_t q, std::int64_t N,
                      const sieve_tables& tables) {
  if (N < 1) throw std::invalid_argument("rf_coefficient: N must be >= 1");
  if (q < 1 || q > tables.limit())
    throw std::out_of_range("rf_coefficient: q outside table range");
  compensated_sum acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double an = a(n);
    if (an != 0.0)
      acc.add(an * static_cast<double>(ramanujan_sum(q, n, tables)));
  }
  return acc.value() / static_cast<double>(tables.phi(q)) /
         static_cast<double>(N);
}

// sum_q a_q c_q(n).
inline double rf_synthesize(const rf_series& series, std::int64_t n,
                            const sieve_tables& tables) {
  compensated_sum acc;
  for (const auto& [q, aq] : series.coeffs)
    acc.add(aq * static_cast<double>(ramanujan_sum(q, n, tables)));
  return acc.value();
}

struct wk_pair {
  double lhs = 0.0;  // exact autocorrelation over one full period
  double rhs = 0.0;  // power-spectrum side: sum_q a_q^2 c_q(h)
};

// For a finite series the limiting average in the autocorrelation formula is
// exact already at one full period L = lcm of the moduli: both sides are
// returned and must agree to 1e-9.
inline wk_pair wk_autocorrelation_finite(const rf_series& series,
                                         std::int64_t h,
                                         const sieve_tables& tables) {
  std::int64_t period = 1;
  for (const auto& [q, aq] : series.coeffs) {
    if (q < 1 || q > tables.limit())
      throw std::out_of_range("wk_autocorrelation_finite: modulus out of range");
    period = std::lcm(period, q);
  }
  wk_pair out;
  compensated_sum lhs;
  for (std::int64_t n = 1; n <= period; ++n)
    lhs.add(rf_synthesize(series, n, tables) *
            rf_synthesize(series, n + h, tables));
  out.lhs = lhs.value() / static_cast<double>(period);

  compensated_sum rhs;
  for (const auto& [q, aq] : series.coeffs)
    rhs.add(aq * aq * static_cast<double>(ramanujan_sum(q, h, tables)));
  out.rhs = rhs.value();
  return out;
}

// Mean over one common period of e_{k/q}(n) * conj(e_{k'/q'}(n)): 1 when the
// fractions coincide, 0 otherwise. Returned as the real part; the imaginary
// part must vanish to rounding.
inline double orthogonality_check(const reduced_fraction& f1,
                                  const reduced_fraction& f2) {
  const std::int64_t period = std::lcm(f1.q, f2.q);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t n = 1; n <= period; ++n) {
    const auto e1 = detail::unit_exp(detail::mod_into(f1.k * n, f1.q), f1.q);
    const auto e2 = detail::unit_exp(detail::mod_into(f2.k * n, f2.q), f2.q);
    acc += e1 * std::conj(e2);
  }
  acc /= static_cast<double>(period);
  if (std::abs(acc.imag()) > 1e-12)
    throw internal_consistency_error("orthogonality_check: complex mean");
  return acc.real();
}

// Heuristic estimate for the k-fold additive convolution of a function with
// this series: binom(n+k-1, k-1) * sum_q a_q^k c_q(n).
inline double rf_convolution_estimate(const rf_series& series, int k,
                                      std::int64_t n,
                                      const sieve_tables& tables) {
  if (k < 2) throw std::invalid_argument("rf_convolution_estimate: k must be >= 2");
  double binom = 1.0;
  for (int j = 1; j <= k - 1; ++j)
    binom *= static_cast<double>(n + j) / static_cast<double>(j);
  compensated_sum spectral;
  for (const auto& [q, aq] : series.coeffs) {
    double power = 1.0;
    for (int j = 0; j < k; ++j) power *= aq;
    spectral.add(power * static_cast<double>(ramanujan_sum(q, n, tables)));
  }
  const double result = binom * spectral.value();
  if (!std::isfinite(result))
    throw internal_consistency_error("rf_convolution_estimate: non-finite result");
  return result;
}

}  // namespace rflab
