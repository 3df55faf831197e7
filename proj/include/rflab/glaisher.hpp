#pragma once

// Partitions into parts of size at most 3: the partial-fraction closed form
// for the count r(n) next to a dynamic-programming enumeration oracle.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rflab/errors.hpp"

namespace rflab {

inline constexpr std::int64_t glaisher_enumeration_cap = 1'000'000;

// r(n) = (n+3)^2/12 - 7/72 + (-1)^n/8 + (2/9) cos(2 pi n / 3).
// The cosine takes only the values 1 and -1/2 here, so all four terms are
// combined over the common denominator 72 and the one rounding is the final
// division; the result sits within half an ulp of the true (integral) value.
inline double r3_closed(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("r3_closed: n must be >= 0");
  const std::int64_t sign_term = (n % 2 == 0) ? 9 : -9;
  const std::int64_t cos_term = (n % 3 == 0) ? 16 : -8;
  if (n <= 1'000'000'000) {
    const std::int64_t numerator =
        6 * (n + 3) * (n + 3) - 7 + sign_term + cos_term;
    return static_cast<double>(numerator) / 72.0;
  }
  // beyond the exact-integer range, fall back to plain floating point
  const double shifted = static_cast<double>(n + 3);
  return (6.0 * shifted * shifted - 7.0 + static_cast<double>(sign_term) +
          static_cast<double>(cos_term)) /
         72.0;
}

// Coefficients of 1/((1-x)(1-x^2)(1-x^3)) up to n by the usual coin DP:
// the number of solutions of a + 2b + 3c = n.
inline std::vector<std::int64_t> r3_enumerate_upto(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("r3_enumerate_upto: n must be >= 0");
  if (n > glaisher_enumeration_cap)
    throw resource_limit_error("r3_enumerate_upto: n exceeds enumeration cap");
  std::vector<std::int64_t> dp(static_cast<std::size_t>(n) + 1, 0);
  dp[0] = 1;
  for (std::int64_t part = 1; part <= 3; ++part)
    for (std::int64_t v = part; v <= n; ++v)
      dp[static_cast<std::size_t>(v)] += dp[static_cast<std::size_t>(v - part)];
  return dp;
}

inline std::int64_t r3_enumerate(std::int64_t n) {
  return r3_enumerate_upto(n).back();
}

struct glaisher_result {
  std::int64_t n = 0;
  double closed_form = 0.0;
  std::int64_t rounded = 0;
  std::int64_t enumerated = 0;
};

inline glaisher_result glaisher_compare(std::int64_t n) {
  glaisher_result out;
  out.n = n;
  out.closed_form = r3_closed(n);
  out.rounded = static_cast<std::int64_t>(std::llround(out.closed_form));
  out.enumerated = r3_enumerate(n);
  return out;
}

}  // namespace rflab
