#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "rflab/arith.hpp"
#include "test_support.hpp"

using rflab::build_sieve;
using rflab::sieve_tables;

TEST_CASE("first primes exactly") {
  const auto t = build_sieve(10);
  CHECK(t.primes() == std::vector<std::uint32_t>{2, 3, 5, 7});
}

TEST_CASE("small sieve matches hand values") {
  const auto t = build_sieve(30);
  REQUIRE(t.primes().size() >= 4);
  CHECK(t.primes()[0] == 2);
  CHECK(t.primes()[1] == 3);
  CHECK(t.primes()[2] == 5);
  CHECK(t.primes()[3] == 7);
  CHECK(t.phi(9) == 6);
  CHECK(t.mu(9) == 0);
  CHECK(t.mu(30) == -1);
  CHECK(t.phi(1) == 1);
  CHECK(t.mu(1) == 1);
  CHECK(t.spf(30) == 2);
}

TEST_CASE("sieve construction guards") {
  CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);
  CHECK_THROWS_AS(build_sieve(100, /*cap=*/50), rflab::resource_limit_error);
}

TEST_CASE("von Mangoldt values and prime-power decomposition") {
  const auto& t = testsup::tables_small();
  CHECK(t.von_mangoldt(8) == Catch::Approx(std::log(2.0)).epsilon(1e-15));
  const auto pp8 = t.prime_power_of(8);
  REQUIRE(pp8.has_value());
  CHECK(pp8->p == 2);
  CHECK(pp8->k == 3);
  CHECK(t.von_mangoldt(6) == 0.0);
  CHECK_FALSE(t.prime_power_of(6).has_value());
  CHECK(t.von_mangoldt(7) == Catch::Approx(std::log(7.0)).epsilon(1e-15));
  CHECK(t.von_mangoldt(1) == 0.0);
  CHECK_THROWS_AS(t.von_mangoldt(0), std::out_of_range);
  CHECK_THROWS_AS(t.von_mangoldt(t.limit() + 1), std::out_of_range);
}

TEST_CASE("factorize") {
  const auto& t = testsup::tables_small();
  CHECK(t.factorize(1).empty());
  const auto f12 = t.factorize(12);
  REQUIRE(f12.size() == 2);
  CHECK(f12[0].p == 2);
  CHECK(f12[0].k == 2);
  CHECK(f12[1].p == 3);
  CHECK(f12[1].k == 1);
  const auto f97 = t.factorize(97);
  REQUIRE(f97.size() == 1);
  CHECK(f97[0].p == 97);
  CHECK(f97[0].k == 1);

  // product of p^k reconstructs n, primes ascending
  auto rng = testsup::seeded_rng(1);
  std::uniform_int_distribution<std::int64_t> pick(2, t.limit());
  for (int i = 0; i < 200; ++i) {
    const std::int64_t n = pick(rng);
    std::int64_t prod = 1;
    std::int64_t prev_p = 0;
    for (const auto& pp : t.factorize(n)) {
      CHECK(pp.p > prev_p);
      prev_p = pp.p;
      for (int j = 0; j < pp.k; ++j) prod *= pp.p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("phi and spf agree with the defining products up to 10^4") {
  const auto& t = testsup::tables_small();
  for (std::int64_t n = 2; n <= 10'000; ++n) {
    std::int64_t phi = n;
    for (const auto& pp : t.factorize(n)) phi = phi / pp.p * (pp.p - 1);
    CHECK(t.phi(n) == phi);
    CHECK(n % t.spf(n) == 0);
    CHECK(t.is_prime(t.spf(n)));
  }
}

TEST_CASE("multiplicativity spot checks on random coprime pairs") {
  const auto& t = testsup::tables_small();
  auto rng = testsup::seeded_rng(2);
  std::uniform_int_distribution<std::int64_t> pick(2, 300);
  int done = 0;
  while (done < 500) {
    const std::int64_t a = pick(rng), b = pick(rng);
    if (std::gcd(a, b) != 1 || a * b > t.limit()) continue;
    ++done;
    CHECK(t.phi(a * b) == t.phi(a) * t.phi(b));
    CHECK(t.mu(a * b) == t.mu(a) * t.mu(b));
  }
}

TEST_CASE("divisor sums: sum mu(d) = [n=1], sum Lambda(d) = log n") {
  const auto& t = testsup::tables_small();
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    // enumerate divisors from the factorization
    std::vector<std::int64_t> divisors{1};
    for (const auto& pp : t.factorize(n)) {
      const std::size_t base = divisors.size();
      std::int64_t pe = 1;
      for (int e = 1; e <= pp.k; ++e) {
        pe *= pp.p;
        for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
      }
    }
    std::int64_t mu_sum = 0;
    double lambda_sum = 0.0;
    for (std::int64_t d : divisors) {
      mu_sum += t.mu(d);
      lambda_sum += t.von_mangoldt(d);
    }
    CHECK(mu_sum == (n == 1 ? 1 : 0));
    CHECK(std::abs(lambda_sum - std::log(static_cast<double>(n))) < 1e-12);
  }
}

TEST_CASE("lambda support flags exactly the prime powers") {
  const auto& t = testsup::tables_small();
  for (std::int64_t n = 1; n <= 3'000; ++n) {
    const double expected = testsup::oracle_von_mangoldt(n);
    CHECK(std::abs(t.von_mangoldt(n) - expected) < 1e-12);
    CHECK(t.is_prime_power(n) == (expected != 0.0));
  }
}

TEST_CASE("binary snapshot round-trips") {
  const auto t = build_sieve(5'000);
  std::stringstream buf;
  t.dump(buf);
  const auto back = sieve_tables::load(buf);
  REQUIRE(back.limit() == t.limit());
  REQUIRE(back.primes() == t.primes());
  for (std::int64_t n = 1; n <= t.limit(); ++n) {
    REQUIRE(back.phi(n) == t.phi(n));
    REQUIRE(back.mu(n) == t.mu(n));
    REQUIRE(back.von_mangoldt(n) == t.von_mangoldt(n));
  }
}

TEST_CASE("snapshot rejects a bad header") {
  std::stringstream buf;
  buf << "NOTRFLABxxxxxxxxxxxx";
  CHECK_THROWS(sieve_tables::load(buf));
}
