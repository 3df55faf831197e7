#pragma once

// Exact tables of the basic arithmetic functions (smallest prime factor,
// totient, Moebius, von Mangoldt support) built by a linear sieve. Tables
// are immutable after construction and safe to share across threads.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rflab/errors.hpp"

namespace rflab {

inline constexpr std::int64_t default_sieve_cap = 100'000'000;

struct prime_power {
  std::int64_t p = 0;
  int k = 0;
};

class sieve_tables {
public:
  // Linear (Euler) sieve: every composite is crossed exactly once by its
  // smallest prime factor, and phi/mu are filled multiplicatively in the
  // same pass. O(limit) time, deterministic.
  static sieve_tables build(std::int64_t limit,
                            std::int64_t cap = default_sieve_cap) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (limit > cap)
      throw resource_limit_error("sieve limit " + std::to_string(limit) +
                                 " exceeds cap " + std::to_string(cap));
    sieve_tables t;
    t.limit_ = limit;
    const auto size = static_cast<std::size_t>(limit) + 1;
    t.spf_.assign(size, 0);
    t.phi_.assign(size, 0);
    t.mu_.assign(size, 0);
    t.lambda_p_.assign(size, 0);
    t.phi_[1] = 1;
    t.mu_[1] = 1;

    for (std::int64_t i = 2; i <= limit; ++i) {
      if (t.spf_[i] == 0) {
        t.spf_[i] = static_cast<std::uint32_t>(i);
        t.primes_.push_back(static_cast<std::uint32_t>(i));
        t.phi_[i] = static_cast<std::uint32_t>(i - 1);
        t.mu_[i] = -1;
      }
      for (std::uint32_t p : t.primes_) {
        if (p > t.spf_[i] || i * p > limit) break;
        const std::int64_t ip = i * p;
        t.spf_[ip] = p;
        if (i % p == 0) {
          t.phi_[ip] = t.phi_[i] * p;
          t.mu_[ip] = 0;
          break;
        }
        t.phi_[ip] = t.phi_[i] * (p - 1);
        t.mu_[ip] = static_cast<std::int8_t>(-t.mu_[i]);
      }
    }
    // n = p^k iff n/spf(n) is 1 or a power of the same prime.
    for (std::int64_t n = 2; n <= limit; ++n) {
      const std::uint32_t p = t.spf_[n];
      const std::int64_t m = n / p;
      if (m == 1 || t.lambda_p_[m] == p) t.lambda_p_[n] = p;
    }
    return t;
  }

  std::int64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  std::int64_t spf(std::int64_t n) const {
    check_range(n);
    if (n < 2) throw std::out_of_range("spf defined for n >= 2");
    return spf_[n];
  }

  std::int64_t phi(std::int64_t n) const {
    check_range(n);
    return phi_[n];
  }

  int mu(std::int64_t n) const {
    check_range(n);
    return mu_[n];
  }

  bool is_prime(std::int64_t n) const {
    check_range(n);
    return n >= 2 && spf_[n] == n;
  }

  bool is_prime_power(std::int64_t n) const {
    check_range(n);
    return lambda_p_[n] != 0;
  }

  // The (p, k) with n = p^k, when n is a prime power.
  std::optional<prime_power> prime_power_of(std::int64_t n) const {
    check_range(n);
    if (lambda_p_[n] == 0) return std::nullopt;
    prime_power pp;
    pp.p = lambda_p_[n];
    std::int64_t m = n;
    while (m > 1) {
      m /= pp.p;
      ++pp.k;
    }
    return pp;
  }

  // log p when n = p^k, 0 otherwise.
  double von_mangoldt(std::int64_t n) const {
    check_range(n);
    const std::uint32_t p = lambda_p_[n];
    return p == 0 ? 0.0 : std::log(static_cast<double>(p));
  }

  // Prime factorization with ascending primes; n = 1 gives the empty list.
  std::vector<prime_power> factorize(std::int64_t n) const {
    check_range(n);
    std::vector<prime_power> out;
    while (n > 1) {
      prime_power pp;
      pp.p = spf_[n];
      while (n % pp.p == 0) {
        n /= pp.p;
        ++pp.k;
      }
      out.push_back(pp);
    }
    return out;
  }

  // --- binary snapshot -----------------------------------------------------
  // Layout: magic "RFLAB01", limit as 8-byte little-endian, then the raw
  // spf/phi/lambda_p arrays (4-byte little-endian each) and mu (1 byte).

  void dump(std::ostream& os) const {
    os.write(magic(), 7);
    write_u64_le(os, static_cast<std::uint64_t>(limit_));
    write_u32_array(os, spf_);
    write_u32_array(os, phi_);
    write_u32_array(os, lambda_p_);
    os.write(reinterpret_cast<const char*>(mu_.data()),
             static_cast<std::streamsize>(mu_.size()));
    if (!os) throw std::runtime_error("sieve dump: write failed");
  }

  void dump_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("sieve dump: cannot open " + path);
    dump(os);
  }

  static sieve_tables load(std::istream& is,
                           std::int64_t cap = default_sieve_cap) {
    char head[7];
    is.read(head, 7);
    if (!is || std::memcmp(head, magic(), 7) != 0)
      throw std::runtime_error("sieve load: bad magic");
    const auto limit = static_cast<std::int64_t>(read_u64_le(is));
    if (limit < 2) throw std::runtime_error("sieve load: bad limit");
    if (limit > cap)
      throw resource_limit_error("sieve load: limit exceeds cap");
    sieve_tables t;
    t.limit_ = limit;
    const auto size = static_cast<std::size_t>(limit) + 1;
    t.spf_ = read_u32_array(is, size);
    t.phi_ = read_u32_array(is, size);
    t.lambda_p_ = read_u32_array(is, size);
    t.mu_.resize(size);
    is.read(reinterpret_cast<char*>(t.mu_.data()),
            static_cast<std::streamsize>(size));
    if (!is) throw std::runtime_error("sieve load: truncated file");
    for (std::int64_t n = 2; n <= limit; ++n)
      if (t.spf_[n] == static_cast<std::uint32_t>(n))
        t.primes_.push_back(t.spf_[n]);
    return t;
  }

  static sieve_tables load_file(const std::string& path,
                                std::int64_t cap = default_sieve_cap) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("sieve load: cannot open " + path);
    return load(is, cap);
  }

private:
  void check_range(std::int64_t n) const {
    if (n < 1 || n > limit_)
      throw std::out_of_range("n = " + std::to_string(n) +
                              " outside sieve range [1, " +
                              std::to_string(limit_) + "]");
  }

  static const char* magic() { return "RFLAB01"; }

  static void write_u64_le(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
  }

  static std::uint64_t read_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }

  static void write_u32_array(std::ostream& os,
                              const std::vector<std::uint32_t>& v) {
    std::vector<unsigned char> buf(4 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint32_t x = v[i];
      buf[4 * i] = static_cast<unsigned char>(x & 0xff);
      buf[4 * i + 1] = static_cast<unsigned char>((x >> 8) & 0xff);
      buf[4 * i + 2] = static_cast<unsigned char>((x >> 16) & 0xff);
      buf[4 * i + 3] = static_cast<unsigned char>((x >> 24) & 0xff);
    }
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size()));
  }

  static std::vector<std::uint32_t> read_u32_array(std::istream& is,
                                                   std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::vector<unsigned char> buf(4 * n);
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<std::uint32_t>(buf[4 * i]) |
             static_cast<std::uint32_t>(buf[4 * i + 1]) << 8 |
             static_cast<std::uint32_t>(buf[4 * i + 2]) << 16 |
             static_cast<std::uint32_t>(buf[4 * i + 3]) << 24;
    }
    return v;
  }

  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> lambda_p_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> primes_;
};

inline sieve_tables build_sieve(std::int64_t limit,
                                std::int64_t cap = default_sieve_cap) {
  return sieve_tables::build(limit, cap);
}

}  // namespace rflab
