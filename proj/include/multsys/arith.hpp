#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <multsys/errors.hpp>

namespace multsys {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr i64 kDefaultSieveLimit = 100'000'000;

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

i64 gcd_i64(i64 a, i64 b);
i64 mod_pow(i64 base, i64 exp, i64 mod);

struct Factorization {
  i64 n = 1;
  std::vector<std::pair<i64, int>> factors;  // (prime, exponent), primes increasing
};

// Smallest-prime-factor sieve.  Built once, then immutable; all queries are
// pure and safe for concurrent use.
class SieveTable {
 public:
  // Throws resource_error when limit exceeds max_limit; domain_error when
  // limit < 2.
  explicit SieveTable(i64 limit, i64 max_limit = kDefaultSieveLimit);

  i64 limit() const { return limit_; }
  const std::vector<i64>& primes() const { return primes_; }

  bool is_prime(i64 n) const {
    return n >= 2 && n <= limit_ && spf_[static_cast<size_t>(n)] == n;
  }

  i64 smallest_factor(i64 n) const {
    check_range(n);
    return spf_[static_cast<size_t>(n)];
  }

  Factorization factorize(i64 n) const;

  // Calls v(p, e) per prime power in increasing p.  The hot path for every
  // summation kernel.
  template <class V>
  void visit_factors(i64 n, V&& v) const {
    check_range(n);
    while (n > 1) {
      const i64 p = spf_[static_cast<size_t>(n)];
      int e = 0;
      do {
        n /= p;
        ++e;
      } while (n > 1 && spf_[static_cast<size_t>(n)] == p);
      v(p, e);
    }
  }

  int big_omega(i64 n) const {
    int total = 0;
    visit_factors(n, [&](i64, int e) { total += e; });
    return total;
  }

  int liouville(i64 n) const { return big_omega(n) % 2 == 0 ? 1 : -1; }

 private:
  void check_range(i64 n) const {
    if (n < 1) throw domain_error("SieveTable: n must be positive");
    if (n > limit_) throw domain_error("SieveTable: n exceeds sieve limit");
  }

  i64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<i64> primes_;
};

// Primes <= limit; convenience over a throwaway table.
std::vector<i64> sieve_primes(i64 limit, i64 max_limit = kDefaultSieveLimit);

}  // namespace multsys
