#include <multsys/arith.hpp>

#include <cmath>
#include <numeric>

namespace multsys {

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for the full 64-bit range.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod_pow(i64 base, i64 exp, i64 mod) {
  return static_cast<i64>(powmod_u64(static_cast<u64>(((base % mod) + mod) % mod),
                                     static_cast<u64>(exp), static_cast<u64>(mod)));
}

SieveTable::SieveTable(i64 limit, i64 max_limit) : limit_(limit) {
  if (limit < 2) throw domain_error("SieveTable: limit must be at least 2");
  if (limit > max_limit)
    throw resource_error("SieveTable: requested limit " + std::to_string(limit) +
                         " exceeds configured sieve limit " + std::to_string(max_limit));
  if (limit >= (i64(1) << 32))
    throw resource_error("SieveTable: limit does not fit the 32-bit factor table");

  // Linear sieve: each composite is struck exactly once by its smallest
  // prime factor.
  spf_.assign(static_cast<size_t>(limit) + 1, 0);
  primes_.reserve(static_cast<size_t>(limit > 100 ? double(limit) / (std::log(double(limit)) - 1.1)
                                                  : 32));
  for (i64 i = 2; i <= limit; ++i) {
    if (spf_[static_cast<size_t>(i)] == 0) {
      spf_[static_cast<size_t>(i)] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    const i64 spf_i = spf_[static_cast<size_t>(i)];
    for (i64 p : primes_) {
      if (p > spf_i || i * p > limit) break;
      spf_[static_cast<size_t>(i * p)] = static_cast<std::uint32_t>(p);
    }
  }
}

Factorization SieveTable::factorize(i64 n) const {
  check_range(n);
  Factorization f;
  f.n = n;
  visit_factors(n, [&](i64 p, int e) { f.factors.emplace_back(p, e); });
  return f;
}

std::vector<i64> sieve_primes(i64 limit, i64 max_limit) {
  return SieveTable(limit, max_limit).primes();
}

}  // namespace multsys
