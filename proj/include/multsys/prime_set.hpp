#pragma once

#include <string>
#include <vector>

#include <multsys/arith.hpp>

namespace multsys {

// A set of primes in one of three shapes:
//   Explicit  - a finite sorted list of primes ("few primes"),
//   Residue   - all primes in given residue classes mod m, residues coprime
//               to m ("many primes", by Dirichlet),
//   Default   - the complement of the other classes of a partition; as a
//               standalone set it means all primes.
struct PrimeSet {
  enum class Kind { Explicit, Residue, Default };

  Kind kind = Kind::Default;
  std::vector<i64> primes;    // Explicit: sorted, unique, all prime
  i64 modulus = 0;            // Residue
  std::vector<i64> residues;  // Residue: sorted, reduced, coprime to modulus

  static PrimeSet explicit_set(std::vector<i64> ps);
  static PrimeSet residue_classes(i64 modulus, std::vector<i64> residues);
  static PrimeSet all_primes();

  bool is_explicit() const { return kind == Kind::Explicit; }
  bool is_residue() const { return kind == Kind::Residue; }
  bool is_default() const { return kind == Kind::Default; }

  // Standalone membership; Default means every prime.
  bool contains_prime(i64 p) const;

  std::string describe() const;
};

// Omega_P(n): prime factors of n inside P, counted with multiplicity.
int big_omega_restricted(i64 n, const PrimeSet& P, const SieveTable& sieve);

// lambda_P(n) = (-1)^{Omega_P(n)}.
int liouville_restricted(i64 n, const PrimeSet& P, const SieveTable& sieve);

// True iff no prime factor of n lies in P; n = 1 is P-free for every P.
bool is_P_free(i64 n, const PrimeSet& P, const SieveTable& sieve);

// Natural density of the P-free numbers, prod_{p in P} (1 - 1/p).
// Only explicit finite P is supported; any infinite shape would have
// density zero and is rejected.
double qp_density(const PrimeSet& P);

// sum_{p in P, p <= N} 1/p; diverges iff P holds many primes.
double prime_reciprocal_partial(const PrimeSet& P, i64 N, const SieveTable& sieve);

}  // namespace multsys
