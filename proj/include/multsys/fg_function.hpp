#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <multsys/phase.hpp>
#include <multsys/prime_set.hpp>

namespace multsys {

// Finitely generated completely multiplicative function with values in the
// unit circle, encoded as a partition of the primes into classes with one
// phase per class.  Lookup order is explicit classes first, then residue
// classes, then the default class; validate() guarantees the partition is
// disjoint and covers every prime.
struct MultClass {
  PrimeSet primes;
  UnitPhase phase;
};

struct FgMultFunction {
  std::vector<MultClass> classes;

  // Throws validation_error naming the offending classes.
  void validate() const;

  UnitPhase phase_at_prime(i64 p) const;

  // Phase of f(n), exact rational arithmetic when every involved class
  // phase is rational.
  UnitPhase phase_eval(i64 n, const SieveTable& sieve) const;
  std::complex<double> eval(i64 n, const SieveTable& sieve) const {
    return phase_eval(n, sieve).value();
  }

  // f^k (k may be negative, giving conjugates).
  FgMultFunction power(i64 k) const;
  FgMultFunction conj() const { return power(-1); }

  // Pointwise product on the common refinement of the two partitions.
  FgMultFunction times(const FgMultFunction& other) const;

  // lcm of the residue-class moduli (1 when there are none); every prime not
  // dividing this and not listed explicitly is classified by its residue.
  i64 residue_lcm() const;

  // Phase carried by almost every prime in the residue class c mod M, where
  // M is a multiple of residue_lcm() and gcd(c, M) = 1.
  UnitPhase generic_phase(i64 M, i64 c) const;

  bool all_phases_rational() const;

  static FgMultFunction one();
  static FgMultFunction constant(UnitPhase phase);
  static FgMultFunction liouville();
  static FgMultFunction liouville_restricted(PrimeSet P);
};

// Finitely generated completely additive integer-valued function, same
// partition encoding.
struct AddClass {
  PrimeSet primes;
  i64 value = 0;
};

struct FgAddFunction {
  std::vector<AddClass> classes;

  void validate() const;

  i64 value_at_prime(i64 p) const;
  i64 eval(i64 n, const SieveTable& sieve) const;

  // The completely multiplicative function n -> e(a(n) * alpha).
  FgMultFunction exponential(const UnitPhase& alpha) const;

  // True when a(p) != 0 on some residue or genuinely infinite default class.
  bool nonzero_for_many_primes() const;

  static FgAddFunction big_omega();
  static FgAddFunction big_omega_restricted(PrimeSet P);
};

namespace detail {
// Shared partition checks for both function kinds.
void validate_partition(const std::vector<PrimeSet>& cells);
i64 residue_lcm_of(const std::vector<PrimeSet>& cells);
// lcm of two residue lcms, guarded by the same cap.
i64 joint_residue_lcm(i64 a, i64 b);
// Index of the class owning prime p (explicit first, then residue, then
// default); throws validation_error if nothing matches.
size_t class_of_prime(const std::vector<PrimeSet>& cells, i64 p);
// Index of the class owning almost every prime = c (mod M); M must be a
// multiple of every residue modulus and gcd(c, M) = 1.
size_t class_of_residue(const std::vector<PrimeSet>& cells, i64 M, i64 c);
// True when the default cell captures infinitely many primes (some coprime
// class mod the residue lcm falls through to it).
bool default_is_many(const std::vector<PrimeSet>& cells);
}  // namespace detail

}  // namespace multsys
