#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <multsys/fg_function.hpp>
#include <multsys/phase.hpp>

namespace multsys {

inline constexpr i64 kDefaultCharacterBound = 10'000;

// Dirichlet character mod q stored as a full value table over residues
// 1..q: a rational phase where chi is nonzero, nothing where gcd(a,q) > 1.
class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  // Validates the zero pattern, chi(1) = 1 and complete multiplicativity.
  DirichletCharacter(i64 modulus, std::vector<std::optional<RationalPhase>> values);

  // Skips validation; for tables already known to be characters.
  static DirichletCharacter trusted(i64 modulus, std::vector<std::optional<RationalPhase>> values);

  i64 modulus() const { return modulus_; }

  bool is_zero_at(i64 n) const;
  // Phase of chi(n) for gcd(n, q) = 1; n taken mod q.
  RationalPhase phase_at(i64 n) const;
  std::complex<double> value(i64 n) const;

  bool is_principal() const;
  DirichletCharacter conjugate() const;

  // Smallest q1 | q carrying a character that induces chi.
  i64 conductor() const;
  bool is_primitive() const { return conductor() == modulus_; }

  const std::vector<std::optional<RationalPhase>>& table() const { return values_; }

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  i64 modulus_ = 1;
  std::vector<std::optional<RationalPhase>> values_;  // index a-1 for residue a
};

// All phi(q) characters mod q in a deterministic order (principal first).
// Construction goes through primitive roots for odd prime powers and the
// {+-1} x cyclic structure for 2^k, k >= 3.
std::vector<DirichletCharacter> characters_mod(i64 q, i64 bound = kDefaultCharacterBound);

// Gauss sum tau(chi) = sum_{m=1}^{q} e(m/q) chi(m).
std::complex<double> gauss_sum(const DirichletCharacter& chi);

// chi with its zero values replaced by 1: residue classes mod q carry the
// nonzero values, the primes dividing q carry phase 1.
FgMultFunction modified_character(const DirichletCharacter& chi);

// Residual of the finite Fourier expansion
//   chi(n) = (1/tau(conj chi)) sum_m conj(chi)(m) e(mn/q),
// valid for primitive chi (precondition error otherwise).
double verify_fourier_expansion(const DirichletCharacter& chi, i64 n);

// Exact limit of (1/N) sum e(rn/q) chi(n) for primitive chi of modulus q0:
// conj(chi)(r) tau(chi) / q when q0 = q, and 0 otherwise.
// Preconditions: gcd(r, q) = 1 and chi primitive.
std::complex<double> twisted_mean_limit(i64 r, i64 q, const DirichletCharacter& chi);

// Brute-force oracle for the above: (1/N) sum_{n<=N} e(rn/q) chi(n).
// The summand is lcm(q, q0)-periodic, so the partial sum is evaluated
// exactly from one period plus a remainder.
std::complex<double> twisted_character_partial_mean(i64 r, i64 q,
                                                    const DirichletCharacter& chi, i64 N);

// Exact verdicts for the two indicator identities, decided in rational-phase
// arithmetic (a sum of roots of unity is recognised as zero when the phase
// multiset splits into complete equal-multiplicity root-of-unity orbits).
//
//   (1/phi(q)) sum_chi conj(chi)(r) chi(n) = 1_{n = r mod q},  gcd(r,q)=1
bool orthogonality_identity_exact(i64 q, i64 r, i64 n, i64 bound = kDefaultCharacterBound);
//   (1/q) sum_{a=1}^{q} e(a(n-r)/q) = 1_{n = r mod q}
bool geometric_indicator_exact(i64 q, i64 r, i64 n);

}  // namespace multsys
