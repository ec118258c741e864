#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <multsys/dirichlet.hpp>
#include <multsys/fg_function.hpp>

namespace multsys {

// Partial pretentious distance
//   D(f, g; N) = ( sum_{p <= N} (1 - Re f(p) conj(g(p))) / p )^{1/2}.
double distance_partial(const FgMultFunction& f, const FgMultFunction& g, i64 N,
                        const SieveTable& sieve);

// Decision for D(f, g) < infinity.  When finite, the witness is the explicit
// set of primes where f and g disagree; when infinite, a divergent class is
// reported.
struct FinitenessWitness {
  bool finite = false;
  std::vector<i64> exceptional_primes;  // valid when finite
  std::string divergent_class;          // valid when !finite
};

FinitenessWitness distance_is_finite(const FgMultFunction& f, const FgMultFunction& g);

// Mean value M(f) = lim (1/N) sum f(n): zero unless f pretends 1, in which
// case the exact finite Euler product prod_{p in W} (1-1/p)(1-f(p)/p)^{-1}
// over the witness set W.
std::complex<double> halasz_mean(const FgMultFunction& f);

// Brute-force oracles: (1/N) sum_{n<=N} f(n) (optionally twisted by e(rn/q)
// or by a Dirichlet character).  Block-partitioned with a deterministic
// merge order; `threads` only changes wall time, never the result.
std::complex<double> partial_mean(const FgMultFunction& f, i64 N, const SieveTable& sieve,
                                  int threads = 1);
std::complex<double> partial_mean_twisted(const FgMultFunction& f, i64 N, i64 r, i64 q,
                                          const SieveTable& sieve, int threads = 1);
std::complex<double> partial_mean_character(const FgMultFunction& f,
                                            const DirichletCharacter& chi, i64 N,
                                            const SieveTable& sieve, int threads = 1);

// The character pretended by f, when one exists.  The search modulus is the
// lcm m of the residue moduli of f's many-prime classes: a character that
// agrees with f off few primes is constant on every residue class mod m, so
// its conductor divides m and the finitely many characters mod m exhaust the
// candidates.  Any irrational phase on a many-prime class rules out every
// character immediately.
struct PretendsResult {
  DirichletCharacter chi;
  std::vector<i64> exceptional_primes;  // where f differs from chi*
};

std::optional<PretendsResult> pretends_character(const FgMultFunction& f,
                                                 i64 bound = kDefaultCharacterBound);

// f is aperiodic iff it stays at infinite distance from every Dirichlet
// character.
bool is_aperiodic_fn(const FgMultFunction& f, i64 bound = kDefaultCharacterBound);

}  // namespace multsys
