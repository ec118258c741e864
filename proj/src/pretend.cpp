#include <multsys/pretend.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernels.hpp"

namespace multsys {

namespace {

std::vector<PrimeSet> cell_sets(const FgMultFunction& f) {
  std::vector<PrimeSet> cs;
  cs.reserve(f.classes.size());
  for (const auto& c : f.classes) cs.push_back(c.primes);
  return cs;
}

}  // namespace

double distance_partial(const FgMultFunction& f, const FgMultFunction& g, i64 N,
                        const SieveTable& sieve) {
  if (N < 2) throw domain_error("distance_partial: N must be >= 2");
  if (N > sieve.limit()) throw domain_error("distance_partial: N exceeds sieve limit");
  const detail::ClassResolver rf(cell_sets(f)), rg(cell_sets(g));
  std::vector<double> af, ag;
  for (const auto& c : f.classes) af.push_back(c.phase.angle());
  for (const auto& c : g.classes) ag.push_back(c.phase.angle());
  double sum = 0.0;
  for (i64 p : sieve.primes()) {
    if (p > N) break;
    const double delta = af[static_cast<size_t>(rf.resolve(p))] -
                         ag[static_cast<size_t>(rg.resolve(p))];
    sum += (1.0 - std::cos(2.0 * M_PI * delta)) / static_cast<double>(p);
  }
  return std::sqrt(std::max(0.0, sum));
}

FinitenessWitness distance_is_finite(const FgMultFunction& f, const FgMultFunction& g) {
  const i64 M = detail::joint_residue_lcm(f.residue_lcm(), g.residue_lcm());

  FinitenessWitness w;
  for (i64 c = 1; c <= M; ++c) {
    if (std::gcd(c, M) != 1) continue;
    if (!(f.generic_phase(M, c) == g.generic_phase(M, c))) {
      w.finite = false;
      w.divergent_class =
          M == 1 ? "default class" : "class " + std::to_string(c) + " mod " + std::to_string(M);
      return w;
    }
  }

  // All infinite classes agree; the disagreement set is a finite set of
  // explicitly named primes plus divisors of M.
  std::vector<i64> candidates;
  auto collect = [&](const FgMultFunction& h) {
    for (const auto& cls : h.classes)
      if (cls.primes.is_explicit())
        candidates.insert(candidates.end(), cls.primes.primes.begin(), cls.primes.primes.end());
  };
  collect(f);
  collect(g);
  for (i64 p = 2; p <= M; ++p)
    if (M % p == 0 && is_prime_u64(static_cast<u64>(p))) candidates.push_back(p);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  w.finite = true;
  for (i64 p : candidates)
    if (!(f.phase_at_prime(p) == g.phase_at_prime(p))) w.exceptional_primes.push_back(p);
  return w;
}

std::complex<double> halasz_mean(const FgMultFunction& f) {
  const FinitenessWitness w = distance_is_finite(f, FgMultFunction::one());
  if (!w.finite) return 0.0;
  std::complex<double> m = 1.0;
  for (i64 p : w.exceptional_primes) {
    const double pd = static_cast<double>(p);
    m *= (1.0 - 1.0 / pd) / (1.0 - f.phase_at_prime(p).value() / pd);
  }
  return m;
}

namespace {

void check_mean_args(i64 N, const SieveTable& sieve) {
  if (N < 1) throw domain_error("partial mean: N must be >= 1");
  if (N > sieve.limit()) throw domain_error("partial mean: N exceeds sieve limit");
}

}  // namespace

std::complex<double> partial_mean(const FgMultFunction& f, i64 N, const SieveTable& sieve,
                                  int threads) {
  check_mean_args(N, sieve);
  const detail::FgLogEvaluator ev(f, sieve);
  const i64 schedule[1] = {N};
  auto sums = detail::blocked_sums(
      1, schedule, threads,
      [&](i64 n, std::complex<double>* acc) { acc[0] += ev.eval_value(n); });
  return sums[0][0] / static_cast<double>(N);
}

std::complex<double> partial_mean_twisted(const FgMultFunction& f, i64 N, i64 r, i64 q,
                                          const SieveTable& sieve, int threads) {
  check_mean_args(N, sieve);
  if (q < 1) throw domain_error("partial_mean_twisted: q must be positive");
  const detail::FgLogEvaluator ev(f, sieve);
  std::vector<std::complex<double>> twist(static_cast<size_t>(q));
  for (i64 s = 0; s < q; ++s) twist[static_cast<size_t>(s)] = RationalPhase(r * s, q).value();
  const i64 schedule[1] = {N};
  auto sums = detail::blocked_sums(1, schedule, threads,
                                   [&](i64 n, std::complex<double>* acc) {
                                     acc[0] += ev.eval_value(n) * twist[static_cast<size_t>(n % q)];
                                   });
  return sums[0][0] / static_cast<double>(N);
}

std::complex<double> partial_mean_character(const FgMultFunction& f,
                                            const DirichletCharacter& chi, i64 N,
                                            const SieveTable& sieve, int threads) {
  check_mean_args(N, sieve);
  const detail::FgLogEvaluator ev(f, sieve);
  const i64 q = chi.modulus();
  std::vector<std::complex<double>> twist(static_cast<size_t>(q));
  std::vector<std::uint8_t> zero(static_cast<size_t>(q));
  for (i64 s = 0; s < q; ++s) {
    const i64 n = s == 0 ? q : s;
    zero[static_cast<size_t>(s)] = chi.is_zero_at(n) ? 1 : 0;
    twist[static_cast<size_t>(s)] = chi.value(n);
  }
  const i64 schedule[1] = {N};
  auto sums = detail::blocked_sums(1, schedule, threads,
                                   [&](i64 n, std::complex<double>* acc) {
                                     const auto s = static_cast<size_t>(n % q);
                                     if (zero[s]) return;
                                     acc[0] += ev.eval_value(n) * twist[s];
                                   });
  return sums[0][0] / static_cast<double>(N);
}

std::optional<PretendsResult> pretends_character(const FgMultFunction& f, i64 bound) {
  const i64 m = f.residue_lcm();
  if (m > bound)
    throw resource_error("pretends_character: candidate modulus " + std::to_string(m) +
                         " exceeds configured bound " + std::to_string(bound));

  // The pretended character must reproduce the phase of every infinite
  // residue class mod m, so its value table is forced; it remains to check
  // that the forced table is completely multiplicative.
  std::vector<std::optional<RationalPhase>> values(static_cast<size_t>(m));
  for (i64 c = 1; c <= m; ++c) {
    if (std::gcd(c, m) != 1) continue;
    const UnitPhase ph = f.generic_phase(m, c);
    if (!ph.rational) return std::nullopt;  // irrational values miss every root of unity
    values[static_cast<size_t>(c - 1)] = ph.rat;
  }
  DirichletCharacter chi;
  try {
    chi = DirichletCharacter(m, std::move(values));
  } catch (const validation_error&) {
    return std::nullopt;
  }

  const FinitenessWitness w = distance_is_finite(f, modified_character(chi));
  if (!w.finite)
    throw domain_error("pretends_character: internal inconsistency");  // unreachable
  return PretendsResult{std::move(chi), w.exceptional_primes};
}

bool is_aperiodic_fn(const FgMultFunction& f, i64 bound) {
  return !pretends_character(f, bound).has_value();
}

}  // namespace multsys
