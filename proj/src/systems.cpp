#include <multsys/systems.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "kernels.hpp"
#include "mode_kernel.hpp"

namespace multsys {

namespace {

constexpr i64 kMaxModeCount = 20'000;

}  // namespace

std::vector<i64> ModeSpace::modes() const {
  std::vector<i64> js;
  if (kind == Kind::Cyclic) {
    if (order > kMaxModeCount)
      throw resource_error("mode space of order " + std::to_string(order) + " is too large");
    for (i64 j = 0; j < order; ++j) js.push_back(j);
  } else {
    if (2 * band + 1 > kMaxModeCount)
      throw resource_error("mode band " + std::to_string(band) + " is too large");
    for (i64 j = -band; j <= band; ++j) js.push_back(j);
  }
  return js;
}

ModeFunction ModeFunction::single_mode(ModeSpace space, i64 j, std::complex<double> c) {
  ModeFunction F;
  F.space = space;
  F.set_coeff(j, c);
  return F;
}

std::complex<double> ModeFunction::coeff(i64 j) const {
  auto it = coeffs.find(j);
  return it == coeffs.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

void ModeFunction::set_coeff(i64 j, std::complex<double> c) {
  if (!space.valid_mode(j))
    throw domain_error("mode " + std::to_string(j) + " lies outside the space");
  coeffs[j] = c;
}

double ModeFunction::norm_sq() const {
  double s = 0.0;
  for (const auto& [j, c] : coeffs) s += std::norm(c);
  return s;
}

double ModeFunction::distance_l2(const ModeFunction& other) const {
  double s = 0.0;
  for (const auto& [j, c] : coeffs) s += std::norm(c - other.coeff(j));
  for (const auto& [j, c] : other.coeffs)
    if (coeffs.find(j) == coeffs.end()) s += std::norm(c);
  return std::sqrt(s);
}

bool AddSystem::ergodic() const {
  // a reduced rational rotation is a full cycle on Z_q; an irrational
  // rotation is ergodic for the Haar measure
  return true;
}

ModeSpace AddSystem::space(i64 band) const {
  ModeSpace sp;
  if (angle.rational) {
    sp.kind = ModeSpace::Kind::Cyclic;
    sp.order = angle.rat.den;
  } else {
    if (band < 1) throw domain_error("irrational rotation needs a declared mode band");
    sp.kind = ModeSpace::Kind::Torus;
    sp.band = band;
  }
  return sp;
}

std::vector<RationalPhase> sigma_rat(const AddSystem& T) {
  std::set<RationalPhase> out;
  out.insert(RationalPhase(0, 1));
  if (T.angle.rational) {
    const i64 q = T.angle.rat.den;
    for (i64 j = 0; j < q; ++j) out.insert(RationalPhase(j * T.angle.rat.num, q));
  }
  return {out.begin(), out.end()};
}

MultSystem MultSystem::rotation(FgMultFunction generator, i64 band) {
  generator.validate();
  MultSystem S;
  S.kind_ = Kind::Rotation;
  S.generator_ = std::move(generator);
  if (S.generator_.all_phases_rational()) {
    i64 k = 1;
    for (const auto& c : S.generator_.classes) k = std::lcm(k, c.phase.rat.den);
    S.space_.kind = ModeSpace::Kind::Cyclic;
    S.space_.order = k;
  } else {
    if (band < 1)
      throw domain_error("rotation with irrational phases needs a declared mode band");
    S.space_.kind = ModeSpace::Kind::Torus;
    S.space_.band = band;
  }
  return S;
}

MultSystem MultSystem::skew(AddSystem base, FgAddFunction a, i64 band) {
  a.validate();
  MultSystem S;
  S.kind_ = Kind::Skew;
  S.base_ = base;
  S.additive_ = std::move(a);
  S.space_ = base.space(band);
  return S;
}

const FgMultFunction& MultSystem::generator() const {
  if (kind_ != Kind::Rotation) throw domain_error("not a rotation system");
  return generator_;
}

const AddSystem& MultSystem::base() const {
  if (kind_ != Kind::Skew) throw domain_error("not a skew system");
  return base_;
}

const FgAddFunction& MultSystem::additive_part() const {
  if (kind_ != Kind::Skew) throw domain_error("not a skew system");
  return additive_;
}

FgMultFunction MultSystem::mode_multiplier(i64 j) const {
  if (!space_.valid_mode(j))
    throw domain_error("mode " + std::to_string(j) + " lies outside the space");
  if (kind_ == Kind::Rotation) return generator_.power(j);
  return additive_.exponential(base_.angle.times(j));
}

namespace {

using detail::ModeKernel;

std::vector<i64> support_modes(const ModeFunction& F) {
  std::vector<i64> js;
  for (const auto& [j, c] : F.coeffs) js.push_back(j);
  return js;
}

void check_schedule(std::span<const i64> schedule, const SieveTable& sieve) {
  if (schedule.empty()) throw domain_error("empty N-schedule");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw domain_error("schedule entries must be positive");
    if (i > 0 && schedule[i] <= schedule[i - 1])
      throw domain_error("schedule must be strictly increasing");
  }
  if (schedule.back() > sieve.limit())
    throw domain_error("schedule exceeds sieve limit");
}

}  // namespace

ModeFunction koopman_apply(const MultSystem& S, i64 n, const ModeFunction& F,
                           const SieveTable& sieve) {
  if (n < 1) throw domain_error("koopman_apply: n must be positive");
  const auto modes = support_modes(F);
  const ModeKernel kernel(S, modes, sieve);
  std::vector<std::complex<double>> vals(modes.size());
  kernel.eval(n, vals.data());
  ModeFunction G;
  G.space = F.space;
  for (size_t k = 0; k < modes.size(); ++k)
    G.coeffs[modes[k]] = F.coeff(modes[k]) * vals[k];
  return G;
}

ModeFunction predicted_limit(const MultSystem& S, const ModeFunction& F,
                             const FgMultFunction* weight) {
  const FgMultFunction f = weight ? *weight : FgMultFunction::one();
  ModeFunction out;
  out.space = F.space;
  for (const auto& [j, c] : F.coeffs) {
    const FgMultFunction gj = S.mode_multiplier(j);
    const FinitenessWitness w = distance_is_finite(gj, f);
    if (!w.finite) {
      out.coeffs[j] = 0.0;
      continue;
    }
    std::complex<double> factor = 1.0;
    for (i64 p : w.exceptional_primes) {
      const double pd = static_cast<double>(p);
      factor *= (1.0 - 1.0 / pd) /
                (1.0 - std::conj(f.phase_at_prime(p).value()) * gj.phase_at_prime(p).value() / pd);
    }
    out.coeffs[j] = c * factor;
  }
  return out;
}

std::vector<AverageTracePoint> ergodic_average(const MultSystem& S, const ModeFunction& F,
                                               const FgMultFunction* weight,
                                               std::span<const i64> schedule,
                                               const SieveTable& sieve, int threads) {
  check_schedule(schedule, sieve);
  const auto modes = support_modes(F);
  const ModeKernel kernel(S, modes, sieve);
  std::optional<detail::FgLogEvaluator> wev;
  if (weight) wev.emplace(*weight, sieve);

  const i64 K = static_cast<i64>(modes.size());
  auto sums = detail::blocked_sums(
      K, schedule, threads, [&](i64 n, std::complex<double>* acc) {
        std::complex<double> vals[64];
        std::vector<std::complex<double>> big;
        std::complex<double>* v = vals;
        if (modes.size() > 64) {
          big.resize(modes.size());
          v = big.data();
        }
        kernel.eval(n, v);
        if (wev) {
          const std::complex<double> w = std::conj(wev->eval_value(n));
          for (size_t k = 0; k < modes.size(); ++k) acc[k] += w * v[k];
        } else {
          for (size_t k = 0; k < modes.size(); ++k) acc[k] += v[k];
        }
      });

  const ModeFunction predicted = predicted_limit(S, F, weight);
  std::vector<AverageTracePoint> trace;
  trace.reserve(schedule.size());
  for (size_t si = 0; si < schedule.size(); ++si) {
    AverageTracePoint pt;
    pt.N = schedule[si];
    pt.average.space = F.space;
    for (size_t k = 0; k < modes.size(); ++k)
      pt.average.coeffs[modes[k]] =
          F.coeff(modes[k]) * sums[si][k] / static_cast<double>(pt.N);
    pt.l2_error = pt.average.distance_l2(predicted);
    trace.push_back(std::move(pt));
  }
  return trace;
}

ModeFunction project_pretentious(const MultSystem& S, const ModeFunction& F,
                                 const FgMultFunction& f) {
  ModeFunction out;
  out.space = F.space;
  for (const auto& [j, c] : F.coeffs)
    if (distance_is_finite(S.mode_multiplier(j), f).finite) out.coeffs[j] = c;
  return out;
}

RationalAperiodicSplit project_rational_aperiodic(const MultSystem& S, const ModeFunction& F) {
  RationalAperiodicSplit split;
  split.pr_rat.space = F.space;
  split.aperiodic.space = F.space;
  for (const auto& [j, c] : F.coeffs) {
    if (pretends_character(S.mode_multiplier(j)).has_value())
      split.pr_rat.coeffs[j] = c;
    else
      split.aperiodic.coeffs[j] = c;
  }
  return split;
}

double distance_system(const MultSystem& S, const ModeFunction& F, const FgMultFunction& f,
                       i64 N, const SieveTable& sieve) {
  const double norm_sq = F.norm_sq();
  if (norm_sq <= 0.0) throw domain_error("distance_system: F must be non-zero");
  if (N < 2) throw domain_error("distance_system: N must be >= 2");
  if (N > sieve.limit()) throw domain_error("distance_system: N exceeds sieve limit");

  const auto modes = support_modes(F);
  const ModeKernel kernel(S, modes, sieve);
  const detail::FgLogEvaluator fev(f, sieve);
  std::vector<double> weights;
  for (i64 j : modes) weights.push_back(std::norm(F.coeff(j)));

  std::vector<std::complex<double>> vals(modes.size());
  double sum = 0.0;
  for (i64 p : sieve.primes()) {
    if (p > N) break;
    kernel.eval(p, vals.data());
    const std::complex<double> fp = std::conj(fev.eval_value(p));
    double re = 0.0;
    for (size_t k = 0; k < modes.size(); ++k) re += weights[k] * (vals[k] * fp).real();
    sum += (norm_sq - re) / static_cast<double>(p);
  }
  return std::sqrt(std::max(0.0, sum));
}

double wm_average(const MultSystem& S, const ModeFunction& F, i64 N, const SieveTable& sieve) {
  if (N < 1) throw domain_error("wm_average: N must be >= 1");
  if (N > sieve.limit()) throw domain_error("wm_average: N exceeds sieve limit");
  const auto modes = support_modes(F);
  const ModeKernel kernel(S, modes, sieve);
  std::vector<double> weights;
  for (i64 j : modes) weights.push_back(std::norm(F.coeff(j)));
  const double mass0 = std::norm(F.coeff(0));

  const i64 schedule[1] = {N};
  auto sums = detail::blocked_sums(
      1, schedule, 1, [&](i64 n, std::complex<double>* acc) {
        std::complex<double> vals[64];
        std::vector<std::complex<double>> big;
        std::complex<double>* v = vals;
        if (modes.size() > 64) {
          big.resize(modes.size());
          v = big.data();
        }
        kernel.eval(n, v);
        std::complex<double> inner = 0.0;
        for (size_t k = 0; k < modes.size(); ++k) inner += weights[k] * v[k];
        acc[0] += std::abs(inner - mass0);
      });
  return sums[0][0].real() / static_cast<double>(N);
}

std::vector<SpectralAtom> spectral_measure(const MultSystem& S, const ModeFunction& F) {
  std::vector<SpectralAtom> atoms;
  for (const auto& [j, c] : F.coeffs)
    atoms.push_back({j, S.mode_multiplier(j), std::norm(c)});
  return atoms;
}

Classification classify_system(const MultSystem& S) {
  Classification cl;
  cl.pretentiously_weak_mixing = false;  // products of rotations are again rotations

  if (S.kind() == MultSystem::Kind::Rotation) {
    const FgMultFunction one = FgMultFunction::one();
    std::vector<i64> powers;
    if (S.space().kind == ModeSpace::Kind::Cyclic) {
      for (i64 j = 1; j < S.space().order; ++j) powers.push_back(j);
    } else {
      cl.band_limited = true;
      cl.band = S.space().band;
      for (i64 j = 1; j <= S.space().band; ++j) powers.push_back(j);
    }
    cl.pretentiously_ergodic = true;
    cl.aperiodic = true;
    for (i64 j : powers) {
      const FgMultFunction fj = S.generator().power(j);
      if (distance_is_finite(fj, one).finite) cl.pretentiously_ergodic = false;
      if (!is_aperiodic_fn(fj)) cl.aperiodic = false;
    }
    return cl;
  }

  // Skew T^a over a rotation base: decided exactly from the base spectrum
  // and the prime values of a.
  const AddSystem& base = S.base();
  const FgAddFunction& a = S.additive_part();
  if (!base.ergodic()) return cl;

  if (!base.angle.rational) {
    // every non-trivial eigenvalue j*beta is irrational, so both conditions
    // reduce to a(p) != 0 for many primes
    const bool nz = a.nonzero_for_many_primes();
    cl.pretentiously_ergodic = nz;
    cl.aperiodic = nz;
    return cl;
  }

  cl.pretentiously_ergodic = true;
  cl.aperiodic = true;
  for (const RationalPhase& alpha : sigma_rat(base)) {
    if (alpha.is_zero()) continue;
    UnitPhase u;
    u.rational = true;
    u.rat = alpha;
    const FgMultFunction ea = a.exponential(u);
    if (distance_is_finite(ea, FgMultFunction::one()).finite) cl.pretentiously_ergodic = false;
    if (!is_aperiodic_fn(ea)) cl.aperiodic = false;
  }
  return cl;
}

std::vector<RationalPhase> sigma_pr_rat_tilde(const MultSystem& S) {
  std::set<i64> conductors;
  for (i64 j : S.space().modes()) {
    const auto res = pretends_character(S.mode_multiplier(j));
    if (res) conductors.insert(res->chi.conductor());
  }
  std::set<RationalPhase> out;
  out.insert(RationalPhase(0, 1));
  for (i64 q : conductors) {
    if (q <= 1) continue;
    for (i64 r = 1; r < q; ++r)
      if (std::gcd(r, q) == 1) out.insert(RationalPhase(r, q));
  }
  return {out.begin(), out.end()};
}

AperiodicityTriple aperiodicity_equiv_quantities(const MultSystem& S, const ModeFunction& F,
                                                 i64 q, i64 N, const SieveTable& sieve) {
  if (q < 1 || N < q) throw domain_error("aperiodicity quantities: need N >= q >= 1");
  if (N + q > sieve.limit())
    throw domain_error("aperiodicity quantities: sieve must cover N + q");

  const auto modes = support_modes(F);
  const ModeKernel kernel(S, modes, sieve);
  const std::complex<double> mean = F.coeff(0);

  std::vector<std::complex<double>> vals(modes.size());
  auto mode_error = [&](const std::vector<std::complex<double>>& avg,
                        std::complex<double> target0) {
    double err = 0.0;
    for (size_t k = 0; k < modes.size(); ++k) {
      std::complex<double> t = modes[k] == 0 ? target0 : 0.0;
      err += std::norm(F.coeff(modes[k]) * avg[k] - t);
    }
    return std::sqrt(err);
  };

  AperiodicityTriple out;

  // (i) progression averages along qn + r
  const i64 K = N / q;
  for (i64 r = 1; r <= q; ++r) {
    std::vector<std::complex<double>> acc(modes.size(), 0.0);
    for (i64 n = 1; n <= K; ++n) {
      kernel.eval(q * n + r, vals.data());
      for (size_t k = 0; k < modes.size(); ++k) acc[k] += vals[k];
    }
    for (auto& x : acc) x /= static_cast<double>(K);
    out.progression = std::max(out.progression, mode_error(acc, mean));
  }

  // (ii) e(rn/q)-twisted averages
  for (i64 r = 1; r <= q; ++r) {
    std::vector<std::complex<double>> twist(static_cast<size_t>(q));
    for (i64 s = 0; s < q; ++s) twist[static_cast<size_t>(s)] = RationalPhase(r * s, q).value();
    std::vector<std::complex<double>> acc(modes.size(), 0.0);
    for (i64 n = 1; n <= N; ++n) {
      kernel.eval(n, vals.data());
      const auto w = twist[static_cast<size_t>(n % q)];
      for (size_t k = 0; k < modes.size(); ++k) acc[k] += w * vals[k];
    }
    for (auto& x : acc) x /= static_cast<double>(N);
    out.twisted = std::max(out.twisted, mode_error(acc, r % q == 0 ? mean : 0.0));
  }

  // (iii) character-twisted averages
  const auto chars = characters_mod(q);
  const double phi_q = static_cast<double>(chars.size());
  for (const auto& chi : chars) {
    std::vector<std::complex<double>> twist(static_cast<size_t>(q));
    for (i64 s = 0; s < q; ++s) twist[static_cast<size_t>(s)] = chi.value(s == 0 ? q : s);
    std::vector<std::complex<double>> acc(modes.size(), 0.0);
    for (i64 n = 1; n <= N; ++n) {
      kernel.eval(n, vals.data());
      const auto w = twist[static_cast<size_t>(n % q)];
      for (size_t k = 0; k < modes.size(); ++k) acc[k] += w * vals[k];
    }
    for (auto& x : acc) x /= static_cast<double>(N);
    out.character = std::max(out.character,
                             mode_error(acc, chi.is_principal() ? mean / phi_q : 0.0));
  }

  return out;
}

}  // namespace multsys
