#include <multsys/jointerg.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernels.hpp"
#include "mode_kernel.hpp"

namespace multsys {

JointVerdict decide_joint(const AddSystem& T, const MultSystem& S) {
  if (T.angle.rational && T.angle.rat.den == 1)
    throw domain_error("decide_joint: T must be a non-trivial ergodic rotation");
  const Classification cl = classify_system(S);
  if (!cl.pretentiously_ergodic)
    throw domain_error("decide_joint: S must be pretentiously ergodic");

  JointVerdict v;
  v.sigma_rat_T = sigma_rat(T);
  v.sigma_tilde_S = sigma_pr_rat_tilde(S);
  std::set_intersection(v.sigma_rat_T.begin(), v.sigma_rat_T.end(), v.sigma_tilde_S.begin(),
                        v.sigma_tilde_S.end(), std::back_inserter(v.intersection));
  v.jointly_ergodic =
      v.intersection.size() == 1 && v.intersection.front() == RationalPhase(0, 1);
  return v;
}

std::vector<JointTracePoint> joint_average(const AddSystem& T, const MultSystem& S,
                                           const ModeFunction& F, const ModeFunction& G,
                                           std::span<const i64> schedule,
                                           const SieveTable& sieve, i64 T_band, int threads) {
  if (schedule.empty()) throw domain_error("joint_average: empty schedule");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1]))
      throw domain_error("joint_average: schedule must be positive and increasing");
  }
  if (schedule.back() > sieve.limit())
    throw domain_error("joint_average: schedule exceeds sieve limit");
  const ModeSpace t_space = T.space(T_band > 0 ? T_band : F.space.band);
  if (!(F.space == t_space)) throw domain_error("joint_average: F does not live on T's space");

  std::vector<i64> fmodes;
  for (const auto& [j, c] : F.coeffs) fmodes.push_back(j);
  std::vector<i64> gmodes;
  for (const auto& [l, c] : G.coeffs) gmodes.push_back(l);

  const detail::ModeKernel kernel(S, gmodes, sieve);
  const size_t FK = fmodes.size(), GK = gmodes.size();
  if (FK > 32 || GK > 32)
    throw resource_error("joint_average: more than 32 supported modes per factor");
  const i64 K = static_cast<i64>(FK * GK);

  // twist tables for the additive factor
  const bool t_rational = T.angle.rational;
  const i64 q = t_rational ? T.angle.rat.den : 1;
  const i64 r = t_rational ? T.angle.rat.num : 0;
  const double beta = t_rational ? 0.0 : T.angle.alpha;
  std::vector<std::complex<double>> troots(static_cast<size_t>(q));
  for (i64 s = 0; s < q; ++s)
    troots[static_cast<size_t>(s)] =
        std::polar(1.0, 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(q));

  auto sums = detail::blocked_sums(
      K, schedule, threads, [&](i64 n, std::complex<double>* acc) {
        std::complex<double> tv[32], gv[32];
        if (t_rational) {
          const i64 t = (n % q) * (r % q) % q;
          for (size_t a = 0; a < FK; ++a) {
            const i64 jm = ((fmodes[a] % q) + q) % q;
            tv[a] = troots[static_cast<size_t>(jm * t % q)];
          }
        } else {
          for (size_t a = 0; a < FK; ++a) {
            const double x = std::fmod(static_cast<double>(fmodes[a]) * beta *
                                           static_cast<double>(n),
                                       1.0);
            tv[a] = std::polar(1.0, 2.0 * M_PI * x);
          }
        }
        kernel.eval(n, gv);
        for (size_t a = 0; a < FK; ++a)
          for (size_t b = 0; b < GK; ++b) acc[a * GK + b] += tv[a] * gv[b];
      });

  const std::complex<double> target = F.coeff(0) * G.coeff(0);
  std::vector<JointTracePoint> trace;
  trace.reserve(schedule.size());
  for (size_t si = 0; si < schedule.size(); ++si) {
    double err = 0.0;
    for (size_t a = 0; a < FK; ++a) {
      for (size_t b = 0; b < GK; ++b) {
        std::complex<double> avg = F.coeff(fmodes[a]) * G.coeff(gmodes[b]) *
                                   sums[si][a * GK + b] /
                                   static_cast<double>(schedule[si]);
        if (fmodes[a] == 0 && gmodes[b] == 0) avg -= target;
        err += std::norm(avg);
      }
    }
    trace.push_back({schedule[si], std::sqrt(err)});
  }
  return trace;
}

double recurrence_average(i64 k, i64 step1, i64 step2, const FgAddFunction& a,
                          const std::vector<i64>& A, i64 N, const SieveTable& sieve) {
  if (k < 1 || k > 4096) throw domain_error("recurrence_average: state space order out of range");
  if (A.empty()) throw domain_error("recurrence_average: A must be non-empty");
  if (N < 1 || N > sieve.limit())
    throw domain_error("recurrence_average: N out of range for the sieve");

  std::vector<std::uint8_t> mask(static_cast<size_t>(k), 0);
  for (i64 x : A) {
    if (x < 0 || x >= k) throw domain_error("recurrence_average: A must live in Z_k");
    mask[static_cast<size_t>(x)] = 1;
  }

  // count3[u][v] = |{x : x, x+u, x+v all in A}| so each n costs O(1)
  std::vector<i64> count3(static_cast<size_t>(k * k), 0);
  for (i64 u = 0; u < k; ++u)
    for (i64 v = 0; v < k; ++v) {
      i64 c = 0;
      for (i64 x = 0; x < k; ++x)
        c += mask[static_cast<size_t>(x)] & mask[static_cast<size_t>((x + u) % k)] &
             mask[static_cast<size_t>((x + v) % k)];
      count3[static_cast<size_t>(u * k + v)] = c;
    }

  const detail::AddEvaluator aev(a, sieve);
  const i64 s1 = ((step1 % k) + k) % k;
  const i64 s2 = ((step2 % k) + k) % k;
  i64 total = 0;
  i64 u = 0;
  for (i64 n = 1; n <= N; ++n) {
    u += s1;
    if (u >= k) u -= k;
    const i64 v = ((aev.eval(n) * s2) % k + k) % k;
    total += count3[static_cast<size_t>(u * k + v)];
  }
  return static_cast<double>(total) / (static_cast<double>(N) * static_cast<double>(k));
}

double recurrence_average(const AddSystem& T1, const AddSystem* T2, const FgAddFunction& a,
                          const std::vector<i64>& A, i64 N, const SieveTable& sieve) {
  if (!T1.angle.rational)
    throw domain_error("recurrence_average: T1 must be a rational rotation on Z_k");
  const i64 k = T1.angle.rat.den;
  i64 s2 = T1.angle.rat.num;
  if (T2) {
    if (!T2->angle.rational || T2->angle.rat.den != k)
      throw domain_error("recurrence_average: T2 must rotate the same Z_k");
    s2 = T2->angle.rat.num;
  }
  return recurrence_average(k, T1.angle.rat.num, s2, a, A, N, sieve);
}

IntegerSetSpec IntegerSetSpec::residue_union(i64 modulus, std::vector<i64> residues,
                                             i64 horizon) {
  if (modulus < 1) throw validation_error("integer set: modulus must be positive");
  if (horizon < 1) throw validation_error("integer set: horizon must be positive");
  for (i64& r : residues) {
    r %= modulus;
    if (r < 0) r += modulus;
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  IntegerSetSpec E;
  E.kind = Kind::ResidueUnion;
  E.modulus = modulus;
  E.residues = std::move(residues);
  E.horizon = horizon;
  return E;
}

IntegerSetSpec IntegerSetSpec::explicit_set(std::vector<i64> members, i64 horizon) {
  if (horizon < 1) throw validation_error("integer set: horizon must be positive");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (i64 m : members)
    if (m < 1 || m > horizon)
      throw validation_error("integer set: member " + std::to_string(m) +
                             " outside [1, horizon]");
  IntegerSetSpec E;
  E.kind = Kind::Explicit;
  E.members = std::move(members);
  E.horizon = horizon;
  return E;
}

IntegerSetSpec IntegerSetSpec::threshold_rule(i64 threshold, i64 horizon) {
  if (horizon < 1) throw validation_error("integer set: horizon must be positive");
  IntegerSetSpec E;
  E.kind = Kind::Threshold;
  E.threshold = threshold;
  E.horizon = horizon;
  return E;
}

bool IntegerSetSpec::contains(i64 n) const {
  if (n < 1 || n > horizon) return false;
  switch (kind) {
    case Kind::ResidueUnion:
      return std::binary_search(residues.begin(), residues.end(), n % modulus);
    case Kind::Explicit:
      return std::binary_search(members.begin(), members.end(), n);
    case Kind::Threshold:
      return n >= threshold;
  }
  return false;
}

double IntegerSetSpec::upper_density() const {
  double best = 0.0;
  // dyadic prefixes of the horizon
  std::vector<i64> cuts;
  for (i64 M = horizon; M >= 1; M /= 2) cuts.push_back(M);
  std::sort(cuts.begin(), cuts.end());
  i64 count = 0, upto = 0;
  for (i64 M : cuts) {
    while (upto < M) {
      ++upto;
      if (contains(upto)) ++count;
    }
    best = std::max(best, static_cast<double>(count) / static_cast<double>(M));
  }
  return best;
}

double count_configurations(const IntegerSetSpec& E, i64 N, i64 M, const SieveTable& sieve) {
  if (N < 1 || M < N) throw domain_error("count_configurations: need M >= N >= 1");
  if (N > sieve.limit()) throw domain_error("count_configurations: sieve must cover N");

  // bitmask of E over [0, horizon]
  const i64 H = E.horizon;
  const size_t words = static_cast<size_t>(H / 64 + 2);
  std::vector<u64> bits(words, 0);
  for (i64 m = 1; m <= H; ++m)
    if (E.contains(m)) bits[static_cast<size_t>(m >> 6)] |= u64(1) << (m & 63);

  auto shifted_word = [&](size_t w, i64 t) -> u64 {
    // word w of the bitset shifted down by t (bit m reads bit m + t)
    const size_t base = w + static_cast<size_t>(t >> 6);
    const int off = static_cast<int>(t & 63);
    const u64 lo = base < words ? bits[base] : 0;
    if (off == 0) return lo;
    const u64 hi = base + 1 < words ? bits[base + 1] : 0;
    return (lo >> off) | (hi << (64 - off));
  };

  const i64 m_cap = std::min(M, H);
  const size_t wlimit = static_cast<size_t>(m_cap >> 6) + 1;
  i64 total = 0;
  for (i64 n = 1; n <= N; ++n) {
    const i64 t1 = n;
    const i64 t2 = sieve.big_omega(n);
    for (size_t w = 0; w < wlimit; ++w) {
      u64 x = bits[w] & shifted_word(w, t1) & shifted_word(w, t2);
      if (w == wlimit - 1) {
        const int top = static_cast<int>(m_cap & 63);
        if (top != 63) x &= (u64(2) << top) - 1;
      }
      if (w == 0) x &= ~u64(1);  // m starts at 1
      total += __builtin_popcountll(x);
    }
  }
  return static_cast<double>(total) / (static_cast<double>(N) * static_cast<double>(M));
}

}  // namespace multsys
