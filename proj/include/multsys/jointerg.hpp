#pragma once

#include <span>
#include <vector>

#include <multsys/systems.hpp>

namespace multsys {

// Joint-ergodicity verdict: T and S are jointly ergodic exactly when the
// rational spectrum of T meets the pretentious rational spectrum of S only
// in 0.
struct JointVerdict {
  bool jointly_ergodic = false;
  std::vector<RationalPhase> sigma_rat_T;
  std::vector<RationalPhase> sigma_tilde_S;
  std::vector<RationalPhase> intersection;
};

// Preconditions: T ergodic and non-trivial (beta irrational, or rational
// with denominator > 1), S pretentiously ergodic.
JointVerdict decide_joint(const AddSystem& T, const MultSystem& S);

struct JointTracePoint {
  i64 N = 0;
  double l2_error = 0.0;  // || (1/N) sum T^n F . S_n G - int F int G ||_2
};

// Empirical joint correlation averages over the product modes (j, l); F
// lives on T's space, G on S's space, and nothing beyond the product measure
// is assumed (T and S need not commute).
std::vector<JointTracePoint> joint_average(const AddSystem& T, const MultSystem& S,
                                           const ModeFunction& F, const ModeFunction& G,
                                           std::span<const i64> schedule,
                                           const SieveTable& sieve, i64 T_band = 0,
                                           int threads = 1);

// (1/N) sum_{n<=N} mu(A cap T1^{-n} A cap T2^{-a(n)} A) with mu uniform on
// Z_k; T1, T2 are rotations by step1, step2 on Z_k.  Computed exactly per n
// from cyclic shifts.
double recurrence_average(i64 k, i64 step1, i64 step2, const FgAddFunction& a,
                          const std::vector<i64>& A, i64 N, const SieveTable& sieve);

// Same with T1 (and T2 defaulting to T1) given as rational rotations.
double recurrence_average(const AddSystem& T1, const AddSystem* T2, const FgAddFunction& a,
                          const std::vector<i64>& A, i64 N, const SieveTable& sieve);

// Integer set with O(1) membership and a computable upper density over a
// declared horizon.
struct IntegerSetSpec {
  enum class Kind { ResidueUnion, Explicit, Threshold };

  Kind kind = Kind::ResidueUnion;
  i64 horizon = 0;
  i64 modulus = 1;             // ResidueUnion
  std::vector<i64> residues;   // ResidueUnion: sorted, in [0, modulus)
  std::vector<i64> members;    // Explicit: sorted members in [1, horizon]
  i64 threshold = 1;           // Threshold: {n : n >= threshold}

  static IntegerSetSpec residue_union(i64 modulus, std::vector<i64> residues, i64 horizon);
  static IntegerSetSpec explicit_set(std::vector<i64> members, i64 horizon);
  static IntegerSetSpec threshold_rule(i64 threshold, i64 horizon);

  // Membership; anything beyond the horizon is a non-member.
  bool contains(i64 n) const;

  // limsup of |E cap [1, M]| / M over the dyadic prefixes M, M/2, M/4, ...
  // of the horizon.
  double upper_density() const;
};

// |{(n, m) in [1,N] x [1,M] : m, m+n, m+Omega(n) all in E}| / (N M).
double count_configurations(const IntegerSetSpec& E, i64 N, i64 M, const SieveTable& sieve);

}  // namespace multsys
