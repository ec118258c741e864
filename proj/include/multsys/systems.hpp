#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <multsys/pretend.hpp>

namespace multsys {

// Fourier-mode index space of the underlying rotation group: either the
// cyclic group of a given order (modes 0..k-1) or the torus restricted to a
// declared band (modes -J..J).  Observables live entirely in this
// representation, so Haar integrals are coefficient reads and the only
// approximation axis anywhere is N.
struct ModeSpace {
  enum class Kind { Cyclic, Torus };
  Kind kind = Kind::Cyclic;
  i64 order = 1;  // Cyclic
  i64 band = 0;   // Torus

  bool valid_mode(i64 j) const {
    return kind == Kind::Cyclic ? (j >= 0 && j < order) : (j >= -band && j <= band);
  }
  std::vector<i64> modes() const;

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;
};

// Finitely supported coefficient vector c_j; ||F||_2^2 = sum |c_j|^2 and the
// mode-0 coefficient is the integral of F.
struct ModeFunction {
  ModeSpace space;
  std::map<i64, std::complex<double>> coeffs;

  static ModeFunction single_mode(ModeSpace space, i64 j, std::complex<double> c = 1.0);

  std::complex<double> coeff(i64 j) const;
  void set_coeff(i64 j, std::complex<double> c);
  std::complex<double> integral() const { return coeff(0); }
  double norm_sq() const;
  double distance_l2(const ModeFunction& other) const;
};

// Additive system: rotation by the angle beta, acting on Z_q (beta = r/q
// reduced) or on the circle (beta irrational).
struct AddSystem {
  UnitPhase angle;

  static AddSystem rotation(UnitPhase beta) { return AddSystem{beta}; }

  bool rational() const { return angle.rational; }
  // Order of the orbit closure: q for beta = r/q, 0 for the torus.
  i64 cyclic_order() const { return angle.rational ? angle.rat.den : 0; }
  bool ergodic() const;

  ModeSpace space(i64 band = 0) const;
};

// sigma_rat(T): the rational spectrum {j beta mod 1} for rational beta, {0}
// for irrational beta.
std::vector<RationalPhase> sigma_rat(const AddSystem& T);

// Multiplicative system in one of two shapes:
//   Rotation  - the multiplicative rotation x -> f(n) x by a finitely
//               generated completely multiplicative f; per-mode multiplier
//               g_j(n) = f(n)^j,
//   Skew      - T^a over an additive rotation by beta, a completely
//               additive; per-mode multiplier g_j(n) = e(j a(n) beta).
// A Torus space (irrational data) needs a declared mode band.
class MultSystem {
 public:
  enum class Kind { Rotation, Skew };

  static MultSystem rotation(FgMultFunction generator, i64 band = 0);
  static MultSystem skew(AddSystem base, FgAddFunction a, i64 band = 0);

  Kind kind() const { return kind_; }
  const ModeSpace& space() const { return space_; }
  const FgMultFunction& generator() const;
  const AddSystem& base() const;
  const FgAddFunction& additive_part() const;

  // Exact FG descriptor of the multiplier sequence of mode j.
  FgMultFunction mode_multiplier(i64 j) const;

 private:
  Kind kind_ = Kind::Rotation;
  ModeSpace space_;
  FgMultFunction generator_;  // Rotation
  AddSystem base_{};          // Skew
  FgAddFunction additive_;    // Skew
};

// Koopman action: S_n F multiplies coefficient c_j by g_j(n); the L2 norm is
// preserved exactly in the measure direction.
ModeFunction koopman_apply(const MultSystem& S, i64 n, const ModeFunction& F,
                           const SieveTable& sieve);

// Predicted limit of (1/N) sum conj(f(n)) S_n F: per mode, zero when the
// multiplier stays at infinite distance from f, otherwise the exact Euler
// product over the witness set
//   c_j prod_{p in P_j} (1 - 1/p)(1 - conj(f(p)) g_j(p)/p)^{-1}.
// weight == nullptr means f = 1.
ModeFunction predicted_limit(const MultSystem& S, const ModeFunction& F,
                             const FgMultFunction* weight = nullptr);

struct AverageTracePoint {
  i64 N = 0;
  ModeFunction average;
  double l2_error = 0.0;  // distance to the predicted limit
};

// Weighted ergodic averages along an increasing N-schedule, exact in the
// measure direction.  Deterministic for any thread count.
std::vector<AverageTracePoint> ergodic_average(const MultSystem& S, const ModeFunction& F,
                                               const FgMultFunction* weight,
                                               std::span<const i64> schedule,
                                               const SieveTable& sieve, int threads = 1);

// Projection P_f: keeps exactly the modes whose multiplier pretends f.
ModeFunction project_pretentious(const MultSystem& S, const ModeFunction& F,
                                 const FgMultFunction& f);

// Splitting into the pretentious-rational part (modes whose multiplier
// pretends some Dirichlet character) and the aperiodic complement; the parts
// have disjoint supports and sum to F coefficient-exactly.
struct RationalAperiodicSplit {
  ModeFunction pr_rat;
  ModeFunction aperiodic;
};
RationalAperiodicSplit project_rational_aperiodic(const MultSystem& S, const ModeFunction& F);

// Distance between the action S and the function f with respect to F:
//   ( sum_{p<=N} (||F||^2 - Re sum_j |c_j|^2 g_j(p) conj(f(p))) / p )^{1/2}.
double distance_system(const MultSystem& S, const ModeFunction& F, const FgMultFunction& f,
                       i64 N, const SieveTable& sieve);

// Empirical weak-mixing diagnostic
//   (1/N) sum_n | sum_j |c_j|^2 g_j(n) - |c_0|^2 |.
double wm_average(const MultSystem& S, const ModeFunction& F, i64 N, const SieveTable& sieve);

// Atomic spectral measure of F: one atom per supported mode, carrying the FG
// descriptor of the multiplier and weight |c_j|^2.
struct SpectralAtom {
  i64 mode = 0;
  FgMultFunction multiplier;
  double weight = 0.0;
};
std::vector<SpectralAtom> spectral_measure(const MultSystem& S, const ModeFunction& F);

struct Classification {
  bool pretentiously_ergodic = false;
  bool aperiodic = false;
  bool pretentiously_weak_mixing = false;
  bool band_limited = false;  // verdict restricted to |j| <= band (torus rotations)
  i64 band = 0;
};

// Rotation by f on a space of order k: pretentiously ergodic iff
// D(f^j, 1) = infinity for 0 < j < k, aperiodic iff every such power is an
// aperiodic function; torus rotations are classified over the declared band.
// Skew systems T^a over a rotation base are decided exactly from the base
// spectrum and the values a(p).  Product-of-rotation spaces are never
// pretentiously weak-mixing.
Classification classify_system(const MultSystem& S);

// sigma~_pr.rat(S): {0} together with every r/q in lowest terms such that
// some mode multiplier pretends a character of conductor q.
std::vector<RationalPhase> sigma_pr_rat_tilde(const MultSystem& S);

// The three equivalent empirical aperiodicity quantities for modulus q at
// horizon N (sup over r resp. over characters mod q):
//   progression: || (1/K) sum_{n<=K} S_{qn+r} F - int F ||_2
//   twisted:     || (1/N) sum e(rn/q) S_n F - 1_{q|r} int F ||_2
//   character:   || (1/N) sum chi(n) S_n F - 1_{chi principal} int F / phi(q) ||_2
struct AperiodicityTriple {
  double progression = 0.0;
  double twisted = 0.0;
  double character = 0.0;
};
AperiodicityTriple aperiodicity_equiv_quantities(const MultSystem& S, const ModeFunction& F,
                                                 i64 q, i64 N, const SieveTable& sieve);

}  // namespace multsys
