#pragma once

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <numeric>

#include <multsys/errors.hpp>

namespace multsys {

using i64 = std::int64_t;

// Point e(num/den) on the unit circle, kept reduced with 0 <= num < den.
// Addition and integer scaling are exact integer arithmetic; the complex
// embedding happens only when value() is called.
struct RationalPhase {
  i64 num = 0;
  i64 den = 1;

  RationalPhase() = default;
  RationalPhase(i64 n, i64 d) {
    if (d == 0) throw domain_error("RationalPhase: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    n %= d;
    if (n < 0) n += d;
    const i64 g = std::gcd(n, d);
    num = n / g;
    den = d / g;
  }

  bool is_zero() const { return num == 0; }

  RationalPhase plus(const RationalPhase& o) const {
    const i64 l = std::lcm(den, o.den);
    const auto n = static_cast<__int128>(num) * (l / den) +
                   static_cast<__int128>(o.num) * (l / o.den);
    return RationalPhase(static_cast<i64>(n % l), l);
  }

  RationalPhase times(i64 k) const {
    const auto n = static_cast<__int128>(num) * k;
    return RationalPhase(static_cast<i64>(((n % den) + den) % den), den);
  }

  RationalPhase negated() const { return RationalPhase(den - num, den); }

  double angle() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::complex<double> value() const {
    // exact values on the axes keep identity tests clean
    if (den == 1) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 1 ? std::complex<double>{0.0, 1.0}
                                  : std::complex<double>{0.0, -1.0};
    return std::polar(1.0, 2.0 * M_PI * angle());
  }

  friend bool operator==(const RationalPhase&, const RationalPhase&) = default;
  friend auto operator<=>(const RationalPhase& a, const RationalPhase& b) {
    // compare as fractions num/den
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

// Unit-circle phase that is either an exact rational e(r/q) or an irrational
// carrier e(alpha).  Irrational carriers are opaque: two compare equal only
// when their doubles are identical, and an irrational never equals a rational.
struct UnitPhase {
  bool rational = true;
  RationalPhase rat{};
  double alpha = 0.0;  // valid when !rational, in (0,1)

  static UnitPhase from_rational(i64 num, i64 den) {
    UnitPhase u;
    u.rational = true;
    u.rat = RationalPhase(num, den);
    return u;
  }

  static UnitPhase from_irrational(double a) {
    if (!std::isfinite(a)) throw domain_error("UnitPhase: non-finite carrier");
    a -= std::floor(a);
    UnitPhase u;
    u.rational = false;
    u.alpha = a;
    return u;
  }

  static UnitPhase one() { return from_rational(0, 1); }

  bool is_one() const { return rational && rat.is_zero(); }

  UnitPhase times(i64 k) const {
    if (k == 0) return one();
    if (rational) {
      UnitPhase u;
      u.rational = true;
      u.rat = rat.times(k);
      return u;
    }
    return from_irrational(static_cast<double>(k) * alpha);
  }

  UnitPhase plus(const UnitPhase& o) const {
    if (rational && o.rational) {
      UnitPhase u;
      u.rational = true;
      u.rat = rat.plus(o.rat);
      return u;
    }
    return from_irrational(angle() + o.angle());
  }

  UnitPhase conj() const { return times(-1); }

  double angle() const { return rational ? rat.angle() : alpha; }

  std::complex<double> value() const {
    return rational ? rat.value() : std::polar(1.0, 2.0 * M_PI * alpha);
  }

  friend bool operator==(const UnitPhase& a, const UnitPhase& b) {
    if (a.rational != b.rational) return false;
    return a.rational ? a.rat == b.rat : a.alpha == b.alpha;
  }
};

}  // namespace multsys
