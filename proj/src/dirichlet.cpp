#include <multsys/dirichlet.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace multsys {

namespace {

void check_modulus(i64 q, i64 bound) {
  if (q < 1) throw domain_error("character modulus must be positive");
  if (q > bound)
    throw resource_error("character modulus " + std::to_string(q) +
                         " exceeds configured bound " + std::to_string(bound));
}

std::vector<i64> prime_factors_of(i64 n) {
  std::vector<i64> ps;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

i64 primitive_root_mod_prime(i64 p) {
  if (p == 2) return 1;
  const auto qs = prime_factors_of(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 qf : qs) {
      if (mod_pow(g, (p - 1) / qf, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw domain_error("no primitive root found (not an odd prime?)");
}

// One cyclic factor of (Z/q)*, restricted to a prime-power divisor pk of q.
struct Component {
  i64 pk = 1;
  i64 order = 1;
  std::vector<i64> dlog;  // indexed by residue mod pk; -1 where not coprime
};

struct CharacterGroup {
  i64 q = 1;
  i64 phi = 1;
  std::vector<Component> comps;
};

CharacterGroup build_group(i64 q) {
  CharacterGroup G;
  G.q = q;
  i64 rest = q;
  // the 2-part first
  int e2 = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++e2;
  }
  const i64 pk2 = i64(1) << e2;
  if (e2 == 2) {
    Component c;
    c.pk = 4;
    c.order = 2;
    c.dlog.assign(4, -1);
    c.dlog[1] = 0;
    c.dlog[3] = 1;
    G.comps.push_back(std::move(c));
  } else if (e2 >= 3) {
    // (Z/2^e)* = <-1> x <5>
    Component sign, five;
    sign.pk = five.pk = pk2;
    sign.order = 2;
    five.order = pk2 / 4;
    sign.dlog.assign(static_cast<size_t>(pk2), -1);
    five.dlog.assign(static_cast<size_t>(pk2), -1);
    i64 v = 1;
    for (i64 s = 0; s < five.order; ++s) {
      sign.dlog[static_cast<size_t>(v)] = 0;
      five.dlog[static_cast<size_t>(v)] = s;
      const i64 w = pk2 - v;
      sign.dlog[static_cast<size_t>(w)] = 1;
      five.dlog[static_cast<size_t>(w)] = s;
      v = (v * 5) % pk2;
    }
    G.comps.push_back(std::move(sign));
    G.comps.push_back(std::move(five));
  }
  // odd prime powers, ascending
  for (i64 p = 3; rest > 1; p += 2) {
    if (p * p > rest) p = rest;  // what is left is prime
    if (rest % p != 0) continue;
    i64 pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    Component c;
    c.pk = pk;
    c.order = pk / p * (p - 1);
    i64 g = primitive_root_mod_prime(p);
    if (pk > p && mod_pow(g, p - 1, p * p) == 1) g += p;
    c.dlog.assign(static_cast<size_t>(pk), -1);
    i64 x = 1;
    for (i64 s = 0; s < c.order; ++s) {
      c.dlog[static_cast<size_t>(x)] = s;
      x = static_cast<i64>((static_cast<__int128>(x) * g) % pk);
    }
    G.comps.push_back(std::move(c));
  }
  for (const auto& c : G.comps) G.phi *= c.order;
  return G;
}

DirichletCharacter character_from_exponents(const CharacterGroup& G,
                                            const std::vector<i64>& exps) {
  std::vector<std::optional<RationalPhase>> values(static_cast<size_t>(G.q));
  for (i64 a = 1; a <= G.q; ++a) {
    if (std::gcd(a, G.q) != 1) continue;
    RationalPhase phase(0, 1);
    for (size_t i = 0; i < G.comps.size(); ++i) {
      const auto& c = G.comps[i];
      const i64 s = c.dlog[static_cast<size_t>(a % c.pk)];
      phase = phase.plus(RationalPhase(exps[i] * s, c.order));
    }
    values[static_cast<size_t>(a - 1)] = phase;
  }
  return DirichletCharacter::trusted(G.q, std::move(values));
}

}  // namespace

DirichletCharacter::DirichletCharacter(i64 modulus,
                                       std::vector<std::optional<RationalPhase>> values)
    : modulus_(modulus), values_(std::move(values)) {
  if (modulus_ < 1) throw validation_error("character: modulus must be positive");
  if (values_.size() != static_cast<size_t>(modulus_))
    throw validation_error("character: value table must have exactly q entries");
  for (i64 a = 1; a <= modulus_; ++a) {
    const bool coprime = std::gcd(a, modulus_) == 1;
    if (coprime != values_[static_cast<size_t>(a - 1)].has_value())
      throw validation_error("character: zero pattern wrong at residue " + std::to_string(a));
  }
  if (!phase_at(1).is_zero()) throw validation_error("character: chi(1) must be 1");
  for (i64 a = 1; a <= modulus_; ++a) {
    if (is_zero_at(a)) continue;
    for (i64 b = a; b <= modulus_; ++b) {
      if (is_zero_at(b)) continue;
      const i64 ab = static_cast<i64>((static_cast<__int128>(a) * b) % modulus_);
      if (!(phase_at(a).plus(phase_at(b)) == phase_at(ab)))
        throw validation_error("character: not multiplicative at (" + std::to_string(a) + "," +
                               std::to_string(b) + ")");
    }
  }
}

DirichletCharacter DirichletCharacter::trusted(
    i64 modulus, std::vector<std::optional<RationalPhase>> values) {
  DirichletCharacter chi;
  chi.modulus_ = modulus;
  chi.values_ = std::move(values);
  return chi;
}

bool DirichletCharacter::is_zero_at(i64 n) const {
  const i64 idx = ((n - 1) % modulus_ + modulus_) % modulus_;
  return !values_[static_cast<size_t>(idx)].has_value();
}

RationalPhase DirichletCharacter::phase_at(i64 n) const {
  const i64 idx = ((n - 1) % modulus_ + modulus_) % modulus_;
  const auto& v = values_[static_cast<size_t>(idx)];
  if (!v) throw domain_error("character value is zero at this residue");
  return *v;
}

std::complex<double> DirichletCharacter::value(i64 n) const {
  const i64 idx = ((n - 1) % modulus_ + modulus_) % modulus_;
  const auto& v = values_[static_cast<size_t>(idx)];
  return v ? v->value() : std::complex<double>{0.0, 0.0};
}

bool DirichletCharacter::is_principal() const {
  for (const auto& v : values_)
    if (v && !v->is_zero()) return false;
  return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  auto values = values_;
  for (auto& v : values)
    if (v) v = v->negated();
  return trusted(modulus_, std::move(values));
}

i64 DirichletCharacter::conductor() const {
  for (i64 d = 1; d <= modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool induced = true;
    for (i64 a = 1; a <= modulus_ && induced; ++a) {
      if (std::gcd(a, modulus_) != 1) continue;
      if ((a - 1) % d == 0 && !phase_at(a).is_zero()) induced = false;
    }
    if (induced) return d;
  }
  return modulus_;
}

std::vector<DirichletCharacter> characters_mod(i64 q, i64 bound) {
  check_modulus(q, bound);
  const CharacterGroup G = build_group(q);
  std::vector<DirichletCharacter> chars;
  chars.reserve(static_cast<size_t>(G.phi));
  std::vector<i64> exps(G.comps.size(), 0);
  for (i64 k = 0; k < G.phi; ++k) {
    // mixed-radix digits of k, first component most significant
    i64 rem = k;
    for (size_t i = G.comps.size(); i-- > 0;) {
      exps[i] = rem % G.comps[i].order;
      rem /= G.comps[i].order;
    }
    chars.push_back(character_from_exponents(G, exps));
  }
  return chars;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  std::complex<double> s = 0.0;
  for (i64 m = 1; m <= q; ++m) {
    if (chi.is_zero_at(m)) continue;
    s += RationalPhase(m, q).plus(chi.phase_at(m)).value();
  }
  return s;
}

FgMultFunction modified_character(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  if (q == 1) return FgMultFunction::one();

  FgMultFunction f;
  // residue classes mod q grouped by phase
  std::vector<std::pair<RationalPhase, std::vector<i64>>> groups;
  for (i64 a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const RationalPhase ph = chi.phase_at(a);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == ph; });
    if (it == groups.end())
      groups.push_back({ph, {a}});
    else
      it->second.push_back(a);
  }
  for (auto& [ph, rs] : groups) {
    UnitPhase u;
    u.rational = true;
    u.rat = ph;
    f.classes.push_back({PrimeSet::residue_classes(q, std::move(rs)), u});
  }
  // primes dividing q carry the value 1
  f.classes.push_back({PrimeSet::explicit_set(prime_factors_of(q)), UnitPhase::one()});
  f.validate();
  return f;
}

double verify_fourier_expansion(const DirichletCharacter& chi, i64 n) {
  if (!chi.is_primitive())
    throw domain_error("verify_fourier_expansion: the expansion requires a primitive character");
  const i64 q = chi.modulus();
  const DirichletCharacter bar = chi.conjugate();
  std::complex<double> rhs = 0.0;
  for (i64 m = 1; m <= q; ++m) {
    if (bar.is_zero_at(m)) continue;
    rhs += bar.phase_at(m).plus(RationalPhase(m * (n % q), q)).value();
  }
  rhs /= gauss_sum(bar);
  return std::abs(chi.value(n) - rhs);
}

std::complex<double> twisted_mean_limit(i64 r, i64 q, const DirichletCharacter& chi) {
  if (q < 1) throw domain_error("twisted_mean_limit: q must be positive");
  if (std::gcd(((r % q) + q) % q, q) != 1)
    throw domain_error("twisted_mean_limit: r and q must be coprime");
  if (!chi.is_primitive()) throw domain_error("twisted_mean_limit: chi must be primitive");
  const i64 q0 = chi.modulus();
  if (q0 != q) return 0.0;
  // sum_a chi(a) e(ra/q) = conj(chi)(r) tau(chi) for primitive chi, so the
  // mean over one period is conj(chi)(r) tau(chi) / q
  const i64 rr = ((r % q) + q) % q;
  const i64 arg = rr == 0 ? 1 : rr;
  return gauss_sum(chi) * std::conj(chi.value(arg)) / static_cast<double>(q);
}

std::complex<double> twisted_character_partial_mean(i64 r, i64 q,
                                                    const DirichletCharacter& chi, i64 N) {
  if (q < 1 || N < 1) throw domain_error("twisted_character_partial_mean: bad arguments");
  const i64 rr = ((r % q) + q) % q;
  const i64 L = std::lcm(q, chi.modulus());
  std::vector<std::complex<double>> term(static_cast<size_t>(L));
  for (i64 n = 1; n <= L; ++n)
    term[static_cast<size_t>(n - 1)] =
        RationalPhase(rr * (n % q), q).value() * chi.value(n);
  std::complex<double> period = 0.0;
  for (const auto& t : term) period += t;
  const i64 reps = N / L;
  std::complex<double> total = static_cast<double>(reps) * period;
  for (i64 n = 1; n <= N % L; ++n) total += term[static_cast<size_t>(n - 1)];
  return total / static_cast<double>(N);
}

namespace {

// A multiset of rational phases sums to zero exactly when it splits into
// complete root-of-unity orbits with a common multiplicity; for the two
// indicator identities below the multiset is always of this shape.
bool is_complete_orbit_multiset(const std::vector<RationalPhase>& phases) {
  std::map<RationalPhase, i64> counts;
  for (const auto& ph : phases) counts[ph]++;
  const i64 d = static_cast<i64>(counts.size());
  if (d < 2) return false;
  const i64 mult = counts.begin()->second;
  for (const auto& [ph, c] : counts)
    if (c != mult) return false;
  for (i64 k = 0; k < d; ++k)
    if (counts.find(RationalPhase(k, d)) == counts.end()) return false;
  return true;
}

}  // namespace

bool orthogonality_identity_exact(i64 q, i64 r, i64 n, i64 bound) {
  if (std::gcd(((r % q) + q) % q, q) != 1)
    throw domain_error("orthogonality identity: gcd(r, q) must be 1");
  const bool indicator = ((n - r) % q + q) % q == 0;
  if (std::gcd(((n % q) + q) % q, q) != 1) {
    // every term is zero and n cannot be congruent to r
    return !indicator;
  }
  std::vector<RationalPhase> phases;
  for (const auto& chi : characters_mod(q, bound))
    phases.push_back(chi.phase_at(n).plus(chi.phase_at(r).negated()));
  if (indicator) {
    for (const auto& ph : phases)
      if (!ph.is_zero()) return false;
    return static_cast<i64>(phases.size()) > 0;
  }
  return is_complete_orbit_multiset(phases);
}

bool geometric_indicator_exact(i64 q, i64 r, i64 n) {
  if (q < 1) throw domain_error("geometric indicator: q must be positive");
  const bool indicator = ((n - r) % q + q) % q == 0;
  const i64 diff = ((n - r) % q + q) % q;
  std::vector<RationalPhase> phases;
  for (i64 a = 1; a <= q; ++a) phases.push_back(RationalPhase(a * diff, q));
  if (indicator) {
    for (const auto& ph : phases)
      if (!ph.is_zero()) return false;
    return true;
  }
  return is_complete_orbit_multiset(phases);
}

}  // namespace multsys
