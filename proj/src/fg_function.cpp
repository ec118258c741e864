#include <multsys/fg_function.hpp>

#include <algorithm>
#include <numeric>
#include <string>

namespace multsys {

namespace detail {

namespace {

constexpr i64 kResidueLcmCap = 1'000'000;

std::string class_label(const std::vector<PrimeSet>& cells, size_t i) {
  return "classes[" + std::to_string(i) + "] (" + cells[i].describe() + ")";
}

}  // namespace

i64 residue_lcm_of(const std::vector<PrimeSet>& cells) {
  i64 m = 1;
  for (const auto& c : cells) {
    if (!c.is_residue()) continue;
    m = std::lcm(m, c.modulus);
    if (m > kResidueLcmCap)
      throw resource_error("partition: lcm of residue moduli exceeds " +
                           std::to_string(kResidueLcmCap));
  }
  return m;
}

i64 joint_residue_lcm(i64 a, i64 b) {
  const auto m = static_cast<__int128>(a) / std::gcd(a, b) * b;
  if (m > kResidueLcmCap)
    throw resource_error("joint residue modulus exceeds " + std::to_string(kResidueLcmCap));
  return static_cast<i64>(m);
}

void validate_partition(const std::vector<PrimeSet>& cells) {
  if (cells.empty()) throw validation_error("partition: at least one class required");

  size_t default_count = 0;
  for (const auto& c : cells)
    if (c.is_default()) ++default_count;
  if (default_count > 1) throw validation_error("partition: more than one default class");

  // explicit x explicit disjointness
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_explicit()) continue;
    for (size_t j = i + 1; j < cells.size(); ++j) {
      if (!cells[j].is_explicit()) continue;
      for (i64 p : cells[i].primes) {
        if (std::binary_search(cells[j].primes.begin(), cells[j].primes.end(), p))
          throw validation_error("partition: " + class_label(cells, i) + " overlaps " +
                                 class_label(cells, j) + " at prime " + std::to_string(p));
      }
    }
  }

  // residue x residue: classes r1 mod m1 and r2 mod m2 meet iff
  // r1 = r2 (mod gcd(m1, m2)), and then they share infinitely many primes.
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_residue()) continue;
    for (size_t j = i + 1; j < cells.size(); ++j) {
      if (!cells[j].is_residue()) continue;
      const i64 g = std::gcd(cells[i].modulus, cells[j].modulus);
      for (i64 r1 : cells[i].residues) {
        for (i64 r2 : cells[j].residues) {
          if ((r1 - r2) % g == 0)
            throw validation_error("partition: " + class_label(cells, i) + " intersects " +
                                   class_label(cells, j) + " (residues " + std::to_string(r1) +
                                   " and " + std::to_string(r2) + " agree mod " +
                                   std::to_string(g) + ")");
        }
      }
    }
  }

  if (default_count == 1) return;  // the default class covers the leftovers

  // Without a default class the residue cells must cover every coprime
  // residue mod the joint modulus, and every prime dividing it must be
  // picked up explicitly or by some residue cell.
  const i64 M = residue_lcm_of(cells);
  if (M == 1)
    throw validation_error("partition: explicit classes alone cannot cover the primes");

  auto residue_covered = [&](i64 c) {
    for (const auto& cell : cells) {
      if (!cell.is_residue()) continue;
      if (std::binary_search(cell.residues.begin(), cell.residues.end(), c % cell.modulus))
        return true;
    }
    return false;
  };

  for (i64 c = 1; c < M; ++c) {
    if (std::gcd(c, M) != 1) continue;
    if (!residue_covered(c))
      throw validation_error("partition: residue class " + std::to_string(c) + " mod " +
                             std::to_string(M) + " is not covered");
  }
  for (i64 p = 2; p <= M; ++p) {
    if (M % p != 0 || !is_prime_u64(static_cast<u64>(p))) continue;
    bool covered = residue_covered(p);
    for (const auto& cell : cells)
      if (cell.is_explicit() && cell.contains_prime(p)) covered = true;
    if (!covered)
      throw validation_error("partition: prime " + std::to_string(p) + " is not covered");
  }
}

size_t class_of_prime(const std::vector<PrimeSet>& cells, i64 p) {
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].is_explicit() && cells[i].contains_prime(p)) return i;
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].is_residue() && cells[i].contains_prime(p)) return i;
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].is_default()) return i;
  throw validation_error("partition: prime " + std::to_string(p) + " matches no class");
}

size_t class_of_residue(const std::vector<PrimeSet>& cells, i64 M, i64 c) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_residue()) continue;
    if (std::binary_search(cells[i].residues.begin(), cells[i].residues.end(),
                           c % cells[i].modulus))
      return i;
  }
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].is_default()) return i;
  throw validation_error("partition: residue " + std::to_string(c) + " mod " +
                         std::to_string(M) + " matches no class");
}

bool default_is_many(const std::vector<PrimeSet>& cells) {
  bool has_default = false;
  for (const auto& c : cells) has_default |= c.is_default();
  if (!has_default) return false;
  const i64 M = residue_lcm_of(cells);
  if (M == 1) return true;
  for (i64 c = 1; c < M; ++c) {
    if (std::gcd(c, M) != 1) continue;
    bool covered = false;
    for (const auto& cell : cells) {
      if (!cell.is_residue()) continue;
      if (std::binary_search(cell.residues.begin(), cell.residues.end(), c % cell.modulus)) {
        covered = true;
        break;
      }
    }
    if (!covered) return true;  // this whole class falls through to the default
  }
  return false;
}

}  // namespace detail

namespace {

std::vector<PrimeSet> cells_of(const FgMultFunction& f) {
  std::vector<PrimeSet> cells;
  cells.reserve(f.classes.size());
  for (const auto& c : f.classes) cells.push_back(c.primes);
  return cells;
}

std::vector<PrimeSet> cells_of(const FgAddFunction& a) {
  std::vector<PrimeSet> cells;
  cells.reserve(a.classes.size());
  for (const auto& c : a.classes) cells.push_back(c.primes);
  return cells;
}

}  // namespace

void FgMultFunction::validate() const { detail::validate_partition(cells_of(*this)); }

UnitPhase FgMultFunction::phase_at_prime(i64 p) const {
  return classes[detail::class_of_prime(cells_of(*this), p)].phase;
}

UnitPhase FgMultFunction::phase_eval(i64 n, const SieveTable& sieve) const {
  const auto cells = cells_of(*this);
  UnitPhase acc = UnitPhase::one();
  sieve.visit_factors(n, [&](i64 p, int e) {
    acc = acc.plus(classes[detail::class_of_prime(cells, p)].phase.times(e));
  });
  return acc;
}

FgMultFunction FgMultFunction::power(i64 k) const {
  FgMultFunction g;
  g.classes.reserve(classes.size());
  for (const auto& c : classes) g.classes.push_back({c.primes, c.phase.times(k)});
  return g;
}

i64 FgMultFunction::residue_lcm() const { return detail::residue_lcm_of(cells_of(*this)); }

UnitPhase FgMultFunction::generic_phase(i64 M, i64 c) const {
  return classes[detail::class_of_residue(cells_of(*this), M, c)].phase;
}

bool FgMultFunction::all_phases_rational() const {
  for (const auto& c : classes)
    if (!c.phase.rational) return false;
  return true;
}

FgMultFunction FgMultFunction::times(const FgMultFunction& other) const {
  const i64 M = detail::joint_residue_lcm(residue_lcm(), other.residue_lcm());

  // exceptional primes: everything listed explicitly plus divisors of M
  std::vector<i64> special;
  for (const auto& c : classes)
    if (c.primes.is_explicit())
      special.insert(special.end(), c.primes.primes.begin(), c.primes.primes.end());
  for (const auto& c : other.classes)
    if (c.primes.is_explicit())
      special.insert(special.end(), c.primes.primes.begin(), c.primes.primes.end());
  for (i64 p = 2; p <= M; ++p)
    if (M % p == 0 && is_prime_u64(static_cast<u64>(p))) special.push_back(p);
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());

  FgMultFunction prod;
  auto add_class = [&](PrimeSet ps, UnitPhase phase) {
    prod.classes.push_back({std::move(ps), phase});
  };

  // group the special primes by combined phase
  std::vector<std::pair<UnitPhase, std::vector<i64>>> groups;
  for (i64 p : special) {
    const UnitPhase ph = phase_at_prime(p).plus(other.phase_at_prime(p));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == ph; });
    if (it == groups.end())
      groups.push_back({ph, {p}});
    else
      it->second.push_back(p);
  }
  for (auto& [ph, ps] : groups) add_class(PrimeSet::explicit_set(std::move(ps)), ph);

  if (M == 1) {
    add_class(PrimeSet::all_primes(), generic_phase(1, 1).plus(other.generic_phase(1, 1)));
  } else {
    // one residue cell per combined phase over the coprime classes mod M
    std::vector<std::pair<UnitPhase, std::vector<i64>>> rgroups;
    for (i64 c = 1; c < M; ++c) {
      if (std::gcd(c, M) != 1) continue;
      const UnitPhase ph = generic_phase(M, c).plus(other.generic_phase(M, c));
      auto it = std::find_if(rgroups.begin(), rgroups.end(),
                             [&](const auto& g) { return g.first == ph; });
      if (it == rgroups.end())
        rgroups.push_back({ph, {c}});
      else
        it->second.push_back(c);
    }
    for (auto& [ph, rs] : rgroups)
      add_class(PrimeSet::residue_classes(M, std::move(rs)), ph);
  }
  prod.validate();
  return prod;
}

FgMultFunction FgMultFunction::one() { return constant(UnitPhase::one()); }

FgMultFunction FgMultFunction::constant(UnitPhase phase) {
  FgMultFunction f;
  f.classes.push_back({PrimeSet::all_primes(), phase});
  return f;
}

FgMultFunction FgMultFunction::liouville() { return constant(UnitPhase::from_rational(1, 2)); }

FgMultFunction FgMultFunction::liouville_restricted(PrimeSet P) {
  if (P.is_default()) return liouville();
  FgMultFunction f;
  f.classes.push_back({std::move(P), UnitPhase::from_rational(1, 2)});
  f.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
  f.validate();
  return f;
}

void FgAddFunction::validate() const { detail::validate_partition(cells_of(*this)); }

i64 FgAddFunction::value_at_prime(i64 p) const {
  return classes[detail::class_of_prime(cells_of(*this), p)].value;
}

i64 FgAddFunction::eval(i64 n, const SieveTable& sieve) const {
  const auto cells = cells_of(*this);
  i64 acc = 0;
  sieve.visit_factors(n, [&](i64 p, int e) {
    acc += static_cast<i64>(e) * classes[detail::class_of_prime(cells, p)].value;
  });
  return acc;
}

FgMultFunction FgAddFunction::exponential(const UnitPhase& alpha) const {
  FgMultFunction f;
  f.classes.reserve(classes.size());
  for (const auto& c : classes) f.classes.push_back({c.primes, alpha.times(c.value)});
  return f;
}

bool FgAddFunction::nonzero_for_many_primes() const {
  for (const auto& c : classes) {
    if (c.value == 0) continue;
    if (c.primes.is_residue()) return true;
    if (c.primes.is_default() && detail::default_is_many(cells_of(*this))) return true;
  }
  return false;
}

FgAddFunction FgAddFunction::big_omega() {
  FgAddFunction a;
  a.classes.push_back({PrimeSet::all_primes(), 1});
  return a;
}

FgAddFunction FgAddFunction::big_omega_restricted(PrimeSet P) {
  if (P.is_default()) return big_omega();
  FgAddFunction a;
  a.classes.push_back({std::move(P), 1});
  a.classes.push_back({PrimeSet::all_primes(), 0});
  a.validate();
  return a;
}

}  // namespace multsys
