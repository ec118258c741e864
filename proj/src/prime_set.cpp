#include <multsys/prime_set.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace multsys {

PrimeSet PrimeSet::explicit_set(std::vector<i64> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (i64 p : ps) {
    if (p < 2 || !is_prime_u64(static_cast<u64>(p)))
      throw validation_error("PrimeSet: " + std::to_string(p) + " is not prime");
  }
  PrimeSet s;
  s.kind = Kind::Explicit;
  s.primes = std::move(ps);
  return s;
}

PrimeSet PrimeSet::residue_classes(i64 modulus, std::vector<i64> residues) {
  if (modulus < 2) throw validation_error("PrimeSet: residue modulus must be >= 2");
  for (i64& r : residues) {
    r %= modulus;
    if (r < 0) r += modulus;
    if (std::gcd(r, modulus) != 1)
      throw validation_error("PrimeSet: residue " + std::to_string(r) +
                             " is not coprime to modulus " + std::to_string(modulus));
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  if (residues.empty()) throw validation_error("PrimeSet: empty residue list");
  PrimeSet s;
  s.kind = Kind::Residue;
  s.modulus = modulus;
  s.residues = std::move(residues);
  return s;
}

PrimeSet PrimeSet::all_primes() {
  PrimeSet s;
  s.kind = Kind::Default;
  return s;
}

bool PrimeSet::contains_prime(i64 p) const {
  switch (kind) {
    case Kind::Explicit:
      return std::binary_search(primes.begin(), primes.end(), p);
    case Kind::Residue:
      return std::binary_search(residues.begin(), residues.end(), p % modulus);
    case Kind::Default:
      return true;
  }
  return false;
}

std::string PrimeSet::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Explicit: {
      os << "explicit {";
      for (size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
      os << "}";
      break;
    }
    case Kind::Residue: {
      os << "residues {";
      for (size_t i = 0; i < residues.size(); ++i) os << (i ? "," : "") << residues[i];
      os << "} mod " << modulus;
      break;
    }
    case Kind::Default:
      os << "default";
      break;
  }
  return os.str();
}

int big_omega_restricted(i64 n, const PrimeSet& P, const SieveTable& sieve) {
  int total = 0;
  sieve.visit_factors(n, [&](i64 p, int e) {
    if (P.contains_prime(p)) total += e;
  });
  return total;
}

int liouville_restricted(i64 n, const PrimeSet& P, const SieveTable& sieve) {
  return big_omega_restricted(n, P, sieve) % 2 == 0 ? 1 : -1;
}

bool is_P_free(i64 n, const PrimeSet& P, const SieveTable& sieve) {
  bool free = true;
  sieve.visit_factors(n, [&](i64 p, int) {
    if (P.contains_prime(p)) free = false;
  });
  return free;
}

double qp_density(const PrimeSet& P) {
  if (!P.is_explicit())
    throw domain_error("qp_density: only explicit finite prime sets have positive density");
  double d = 1.0;
  for (i64 p : P.primes) d *= 1.0 - 1.0 / static_cast<double>(p);
  return d;
}

double prime_reciprocal_partial(const PrimeSet& P, i64 N, const SieveTable& sieve) {
  if (N < 2) throw domain_error("prime_reciprocal_partial: N must be >= 2");
  if (N > sieve.limit()) throw domain_error("prime_reciprocal_partial: N exceeds sieve limit");
  if (P.is_explicit()) {
    double s = 0.0;
    for (i64 p : P.primes)
      if (p <= N) s += 1.0 / static_cast<double>(p);
    return s;
  }
  double s = 0.0;
  for (i64 p : sieve.primes()) {
    if (p > N) break;
    if (P.contains_prime(p)) s += 1.0 / static_cast<double>(p);
  }
  return s;
}

}  // namespace multsys
