#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <multsys/pretend.hpp>

using namespace multsys;

namespace {

FgMultFunction f_half_at_2() {
  // f(2) = -1, f(p) = 1 otherwise
  FgMultFunction f;
  f.classes.push_back({PrimeSet::explicit_set({2}), UnitPhase::from_rational(1, 2)});
  f.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
  return f;
}

// Random FG functions over residue classes mod m with small rational phases,
// an optional explicit class, and a default class.
FgMultFunction random_fg(std::mt19937& rng, bool allow_irrational = false) {
  static const i64 mods[] = {3, 4, 5, 8};
  std::uniform_int_distribution<int> pick_mod(0, 3);
  std::uniform_int_distribution<int> num(0, 5);
  std::uniform_int_distribution<int> coin(0, 1);
  const i64 m = mods[pick_mod(rng)];

  auto random_phase = [&]() {
    if (allow_irrational && coin(rng) && coin(rng))
      return UnitPhase::from_irrational(0.2 + 0.1 * num(rng) + 0.01234567891234);
    static const std::pair<i64, i64> ph[] = {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {1, 6}};
    const int k = num(rng);
    return UnitPhase::from_rational(ph[k].first, ph[k].second);
  };

  FgMultFunction f;
  if (coin(rng)) f.classes.push_back({PrimeSet::explicit_set({2}), random_phase()});
  for (i64 c = 1; c < m; ++c) {
    if (std::gcd(c, m) != 1) continue;
    f.classes.push_back({PrimeSet::residue_classes(m, {c}), random_phase()});
  }
  f.classes.push_back({PrimeSet::all_primes(), random_phase()});
  f.validate();
  return f;
}

}  // namespace

TEST_CASE("phase arithmetic is exact") {
  const RationalPhase a(1, 3), b(1, 2);
  CHECK(a.plus(b) == RationalPhase(5, 6));
  CHECK(a.times(3).is_zero());
  CHECK(a.negated() == RationalPhase(2, 3));
  CHECK(RationalPhase(7, 14) == RationalPhase(1, 2));
  CHECK(RationalPhase(-1, 3) == RationalPhase(2, 3));

  const UnitPhase u = UnitPhase::from_irrational(0.3333333333333333);
  CHECK(u == u);
  CHECK(!(u == UnitPhase::from_rational(1, 3)));
  CHECK(u.times(0) == UnitPhase::one());
}

TEST_CASE("eval_mult examples") {
  const SieveTable sieve(10'000);
  const FgMultFunction lam = FgMultFunction::liouville();
  CHECK(lam.eval(12, sieve).real() == doctest::Approx(-1.0));
  CHECK(FgMultFunction::one().eval(1234, sieve).real() == doctest::Approx(1.0));
  CHECK(f_half_at_2().eval(40, sieve).real() == doctest::Approx(-1.0));  // 40 = 2^3 * 5
  // exact phases
  CHECK(lam.phase_eval(12, sieve) == UnitPhase::from_rational(1, 2));
  CHECK(lam.phase_eval(1, sieve) == UnitPhase::one());
}

TEST_CASE("eval_mult complete multiplicativity, exact phases") {
  const SieveTable sieve(1'000'000);
  const FgMultFunction f = f_half_at_2();
  const FgMultFunction lam = FgMultFunction::liouville();
  for (i64 m = 1; m <= 1000; ++m) {
    for (i64 n = m; n <= 1000; ++n) {
      CHECK(f.phase_eval(m * n, sieve) == f.phase_eval(m, sieve).plus(f.phase_eval(n, sieve)));
      CHECK(lam.phase_eval(m * n, sieve) ==
            lam.phase_eval(m, sieve).plus(lam.phase_eval(n, sieve)));
    }
  }
}

TEST_CASE("eval_add examples") {
  const SieveTable sieve(10'000);
  const FgAddFunction omega = FgAddFunction::big_omega();
  CHECK(omega.eval(12, sieve) == 3);
  CHECK(omega.eval(1, sieve) == 0);
  FgAddFunction a;
  a.classes.push_back({PrimeSet::explicit_set({2}), 0});
  a.classes.push_back({PrimeSet::all_primes(), 1});
  CHECK(a.eval(12, sieve) == 1);  // only the factor 3 counts
}

TEST_CASE("partition validation failures name the classes") {
  FgMultFunction f;
  f.classes.push_back({PrimeSet::residue_classes(4, {1}), UnitPhase::one()});
  f.classes.push_back({PrimeSet::residue_classes(8, {5}), UnitPhase::one()});
  f.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
  CHECK_THROWS_WITH_AS(f.validate(), doctest::Contains("classes[0]"), validation_error);

  FgMultFunction g;  // explicit overlap
  g.classes.push_back({PrimeSet::explicit_set({2, 3}), UnitPhase::one()});
  g.classes.push_back({PrimeSet::explicit_set({3, 5}), UnitPhase::one()});
  g.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
  CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("prime 3"), validation_error);

  FgMultFunction h;  // no coverage of p = 3 and of 2 mod 3
  h.classes.push_back({PrimeSet::residue_classes(3, {1}), UnitPhase::one()});
  CHECK_THROWS_AS(h.validate(), validation_error);

  FgMultFunction ok;  // full residue coverage plus the divisor of the modulus
  ok.classes.push_back({PrimeSet::residue_classes(3, {1, 2}), UnitPhase::one()});
  ok.classes.push_back({PrimeSet::explicit_set({3}), UnitPhase::one()});
  ok.validate();
}

TEST_CASE("distance_partial examples, frozen oracle values") {
  const SieveTable sieve(1'000'000);
  const FgMultFunction lam = FgMultFunction::liouville();
  const FgMultFunction one = FgMultFunction::one();

  CHECK(distance_partial(lam, lam, 1000, sieve) == 0.0);
  // direct sum over the primes up to 10: 2 (1/2 + 1/3 + 1/5 + 1/7)
  const double oracle = std::sqrt(2.0 * (1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7));
  CHECK(distance_partial(lam, one, 10, sieve) == doctest::Approx(oracle).epsilon(1e-12));
  // only p = 2 contributes (1 - (-1))/2 = 1
  CHECK(distance_partial(f_half_at_2(), one, 10, sieve) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("triangle inequalities on random FG functions") {
  const SieveTable sieve(100'000);
  std::mt19937 rng(12345);
  for (int it = 0; it < 25; ++it) {
    const FgMultFunction f = random_fg(rng, true);
    const FgMultFunction g = random_fg(rng, true);
    const FgMultFunction h = random_fg(rng, true);
    const FgMultFunction f2 = random_fg(rng);
    const FgMultFunction g2 = random_fg(rng);
    for (i64 N : {i64(1'000), i64(100'000)}) {
      CHECK(distance_partial(f, g, N, sieve) <=
            distance_partial(f, h, N, sieve) + distance_partial(h, g, N, sieve) + 1e-9);
      CHECK(distance_partial(f.times(f2), g.times(g2), N, sieve) <=
            distance_partial(f, g, N, sieve) + distance_partial(f2, g2, N, sieve) + 1e-9);
    }
  }
}

TEST_CASE("distance_is_finite decisions and witnesses") {
  const FgMultFunction lam = FgMultFunction::liouville();
  const FgMultFunction one = FgMultFunction::one();

  const auto w1 = distance_is_finite(lam, one);
  CHECK(!w1.finite);
  CHECK(w1.divergent_class == "default class");

  const auto w2 = distance_is_finite(lam, lam);
  CHECK(w2.finite);
  CHECK(w2.exceptional_primes.empty());

  const auto w3 = distance_is_finite(f_half_at_2(), one);
  CHECK(w3.finite);
  CHECK(w3.exceptional_primes == std::vector<i64>{2});

  // irrational carriers: equal only when identical
  FgMultFunction fi;
  fi.classes.push_back({PrimeSet::all_primes(), UnitPhase::from_irrational(0.4142135623)});
  CHECK(distance_is_finite(fi, fi).finite);
  CHECK(!distance_is_finite(fi, one).finite);
  FgMultFunction fi2;
  fi2.classes.push_back({PrimeSet::all_primes(), UnitPhase::from_irrational(0.4142135624)});
  CHECK(!distance_is_finite(fi, fi2).finite);
}

TEST_CASE("finite distance stays bounded, infinite distance grows per decade") {
  const SieveTable sieve(1'000'000);
  const FgMultFunction one = FgMultFunction::one();

  // bounded case: witness {2}, bound sqrt(sum_{p in W} 2/p) = 1
  const FgMultFunction f = f_half_at_2();
  for (i64 N : {i64(1'000), i64(10'000), i64(100'000), i64(1'000'000)})
    CHECK(distance_partial(f, one, N, sieve) <= 1.0 + 1e-12);

  // divergent residue-class examples gain at least 1e-3 per decade
  const FgMultFunction lam = FgMultFunction::liouville();
  const FgMultFunction chi3 = modified_character(characters_mod(3)[1]);
  for (const auto& g : {lam, chi3}) {
    CHECK(!distance_is_finite(g, one).finite);
    double prev = distance_partial(g, one, 1'000, sieve);
    for (i64 N : {i64(10'000), i64(100'000), i64(1'000'000)}) {
      const double cur = distance_partial(g, one, N, sieve);
      CHECK(cur >= prev + 1e-3);
      prev = cur;
    }
  }
}

TEST_CASE("halasz_mean examples") {
  CHECK(halasz_mean(FgMultFunction::one()) == std::complex<double>(1.0, 0.0));
  const auto lamP2 = FgMultFunction::liouville_restricted(PrimeSet::explicit_set({2}));
  CHECK(std::abs(halasz_mean(lamP2) - std::complex<double>(1.0 / 3.0, 0.0)) <= 1e-15);
  CHECK(halasz_mean(FgMultFunction::liouville()) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("partial_mean examples") {
  const SieveTable sieve(10'000);
  CHECK(std::abs(partial_mean(FgMultFunction::one(), 100, sieve) - 1.0) <= 1e-15);
  const auto lamP2 = FgMultFunction::liouville_restricted(PrimeSet::explicit_set({2}));
  CHECK(partial_mean(lamP2, 4, sieve).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(partial_mean(FgMultFunction::liouville(), 1, sieve).real() == 1.0);
}

TEST_CASE("partial_mean is deterministic across thread counts") {
  const SieveTable sieve(200'000);
  const auto lam = FgMultFunction::liouville();
  const auto a = partial_mean(lam, 200'000, sieve, 1);
  const auto b = partial_mean(lam, 200'000, sieve, 4);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());
}

TEST_CASE("halasz_mean matches the 10^7 summation oracle on explicit witnesses") {
  const SieveTable sieve(10'000'000);

  std::vector<FgMultFunction> cases;
  cases.push_back(FgMultFunction::liouville_restricted(PrimeSet::explicit_set({2})));
  {
    FgMultFunction f;  // f(2) = i, f(3) = e(1/3), else 1
    f.classes.push_back({PrimeSet::explicit_set({2}), UnitPhase::from_rational(1, 4)});
    f.classes.push_back({PrimeSet::explicit_set({3}), UnitPhase::from_rational(1, 3)});
    f.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
    cases.push_back(std::move(f));
  }
  {
    FgMultFunction f;  // witness {2, 3, 5}
    f.classes.push_back({PrimeSet::explicit_set({2, 5}), UnitPhase::from_rational(1, 2)});
    f.classes.push_back({PrimeSet::explicit_set({3}), UnitPhase::from_rational(3, 4)});
    f.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
    cases.push_back(std::move(f));
  }
  for (const auto& f : cases) {
    const auto direct = partial_mean(f, 10'000'000, sieve);
    CHECK(std::abs(halasz_mean(f) - direct) <= 0.02);
  }
}

TEST_CASE("pretends_character decisions") {
  // chi* for the nonprincipal character mod 4
  FgMultFunction f;
  f.classes.push_back({PrimeSet::residue_classes(4, {3}), UnitPhase::from_rational(1, 2)});
  f.classes.push_back({PrimeSet::residue_classes(4, {1}), UnitPhase::one()});
  f.classes.push_back({PrimeSet::explicit_set({2}), UnitPhase::one()});
  f.validate();
  const auto res = pretends_character(f);
  REQUIRE(res.has_value());
  CHECK(res->chi.modulus() == 4);
  CHECK(!res->chi.is_principal());
  CHECK(res->exceptional_primes.empty());  // f equals chi* everywhere

  CHECK(!pretends_character(FgMultFunction::liouville()).has_value());

  const auto triv = pretends_character(FgMultFunction::one());
  REQUIRE(triv.has_value());
  CHECK(triv->chi.modulus() == 1);

  // irrational phase on a many-prime class kills every candidate
  FgMultFunction g;
  g.classes.push_back({PrimeSet::all_primes(), UnitPhase::from_irrational(0.30102999566)});
  CHECK(!pretends_character(g).has_value());

  // but an irrational phase on finitely many primes does not
  FgMultFunction h;
  h.classes.push_back({PrimeSet::explicit_set({7}), UnitPhase::from_irrational(0.30102999566)});
  h.classes.push_back({PrimeSet::all_primes(), UnitPhase::one()});
  const auto hres = pretends_character(h);
  REQUIRE(hres.has_value());
  CHECK(hres->chi.modulus() == 1);
  CHECK(hres->exceptional_primes == std::vector<i64>{7});
}

TEST_CASE("is_aperiodic_fn") {
  CHECK(is_aperiodic_fn(FgMultFunction::liouville()));
  CHECK(!is_aperiodic_fn(FgMultFunction::one()));
  FgMultFunction f;  // chi* mod 4
  f.classes.push_back({PrimeSet::residue_classes(4, {3}), UnitPhase::from_rational(1, 2)});
  f.classes.push_back({PrimeSet::residue_classes(4, {1}), UnitPhase::one()});
  f.classes.push_back({PrimeSet::explicit_set({2}), UnitPhase::one()});
  CHECK(!is_aperiodic_fn(f));
}

TEST_CASE("a pretended character is at finite distance (eigenvalue set analog)") {
  std::mt19937 rng(777);
  // characters perturbed on one explicit prime still pretend themselves
  for (i64 m : {i64(3), i64(4), i64(5), i64(8)}) {
    for (const auto& chi : characters_mod(m)) {
      FgMultFunction f = modified_character(chi);
      f.classes.insert(f.classes.begin(),
                       {PrimeSet::explicit_set({7}), UnitPhase::from_rational(1, 5)});
      f.validate();
      const auto res = pretends_character(f);
      REQUIRE(res.has_value());
      CHECK(res->chi.conductor() == chi.conductor());
      CHECK(distance_is_finite(f, modified_character(res->chi)).finite);
      const auto& w = res->exceptional_primes;
      CHECK(std::find(w.begin(), w.end(), 7) != w.end());
    }
  }
  // random functions that happen to pretend some character satisfy it too
  for (int it = 0; it < 40; ++it) {
    const FgMultFunction f = random_fg(rng);
    const auto res = pretends_character(f);
    if (res) CHECK(distance_is_finite(f, modified_character(res->chi)).finite);
  }
}

TEST_CASE("twisted and character partial means degenerate to plain means") {
  const SieveTable sieve(10'000);
  const auto lam = FgMultFunction::liouville();
  const auto m0 = partial_mean(lam, 9'999, sieve);
  const auto m1 = partial_mean_twisted(lam, 9'999, 0, 1, sieve);
  CHECK(std::abs(m0 - m1) <= 1e-15);
  const auto chi0 = characters_mod(1)[0];
  const auto m2 = partial_mean_character(lam, chi0, 9'999, sieve);
  CHECK(std::abs(m0 - m2) <= 1e-15);
}
