#pragma once

// Internal summation machinery shared by the pretend/systems/jointerg
// kernels: fast class lookup per prime, additive-logarithm evaluation of FG
// functions along n, and a block-partitioned reduction with a deterministic
// merge order (thread count never changes the result).

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include <multsys/fg_function.hpp>

namespace multsys::detail {

struct ClassResolver {
  std::vector<std::pair<i64, int>> explicit_map;  // sorted (prime, class idx)
  struct RCell {
    i64 modulus;
    std::vector<std::uint8_t> mask;
    int idx;
  };
  std::vector<RCell> residue_cells;
  int default_idx = -1;

  explicit ClassResolver(const std::vector<PrimeSet>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      const PrimeSet& c = cells[i];
      if (c.is_explicit()) {
        for (i64 p : c.primes) explicit_map.emplace_back(p, static_cast<int>(i));
      } else if (c.is_residue()) {
        RCell rc;
        rc.modulus = c.modulus;
        rc.mask.assign(static_cast<size_t>(c.modulus), 0);
        for (i64 r : c.residues) rc.mask[static_cast<size_t>(r)] = 1;
        rc.idx = static_cast<int>(i);
        residue_cells.push_back(std::move(rc));
      } else {
        default_idx = static_cast<int>(i);
      }
    }
    std::sort(explicit_map.begin(), explicit_map.end());
  }

  int resolve(i64 p) const {
    if (!explicit_map.empty()) {
      auto it = std::lower_bound(explicit_map.begin(), explicit_map.end(),
                                 std::make_pair(p, 0));
      if (it != explicit_map.end() && it->first == p) return it->second;
    }
    for (const auto& rc : residue_cells)
      if (rc.mask[static_cast<size_t>(p % rc.modulus)]) return rc.idx;
    if (default_idx >= 0) return default_idx;
    throw validation_error("prime " + std::to_string(p) + " matches no class");
  }
};

// Additive logarithm of an FG multiplicative function: f(n) = e(theta(n))
// with theta(n) = sum e_i angle(class of p_i).  When every class phase is
// rational with lcm denominator L, theta(n) = T(n)/L for an exact integer
// T(n) mod L.
class FgLogEvaluator {
 public:
  FgLogEvaluator(const FgMultFunction& f, const SieveTable& sieve)
      : sieve_(&sieve), resolver_(cells(f)) {
    rational_ = f.all_phases_rational();
    if (rational_) {
      L_ = 1;
      for (const auto& c : f.classes) L_ = std::lcm(L_, c.phase.rat.den);
      if (L_ > (i64(1) << 20)) rational_ = false;  // fall back to angles
    }
    for (const auto& c : f.classes) {
      angles_.push_back(c.phase.angle());
      scaled_.push_back(rational_ ? c.phase.rat.num * (L_ / c.phase.rat.den) : 0);
    }
    if (rational_) {
      table_.resize(static_cast<size_t>(L_));
      for (i64 s = 0; s < L_; ++s)
        table_[static_cast<size_t>(s)] =
            std::polar(1.0, 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(L_));
    }
  }

  bool rational() const { return rational_; }
  i64 denom() const { return L_; }

  // T(n) mod L; only valid on the rational path.
  i64 eval_int(i64 n) const {
    i64 t = 0;
    sieve_->visit_factors(n, [&](i64 p, int e) {
      t = (t + e * scaled_[static_cast<size_t>(resolver_.resolve(p))]) % L_;
    });
    return t;
  }

  double eval_angle(i64 n) const {
    double a = 0.0;
    sieve_->visit_factors(n, [&](i64 p, int e) {
      a += e * angles_[static_cast<size_t>(resolver_.resolve(p))];
    });
    return a - std::floor(a);
  }

  std::complex<double> eval_value(i64 n) const {
    if (rational_) return table_[static_cast<size_t>(eval_int(n))];
    return std::polar(1.0, 2.0 * M_PI * eval_angle(n));
  }

  const std::complex<double>* table() const { return table_.data(); }

 private:
  static std::vector<PrimeSet> cells(const FgMultFunction& f) {
    std::vector<PrimeSet> cs;
    for (const auto& c : f.classes) cs.push_back(c.primes);
    return cs;
  }

  const SieveTable* sieve_;
  ClassResolver resolver_;
  bool rational_ = true;
  i64 L_ = 1;
  std::vector<i64> scaled_;
  std::vector<double> angles_;
  std::vector<std::complex<double>> table_;
};

class AddEvaluator {
 public:
  AddEvaluator(const FgAddFunction& a, const SieveTable& sieve)
      : sieve_(&sieve), resolver_(cells(a)) {
    for (const auto& c : a.classes) values_.push_back(c.value);
  }

  i64 eval(i64 n) const {
    i64 t = 0;
    sieve_->visit_factors(n, [&](i64 p, int e) {
      t += e * values_[static_cast<size_t>(resolver_.resolve(p))];
    });
    return t;
  }

 private:
  static std::vector<PrimeSet> cells(const FgAddFunction& a) {
    std::vector<PrimeSet> cs;
    for (const auto& c : a.classes) cs.push_back(c.primes);
    return cs;
  }

  const SieveTable* sieve_;
  ClassResolver resolver_;
  std::vector<i64> values_;
};

// Sums K complex-valued terms over n = 1..schedule.back() with snapshots at
// every schedule point.  The range is cut at a fixed block grid plus the
// schedule points; each piece is summed in natural n order and the pieces
// are merged in range order, so the result does not depend on the thread
// count.  TermFn has signature void(i64 n, std::complex<double>* acc).
template <class TermFn>
std::vector<std::vector<std::complex<double>>> blocked_sums(i64 K,
                                                            std::span<const i64> schedule,
                                                            int threads, TermFn&& fn) {
  constexpr i64 kBlock = 1 << 16;
  const i64 N = schedule.empty() ? 0 : schedule.back();

  std::vector<i64> cuts;  // range boundaries, 1-based inclusive starts at 1
  for (i64 b = kBlock; b < N; b += kBlock) cuts.push_back(b);
  for (i64 s : schedule) cuts.push_back(s);
  cuts.push_back(N);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const size_t R = cuts.size();
  std::vector<std::vector<std::complex<double>>> partial(
      R, std::vector<std::complex<double>>(static_cast<size_t>(K), 0.0));

  auto run_range = [&](size_t ri) {
    const i64 lo = ri == 0 ? 1 : cuts[ri - 1] + 1;
    const i64 hi = cuts[ri];
    auto& acc = partial[ri];
    for (i64 n = lo; n <= hi; ++n) fn(n, acc.data());
  };

  if (threads <= 1 || R <= 1) {
    for (size_t ri = 0; ri < R; ++ri) run_range(ri);
  } else {
    const int T = std::min<int>(threads, static_cast<int>(R));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
      pool.emplace_back([&, t]() {
        for (size_t ri = static_cast<size_t>(t); ri < R; ri += static_cast<size_t>(T))
          run_range(ri);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(schedule.size());
  std::vector<std::complex<double>> running(static_cast<size_t>(K), 0.0);
  size_t next = 0;
  for (size_t ri = 0; ri < R; ++ri) {
    for (i64 k = 0; k < K; ++k) running[static_cast<size_t>(k)] += partial[ri][static_cast<size_t>(k)];
    while (next < schedule.size() && schedule[next] == cuts[ri]) {
      out.push_back(running);
      ++next;
    }
  }
  return out;
}

}  // namespace multsys::detail
