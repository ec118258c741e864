#pragma once

// Internal: evaluates all requested mode multipliers of a multiplicative
// system at n with a single factorization.

#include <optional>

#include <multsys/systems.hpp>

#include "kernels.hpp"

namespace multsys::detail {

class ModeKernel {
 public:
  ModeKernel(const MultSystem& S, std::vector<i64> modes, const SieveTable& sieve)
      : modes_(std::move(modes)) {
    if (S.kind() == MultSystem::Kind::Rotation) {
      flog_.emplace(S.generator(), sieve);
      if (flog_->rational()) {
        path_ = Path::RotInt;
        const i64 L = flog_->denom();
        for (i64 j : modes_) jmod_.push_back(((j % L) + L) % L);
      } else {
        path_ = Path::RotAngle;
      }
    } else {
      alog_.emplace(S.additive_part(), sieve);
      const UnitPhase beta = S.base().angle;
      if (beta.rational) {
        path_ = Path::SkewInt;
        q_ = beta.rat.den;
        r_ = beta.rat.num;
        table_.resize(static_cast<size_t>(q_));
        for (i64 s = 0; s < q_; ++s)
          table_[static_cast<size_t>(s)] =
              std::polar(1.0, 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(q_));
      } else {
        path_ = Path::SkewAngle;
        beta_ = beta.alpha;
      }
    }
  }

  size_t size() const { return modes_.size(); }
  const std::vector<i64>& modes() const { return modes_; }

  void eval(i64 n, std::complex<double>* out) const {
    switch (path_) {
      case Path::RotInt: {
        const i64 L = flog_->denom();
        const i64 t = flog_->eval_int(n);
        const auto* table = flog_->table();
        for (size_t k = 0; k < modes_.size(); ++k)
          out[k] = table[static_cast<size_t>((jmod_[k] * t) % L)];
        break;
      }
      case Path::RotAngle: {
        const double theta = flog_->eval_angle(n);
        for (size_t k = 0; k < modes_.size(); ++k)
          out[k] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(modes_[k]) * theta);
        break;
      }
      case Path::SkewInt: {
        const i64 a = alog_->eval(n);
        for (size_t k = 0; k < modes_.size(); ++k) {
          const i64 m = ((modes_[k] * a) % q_ + q_) % q_;
          out[k] = table_[static_cast<size_t>((m * r_) % q_)];
        }
        break;
      }
      case Path::SkewAngle: {
        const double a = static_cast<double>(alog_->eval(n));
        for (size_t k = 0; k < modes_.size(); ++k)
          out[k] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(modes_[k]) * a * beta_);
        break;
      }
    }
  }

 private:
  enum class Path { RotInt, RotAngle, SkewInt, SkewAngle };
  Path path_ = Path::RotInt;
  std::vector<i64> modes_;
  std::optional<FgLogEvaluator> flog_;
  std::optional<AddEvaluator> alog_;
  i64 q_ = 1, r_ = 0;
  double beta_ = 0.0;
  std::vector<i64> jmod_;
  std::vector<std::complex<double>> table_;
};

}  // namespace multsys::detail
