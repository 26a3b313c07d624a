#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "slat/semilattice.hpp"
#include "slat/weights.hpp"

namespace slat {

/// Exact value 0 or e^{-m}. Zero is the smallest value; Exp(m) < Exp(m')
/// exactly when m > m'.
class LogMagnitude {
 public:
  static LogMagnitude zero() { return LogMagnitude(true, 0); }
  static LogMagnitude exp(Rational m) { return LogMagnitude(false, m); }

  bool is_zero() const { return zero_; }
  /// Exponent m of e^{-m}; meaningless for Zero.
  const Rational& m() const { return m_; }
  double approx() const;

  friend bool operator==(const LogMagnitude& a, const LogMagnitude& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.m_ == b.m_);
  }
  friend bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.m_ > b.m_;
  }
  friend bool operator<=(const LogMagnitude& a, const LogMagnitude& b) { return !(b < a); }

 private:
  LogMagnitude(bool zero, Rational m) : zero_(zero), m_(m) {}
  bool zero_;
  Rational m_;
};

using Complex = std::complex<double>;
using ComplexFunction = std::vector<Complex>;

/// F is nonempty and xy ∈ F ⟺ x, y ∈ F for all pairs.
bool is_filter(const Semilattice& s, const SubsetMask& f);

/// The principal filters ↑y, in canonical order of the generator y.
std::vector<SubsetMask> enumerate_filters(const Semilattice& s);

/// ⟨E⟩ = ↑(∏E), or ∅ when E is empty.
SubsetMask generate_filter(const Semilattice& s, const SubsetMask& e);

/// Weighted defect of the indicator 1_X.
LogMagnitude defect_set(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x);

/// Weighted distance between 1_X and 1_Y.
LogMagnitude d_set(const LogWeight& lambda, const SubsetMask& x, const SubsetMask& y);

struct DistResult {
  LogMagnitude value = LogMagnitude::zero();
  SubsetMask witness;
  /// Generator of the closest filter; empty when the closest candidate is ∅.
  std::optional<ElementId> generator;
};

/// Distance from 1_X to the characters and 0. Ties go to the smallest
/// generator; ∅ loses every tie.
DistResult dist_set(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x);

double defect_complex(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi);

struct ComplexDistResult {
  double value = 0.0;
  SubsetMask witness;
  std::optional<ElementId> generator;
};

ComplexDistResult dist_complex(const Semilattice& s, const LogWeight& lambda,
                               const ComplexFunction& psi);

struct OmegaBound {
  double sup_ratio = 0.0;  ///< sup |ψ(x)| e^{-λ(x)}
  double bound = 0.0;      ///< 1 + defect
};

OmegaBound omega_bound(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi);

/// X ∩ W_L = Y ∩ W_L holds for every L strictly below `threshold`.
struct LevelAgreement {
  bool infinite = false;
  Rational threshold = 0;
  bool strict = true;
};

LevelAgreement level_agreement(const LogWeight& lambda, const SubsetMask& x, const SubsetMask& y);

/// X ∩ W_L = ⟨X ∩ W_L⟩ ∩ W_L.
bool best_guess_check(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x,
                      const Rational& level);

/// G = {x : |ψ(x) - 1| <= 1/2}.
SubsetMask discretize(const ComplexFunction& psi);

/// e^{-λ(x)} per element, as doubles.
std::vector<double> inverse_weights(const LogWeight& lambda);

}  // namespace slat
