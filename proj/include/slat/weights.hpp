#pragma once

#include <string>
#include <vector>

#include "slat/semilattice.hpp"

namespace slat {

/// Per-element values of a log-weight λ. The weight ω = e^λ is never formed.
using LogWeight = std::vector<Rational>;

enum class WeightViolationKind { Negative, NotSubadditive, WrongLength };

const char* to_string(WeightViolationKind kind);

struct WeightViolation {
  WeightViolationKind kind;
  std::vector<ElementId> witness;
};

struct WeightReport {
  std::vector<WeightViolation> violations;
  std::size_t total = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = true;

  bool ok() const { return total == 0; }
};

struct WeightCheckOptions {
  std::size_t max_listed = 32;
  /// All pairs are checked up to this many elements; above it, `samples`
  /// seeded random pairs.
  std::size_t exhaustive_limit = 10'000;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Checks λ >= 0 and λ(xy) <= λ(x) + λ(y).
WeightReport validate_logweight(const Semilattice& s, const LogWeight& lambda,
                                const WeightCheckOptions& options = {});

/// Built-in log-weights: "zero", "cardinality", "scaled" (|x|·q) and
/// "prototype" (|x| on proper subsets, 0 on the full ground set).
LogWeight builtin_logweight(const Semilattice& s, const std::string& name, Rational q = 0);

/// W_L = {x : λ(x) <= L}.
SubsetMask level_set(const LogWeight& lambda, const Rational& level);

/// Distinct values of λ in increasing order.
std::vector<Rational> thresholds(const LogWeight& lambda);

Rational max_value(const LogWeight& lambda);

}  // namespace slat
