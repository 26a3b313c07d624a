#include "slat/weights.hpp"

#include <algorithm>

namespace slat {

const char* to_string(WeightViolationKind kind) {
  switch (kind) {
    case WeightViolationKind::Negative: return "Negative";
    case WeightViolationKind::NotSubadditive: return "NotSubadditive";
    case WeightViolationKind::WrongLength: return "WrongLength";
  }
  return "Unknown";
}

WeightReport validate_logweight(const Semilattice& s, const LogWeight& lambda,
                                const WeightCheckOptions& options) {
  const std::size_t max_listed = options.max_listed;
  WeightReport report;
  auto record = [&](WeightViolationKind kind, std::vector<ElementId> witness) {
    ++report.total;
    if (report.violations.size() < max_listed) report.violations.push_back({kind, std::move(witness)});
  };
  const auto n = static_cast<ElementId>(s.size());
  if (lambda.size() != s.size()) {
    record(WeightViolationKind::WrongLength, {});
    return report;
  }
  for (ElementId x = 0; x < n; ++x) {
    if (lambda[x] < 0) record(WeightViolationKind::Negative, {x});
  }
  auto check = [&](ElementId x, ElementId y) {
    ++report.pairs_checked;
    if (lambda[s.product(x, y)] > lambda[x] + lambda[y]) record(WeightViolationKind::NotSubadditive, {x, y});
  };
  if (n <= options.exhaustive_limit) {
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId y = x + 1; y < n; ++y) check(x, y);
    }
    return report;
  }
  report.exhaustive = false;
  std::uint64_t state = options.seed;
  auto next = [&] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  for (std::size_t i = 0; i < options.samples; ++i) {
    check(static_cast<ElementId>(next() % n), static_cast<ElementId>(next() % n));
  }
  return report;
}

LogWeight builtin_logweight(const Semilattice& s, const std::string& name, Rational q) {
  const std::size_t n = s.size();
  if (name == "zero") return LogWeight(n, Rational(0));
  if (name != "cardinality" && name != "scaled" && name != "prototype") {
    throw Error(ErrorCode::Usage, "unknown built-in log-weight '" + name + "'");
  }
  if (s.kind() != Kind::SetSystem) {
    throw Error(ErrorCode::KindMismatch, "log-weight '" + name + "' needs a set-system instance");
  }
  if (name == "scaled" && q < 0) throw Error(ErrorCode::Usage, "scaled weight needs q >= 0");
  LogWeight lambda(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto size = static_cast<std::int64_t>(s.cardinality(static_cast<ElementId>(x)));
    lambda[x] = name == "scaled" ? Rational(size) * q : Rational(size);
  }
  if (name == "prototype") {
    std::vector<std::uint32_t> all(s.ground_size());
    for (std::uint32_t p = 0; p < all.size(); ++p) all[p] = p;
    auto top = s.find_set(all);
    if (!top) {
      throw Error(ErrorCode::PrototypeMissingTop,
                  "prototype weight needs the full ground set as an element");
    }
    lambda[*top] = 0;
  }
  return lambda;
}

SubsetMask level_set(const LogWeight& lambda, const Rational& level) {
  SubsetMask mask(lambda.size());
  for (std::size_t x = 0; x < lambda.size(); ++x) {
    if (lambda[x] <= level) mask.set(x);
  }
  return mask;
}

std::vector<Rational> thresholds(const LogWeight& lambda) {
  std::vector<Rational> values(lambda.begin(), lambda.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

Rational max_value(const LogWeight& lambda) {
  Rational best = 0;
  for (const auto& v : lambda) best = std::max(best, v);
  return best;
}

}  // namespace slat
