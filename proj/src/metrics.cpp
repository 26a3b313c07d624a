#include "slat/metrics.hpp"

#include <cmath>

namespace slat {

double LogMagnitude::approx() const { return zero_ ? 0.0 : std::exp(-to_double(m_)); }

std::vector<double> inverse_weights(const LogWeight& lambda) {
  std::vector<double> w(lambda.size());
  for (std::size_t x = 0; x < lambda.size(); ++x) w[x] = std::exp(-to_double(lambda[x]));
  return w;
}

bool is_filter(const Semilattice& s, const SubsetMask& f) {
  if (f.none()) return false;
  const auto n = static_cast<ElementId>(s.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x; y < n; ++y) {
      if (f.test(s.product(x, y)) != (f.test(x) && f.test(y))) return false;
    }
  }
  return true;
}

std::vector<SubsetMask> enumerate_filters(const Semilattice& s) {
  // Every finite filter F equals ↑(∏F), so the principal filters are all of
  // them, and distinct generators give distinct filters.
  std::vector<SubsetMask> out;
  out.reserve(s.size());
  for (std::size_t y = 0; y < s.size(); ++y) out.push_back(s.up_set(static_cast<ElementId>(y)));
  return out;
}

SubsetMask generate_filter(const Semilattice& s, const SubsetMask& e) {
  if (e.none()) return SubsetMask(s.size());
  return s.up_set(s.product_of(e));
}

LogMagnitude defect_set(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x) {
  std::optional<Rational> best;
  const auto n = static_cast<ElementId>(s.size());
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a + 1; b < n; ++b) {
      bool lhs = x.test(s.product(a, b));
      bool rhs = x.test(a) && x.test(b);
      if (lhs != rhs) {
        Rational m = lambda[a] + lambda[b];
        if (!best || m < *best) best = m;
      }
    }
  }
  return best ? LogMagnitude::exp(*best) : LogMagnitude::zero();
}

LogMagnitude d_set(const LogWeight& lambda, const SubsetMask& x, const SubsetMask& y) {
  SubsetMask diff = x ^ y;
  if (diff.none()) return LogMagnitude::zero();
  std::optional<Rational> best;
  for_each_bit(diff, [&](ElementId t) {
    if (!best || lambda[t] < *best) best = lambda[t];
  });
  return LogMagnitude::exp(*best);
}

DistResult dist_set(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x) {
  DistResult best;
  bool have = false;
  for (std::size_t y = 0; y < s.size(); ++y) {
    SubsetMask f = s.up_set(static_cast<ElementId>(y));
    LogMagnitude d = d_set(lambda, x, f);
    if (!have || d < best.value) {
      best = {d, std::move(f), static_cast<ElementId>(y)};
      have = true;
    }
  }
  SubsetMask empty(s.size());
  LogMagnitude d = d_set(lambda, x, empty);
  if (d < best.value) best = {d, std::move(empty), std::nullopt};
  return best;
}

double defect_complex(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi) {
  auto w = inverse_weights(lambda);
  double best = 0.0;
  const auto n = static_cast<ElementId>(s.size());
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a; b < n; ++b) {
      double gap = std::abs(psi[s.product(a, b)] - psi[a] * psi[b]) * w[a] * w[b];
      best = std::max(best, gap);
    }
  }
  return best;
}

ComplexDistResult dist_complex(const Semilattice& s, const LogWeight& lambda,
                               const ComplexFunction& psi) {
  auto w = inverse_weights(lambda);
  auto distance = [&](const SubsetMask& f) {
    double sup = 0.0;
    for (std::size_t t = 0; t < s.size(); ++t) {
      double target = f.test(t) ? 1.0 : 0.0;
      sup = std::max(sup, std::abs(psi[t] - target) * w[t]);
    }
    return sup;
  };
  ComplexDistResult best;
  bool have = false;
  for (std::size_t y = 0; y < s.size(); ++y) {
    SubsetMask f = s.up_set(static_cast<ElementId>(y));
    double d = distance(f);
    if (!have || d < best.value) {
      best = {d, std::move(f), static_cast<ElementId>(y)};
      have = true;
    }
  }
  SubsetMask empty(s.size());
  double d = distance(empty);
  if (d < best.value) best = {d, std::move(empty), std::nullopt};
  return best;
}

OmegaBound omega_bound(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi) {
  auto w = inverse_weights(lambda);
  OmegaBound out;
  for (std::size_t t = 0; t < s.size(); ++t) out.sup_ratio = std::max(out.sup_ratio, std::abs(psi[t]) * w[t]);
  out.bound = 1.0 + defect_complex(s, lambda, psi);
  return out;
}

LevelAgreement level_agreement(const LogWeight& lambda, const SubsetMask& x, const SubsetMask& y) {
  LogMagnitude d = d_set(lambda, x, y);
  if (d.is_zero()) return {true, 0, true};
  return {false, d.m(), true};
}

bool best_guess_check(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x,
                      const Rational& level) {
  SubsetMask w = level_set(lambda, level);
  SubsetMask inside = x & w;
  return inside == (generate_filter(s, inside) & w);
}

SubsetMask discretize(const ComplexFunction& psi) {
  SubsetMask g(psi.size());
  for (std::size_t t = 0; t < psi.size(); ++t) {
    if (std::abs(psi[t] - 1.0) <= 0.5) g.set(t);
  }
  return g;
}

}  // namespace slat
