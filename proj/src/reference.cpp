#include "slat/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slat::reference {

namespace {

bool bit(std::uint64_t mask, std::size_t i) { return (mask >> i) & 1U; }

}  // namespace

std::vector<SubsetMask> filters_bruteforce(const Semilattice& s) {
  const std::size_t n = s.size();
  if (n > 20) throw Error(ErrorCode::SizeLimit, "brute-force filters are limited to n <= 20");
  std::vector<SubsetMask> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      for (std::size_t y = 0; y < n && ok; ++y) {
        auto xy = s.product(static_cast<ElementId>(x), static_cast<ElementId>(y));
        ok = bit(mask, xy) == (bit(mask, x) && bit(mask, y));
      }
    }
    if (!ok) continue;
    SubsetMask f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = bit(mask, i);
    out.push_back(std::move(f));
  }
  return out;
}

SubsetMask generate_filter_oracle(const Semilattice& s, const std::vector<SubsetMask>& filters,
                                  const SubsetMask& e) {
  SubsetMask out(s.size());
  if (e.none()) return out;
  out.set();
  for (const auto& f : filters) {
    if (e.is_subset_of(f)) out &= f;
  }
  return out;
}

SubsetMask up_naive(const Semilattice& s, ElementId x) {
  SubsetMask out(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s.product(x, static_cast<ElementId>(t)) == x) out.set(t);
  }
  return out;
}

LogMagnitude defect_set_naive(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x) {
  bool found = false;
  Rational best = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      int lhs = x[s.product(static_cast<ElementId>(a), static_cast<ElementId>(b))] ? 1 : 0;
      int rhs = (x[a] ? 1 : 0) * (x[b] ? 1 : 0);
      if (lhs == rhs) continue;
      Rational m = lambda[a] + lambda[b];
      if (!found || m < best) best = m;
      found = true;
    }
  }
  return found ? LogMagnitude::exp(best) : LogMagnitude::zero();
}

LogMagnitude dist_set_bruteforce(const Semilattice& s, const LogWeight& lambda,
                                 const std::vector<SubsetMask>& filters, const SubsetMask& x) {
  auto distance = [&](const SubsetMask& f) {
    bool found = false;
    Rational best = 0;
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (x[t] == f[t]) continue;
      if (!found || lambda[t] < best) best = lambda[t];
      found = true;
    }
    return found ? LogMagnitude::exp(best) : LogMagnitude::zero();
  };
  LogMagnitude best = distance(SubsetMask(s.size()));
  for (const auto& f : filters) best = std::min(best, distance(f));
  return best;
}

double defect_complex_naive(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi) {
  double best = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      auto ab = s.product(static_cast<ElementId>(a), static_cast<ElementId>(b));
      double gap = std::abs(psi[ab] - psi[a] * psi[b]) /
                   std::exp(to_double(lambda[a]) + to_double(lambda[b]));
      best = std::max(best, gap);
    }
  }
  return best;
}

SubsetMask fbp_naive(const Semilattice& s, const LogWeight& lambda, const Rational& c, const SubsetMask& x) {
  const std::size_t n = s.size();
  SubsetMask out(n);
  for (std::size_t z = 0; z < n; ++z) {
    if (lambda[z] > c) continue;
    for (std::size_t a = 0; a < n && !out[z]; ++a) {
      if (!x[a] || lambda[a] > c) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!x[b] || lambda[b] > c) continue;
        auto ab = s.product(static_cast<ElementId>(a), static_cast<ElementId>(b));
        if (s.product(ab, static_cast<ElementId>(z)) == ab) {
          out.set(z);
          break;
        }
      }
    }
  }
  return out;
}

SubsetMask closure_naive(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                         const SubsetMask& e) {
  SubsetMask current = fbp_naive(s, lambda, c, e);
  while (true) {
    SubsetMask next = fbp_naive(s, lambda, c, current);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::vector<Rational> dense_levels(const LogWeight& lambda) {
  std::vector<Rational> values(lambda.begin(), lambda.end());
  values.push_back(0);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back(values[i]);
    if (i + 1 < values.size()) out.push_back((values[i] + values[i + 1]) / 2);
  }
  out.push_back(values.back() + 1);
  return out;
}

PropagationValue v_value_dense(const Semilattice& s, const LogWeight& lambda, const SubsetMask& e,
                               ElementId z) {
  if (e.none()) return PropagationValue::infinity();
  ElementId p = kNoElement;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (e[t]) p = p == kNoElement ? static_cast<ElementId>(t) : s.product(p, static_cast<ElementId>(t));
  }
  if (s.product(p, z) != p) return PropagationValue::infinity();
  for (const auto& c : dense_levels(lambda)) {
    if (closure_naive(s, lambda, c, e)[z]) return PropagationValue::finite(c);
  }
  return PropagationValue::infinity();
}

Rational profile_bruteforce(const Semilattice& s, const LogWeight& lambda, const Rational& level) {
  std::vector<ElementId> wl;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (lambda[x] <= level) wl.push_back(static_cast<ElementId>(x));
  }
  if (wl.size() > 20) throw Error(ErrorCode::SizeLimit, "brute-force profile is limited to |W_L| <= 20");
  const auto levels = dense_levels(lambda);
  Rational best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << wl.size()); ++mask) {
    SubsetMask e(s.size());
    ElementId p = kNoElement;
    for (std::size_t i = 0; i < wl.size(); ++i) {
      if (!bit(mask, i)) continue;
      e.set(wl[i]);
      p = p == kNoElement ? wl[i] : s.product(p, wl[i]);
    }
    std::vector<ElementId> targets;
    for (ElementId z : wl) {
      if (s.product(p, z) == p) targets.push_back(z);
    }
    for (const auto& c : levels) {
      if (targets.empty()) break;
      SubsetMask reached = closure_naive(s, lambda, c, e);
      std::vector<ElementId> left;
      for (ElementId z : targets) {
        if (reached[z]) {
          best = std::max(best, c);
        } else {
          left.push_back(z);
        }
      }
      targets = std::move(left);
    }
  }
  return best;
}

std::size_t equivalence_violations_bruteforce(const Semilattice& s, const LogWeight& lambda,
                                              const Rational& level, const Rational& c) {
  const std::size_t n = s.size();
  if (n > 16) throw Error(ErrorCode::SizeLimit, "brute-force stable sets are limited to n <= 16");
  SubsetMask wl = level_set(lambda, level);
  std::size_t violations = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    SubsetMask g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = bit(mask, i);
    if (!fbp_naive(s, lambda, c, g).is_subset_of(g)) continue;
    SubsetMask h = g & wl;
    if (h.none()) continue;
    ElementId p = kNoElement;
    for (std::size_t t = 0; t < n; ++t) {
      if (h[t]) p = p == kNoElement ? static_cast<ElementId>(t) : s.product(p, static_cast<ElementId>(t));
    }
    if (!(up_naive(s, p) & wl).is_subset_of(h)) ++violations;
  }
  return violations;
}

bool compressible_by_subsets(const Semilattice& s, const std::vector<ElementId>& e) {
  const std::size_t k = e.size();
  if (k > 20) throw Error(ErrorCode::SizeLimit, "subset compressibility is limited to 20 elements");
  auto product_of = [&](std::uint64_t mask) {
    ElementId p = kNoElement;
    for (std::size_t i = 0; i < k; ++i) {
      if (bit(mask, i)) p = p == kNoElement ? e[i] : s.product(p, e[i]);
    }
    return p;
  };
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  const ElementId all = product_of(full);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    if (product_of(mask) == all) return true;
  }
  return false;
}

std::size_t breadth_bruteforce(const Semilattice& s, std::size_t max_k) {
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k <= std::min(max_k, n); ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    bool found = false;
    while (!found) {
      std::vector<ElementId> e;
      for (auto i : idx) e.push_back(static_cast<ElementId>(i));
      if (!compressible_by_subsets(s, e)) found = true;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (found) best = k;
  }
  return best;
}

}  // namespace slat::reference
