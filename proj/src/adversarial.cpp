#include "slat/adversarial.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>

#include "slat/breadth.hpp"

namespace slat {

namespace {

using Words = std::vector<std::uint64_t>;

Words to_words(const Semilattice& s, const std::vector<std::uint32_t>& points) {
  Words w(s.words_per_set(), 0);
  for (auto p : points) w[p / 64] |= std::uint64_t{1} << (p % 64);
  return w;
}

bool contains(std::span<const std::uint64_t> big, const Words& small) {
  for (std::size_t i = 0; i < small.size(); ++i) {
    if ((small[i] & ~big[i]) != 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> points_of(const Words& w) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::uint64_t bits = w[i]; bits != 0; bits &= bits - 1) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
    }
  }
  return out;
}

void require_set_system(const Semilattice& s) {
  if (s.kind() != Kind::SetSystem) {
    throw Error(ErrorCode::KindMismatch, "the adversarial construction needs a set-system host");
  }
}

}  // namespace

Markers find_markers(const Semilattice& s, const std::vector<std::uint32_t>& a, std::size_t m,
                     std::size_t cap) {
  require_set_system(s);
  if (m == 0) throw Error(ErrorCode::Usage, "find_markers needs m >= 1");
  const std::size_t k = a.size() + m;
  auto search = find_incompressible_of_size(s, k, cap);
  if (!search.set) {
    throw Error(ErrorCode::InsufficientBreadth,
                search.exhaustive
                    ? "no incompressible set of size " + std::to_string(k) + " in the host"
                    : "search cap reached before an incompressible set of size " +
                          std::to_string(k) + " was found");
  }
  const auto& b = *search.set;
  const Words avoid = to_words(s, a);
  Markers out;
  for (std::size_t j = 0; j < b.size() && out.b.size() < m; ++j) {
    Words own(s.words(b[j]).begin(), s.words(b[j]).end());
    for (std::size_t other = 0; other < b.size(); ++other) {
      if (other == j) continue;
      auto w = s.words(b[other]);
      for (std::size_t i = 0; i < own.size(); ++i) own[i] &= ~w[i];
    }
    // Incompressibility guarantees b_j has a point no other b_k covers.
    auto pts = points_of(own);
    if (pts.empty()) throw Error(ErrorCode::InvalidInstance, "incompressible set without private point");
    std::uint32_t gamma = pts.front();
    if ((avoid[gamma / 64] >> (gamma % 64)) & 1U) continue;
    out.b.push_back(b[j]);
    out.gamma.push_back(gamma);
  }
  if (out.b.size() < m) {
    throw Error(ErrorCode::InsufficientBreadth, "too few markers outside the current join");
  }
  return out;
}

AdversarialChain build_chain(const Semilattice& s, std::size_t n_max, bool strict, std::size_t cap) {
  require_set_system(s);
  if (n_max == 0) throw Error(ErrorCode::Usage, "n_max must be >= 1");
  AdversarialChain chain;
  chain.requested = n_max;
  chain.cumulative.push_back({});

  std::optional<ElementId> first;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s.cardinality(static_cast<ElementId>(x)) > 0) {
      first = static_cast<ElementId>(x);
      break;
    }
  }
  if (!first) throw Error(ErrorCode::InsufficientBreadth, "the host has no nonempty element");
  std::uint32_t gamma = s.member_set(*first).front();
  chain.markers.push_back({gamma});
  chain.families.push_back({*first});
  chain.cumulative.push_back({gamma});
  chain.depth = 1;

  for (std::size_t n = 2; n <= n_max; ++n) {
    Words join(s.words_per_set(), 0);
    for (const auto& family : chain.families) {
      for (ElementId x : family) {
        auto w = s.words(x);
        for (std::size_t i = 0; i < join.size(); ++i) join[i] |= w[i];
      }
    }
    Markers markers;
    try {
      markers = find_markers(s, points_of(join), n, cap);
    } catch (const Error& e) {
      if (strict || e.code() != ErrorCode::InsufficientBreadth) throw;
      chain.truncated = true;
      chain.notice = "stopped at level " + std::to_string(n - 1) + ": " + e.what();
      break;
    }
    std::vector<ElementId> family;
    for (ElementId b : markers.b) {
      Words x = join;
      auto w = s.words(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] |= w[i];
      auto id = s.find_set(std::span<const std::uint64_t>(x));
      if (!id) throw Error(ErrorCode::NotClosed, "a ∪ b_j is missing from the host");
      family.push_back(*id);
    }
    auto d = chain.cumulative.back();
    d.insert(d.end(), markers.gamma.begin(), markers.gamma.end());
    std::sort(d.begin(), d.end());
    chain.markers.push_back(markers.gamma);
    chain.families.push_back(std::move(family));
    chain.cumulative.push_back(std::move(d));
    chain.depth = n;
  }
  return chain;
}

ChainCheck check_chain(const Semilattice& s, const AdversarialChain& chain) {
  ChainCheck check;
  auto fail = [&](std::size_t n, const std::string& what) {
    check.failures.push_back("level " + std::to_string(n) + ": " + what);
  };
  std::vector<std::uint32_t> seen;
  for (std::size_t n = 1; n <= chain.depth; ++n) {
    const auto& e = chain.markers[n - 1];
    const auto& f = chain.families[n - 1];
    if (e.size() != n) fail(n, "|E_n| != n");
    if (f.size() != n) fail(n, "|F_n| != n");
    for (auto g : e) {
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) fail(n, "marker sets overlap");
    }
    seen.insert(seen.end(), e.begin(), e.end());
    Words prev = to_words(s, chain.cumulative[n - 1]);
    for (ElementId x : f) {
      if (!contains(s.words(x), prev)) fail(n, "an element of F_n misses D_{n-1}");
    }
    for (auto g : e) {
      std::size_t owners = 0;
      for (ElementId x : f) owners += (s.words(x)[g / 64] >> (g % 64)) & 1U;
      if (owners != 1) fail(n, "marker " + std::to_string(g) + " has " + std::to_string(owners) + " owners");
    }
    if (!f.empty() && is_compressible(s, f).compressible) fail(n, "F_n is compressible");
  }
  return check;
}

EtaWeight eta_weight(const AdversarialChain& chain, const Semilattice& s) {
  require_set_system(s);
  std::vector<Words> d;
  for (const auto& points : chain.cumulative) d.push_back(to_words(s, points));
  const Words& inf = d.back();
  EtaWeight eta;
  eta.values.resize(s.size());
  eta.level.resize(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    auto w = s.words(static_cast<ElementId>(x));
    std::size_t level = 0;
    while (level + 1 < d.size() && contains(w, d[level + 1])) ++level;
    std::size_t r = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      r += static_cast<std::size_t>(std::popcount(w[i] & inf[i] & ~d[level][i]));
    }
    eta.level[x] = static_cast<std::uint32_t>(level);
    eta.values[x] = Rational(static_cast<std::int64_t>(r));
  }
  return eta;
}

SubadditivityCheck check_eta_subadditivity(const AdversarialChain& chain, const Semilattice& s,
                                           const EtaWeight& eta, std::size_t max_traces,
                                           std::uint64_t seed) {
  require_set_system(s);
  const auto& inf = chain.cumulative.back();
  if (inf.size() > 63) throw Error(ErrorCode::SizeLimit, "D_∞ is too large for trace encoding");
  // Trace bit i stands for the i-th point of D_∞; D_n is a prefix because
  // markers only grow.
  std::vector<std::uint64_t> prefix;
  for (const auto& points : chain.cumulative) {
    std::uint64_t mask = 0;
    for (auto p : points) {
      auto pos = std::lower_bound(inf.begin(), inf.end(), p) - inf.begin();
      mask |= std::uint64_t{1} << pos;
    }
    prefix.push_back(mask);
  }
  auto eta_of_trace = [&](std::uint64_t t) {
    std::size_t level = 0;
    while (level + 1 < prefix.size() && (prefix[level + 1] & ~t) == 0) ++level;
    return Rational(static_cast<std::int64_t>(std::popcount(t & ~prefix[level])));
  };
  SubadditivityCheck check;
  std::unordered_map<std::uint64_t, ElementId> traces;
  std::vector<std::uint64_t> order;
  for (std::size_t x = 0; x < s.size(); ++x) {
    auto w = s.words(static_cast<ElementId>(x));
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < inf.size(); ++i) {
      auto p = inf[i];
      if ((w[p / 64] >> (p % 64)) & 1U) t |= std::uint64_t{1} << i;
    }
    if (eta_of_trace(t) != eta.values[x]) {
      check.ok = false;
      check.witness = {static_cast<ElementId>(x), static_cast<ElementId>(x)};
    }
    if (traces.emplace(t, static_cast<ElementId>(x)).second) order.push_back(t);
  }
  check.traces = order.size();
  auto test_pair = [&](std::uint64_t a, std::uint64_t b) {
    ++check.pairs;
    if (eta_of_trace(a | b) > eta_of_trace(a) + eta_of_trace(b) && !check.witness) {
      check.ok = false;
      check.witness = {traces[a], traces[b]};
    }
  };
  if (order.size() <= max_traces) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) test_pair(order[i], order[j]);
    }
  } else {
    check.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < max_traces * max_traces / 2; ++k) {
      test_pair(order[rng() % order.size()], order[rng() % order.size()]);
    }
  }
  if (check.witness) check.ok = false;
  return check;
}

BarrierResult verify_barrier(const AdversarialChain& chain, const Semilattice& s,
                             const EtaWeight& eta, std::size_t n, std::size_t universe_cap) {
  if (n < 2 || n > chain.depth) {
    throw Error(ErrorCode::Usage, "barrier level must lie in [2, " + std::to_string(chain.depth) + "]");
  }
  const auto& family = chain.families[n - 1];
  BarrierResult out;
  out.n = n;
  out.z = s.product_of(family);
  out.eta_z = eta.values[out.z];
  out.family_in_w1 = std::all_of(family.begin(), family.end(),
                                 [&](ElementId x) { return eta.values[x] <= 1; });
  std::size_t filter_size = 0;
  for (std::size_t t = 0; t < s.size(); ++t) filter_size += s.leq(out.z, static_cast<ElementId>(t));
  if (filter_size > universe_cap) return out;
  out.evaluated = true;
  out.value = v_value(s, eta.values, std::span<const ElementId>(family), out.z);
  out.passed = out.eta_z == Rational(0) && out.family_in_w1 && !out.value.infinite &&
               out.value.c * 2 >= Rational(static_cast<std::int64_t>(n));
  return out;
}

}  // namespace slat
