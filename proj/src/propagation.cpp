#include "slat/propagation.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace slat {

namespace detail {

ClosureEngine::ClosureEngine(const Semilattice& s, std::vector<ElementId> universe)
    : s_(s), universe_(std::move(universe)) {
  position_.reserve(universe_.size() * 2);
  for (std::size_t i = 0; i < universe_.size(); ++i) position_.emplace(universe_[i], i);
  const std::size_t u = universe_.size();
  if (u <= 2048) {
    pair_table_.resize(u * u);
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = i; j < u; ++j) {
        std::uint32_t slot = slot_of(s_.product(universe_[i], universe_[j]));
        pair_table_[i * u + j] = pair_table_[j * u + i] = slot;
      }
    }
  }
}

std::optional<std::size_t> ClosureEngine::index_of(ElementId x) const {
  auto it = position_.find(x);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t ClosureEngine::slot_of(ElementId p) {
  auto [it, inserted] = slots_.emplace(p, static_cast<std::uint32_t>(slot_element_.size()));
  if (inserted) {
    slot_element_.push_back(p);
    up_cache_.emplace_back();
    seen_.push_back(0);
  }
  return it->second;
}

std::uint32_t ClosureEngine::pair_slot(std::size_t i, std::size_t j) {
  if (!pair_table_.empty()) return pair_table_[i * universe_.size() + j];
  return slot_of(s_.product(universe_[i], universe_[j]));
}

const SubsetMask& ClosureEngine::up(ElementId p) {
  std::uint32_t slot = slot_of(p);
  auto& cached = up_cache_[slot];
  if (!cached) {
    SubsetMask mask(universe_.size());
    for (std::size_t t = 0; t < universe_.size(); ++t) {
      if (s_.leq(p, universe_[t])) mask.set(t);
    }
    cached = std::move(mask);
  }
  return *cached;
}

bool ClosureEngine::extend(SubsetMask& set, const SubsetMask& added, const SubsetMask& active,
                           std::size_t abort_below, std::size_t* rounds) {
  ++closures_;
  if (rounds) *rounds = 0;
  SubsetMask delta = added & active;
  delta -= set;
  if (abort_below > 0 && delta.find_first() < abort_below) return false;
  set |= delta;
  if (++generation_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    generation_ = 1;
  }
  SubsetMask next(universe_.size());
  while (delta.any()) {
    next.reset();
    for (auto x = delta.find_first(); x != SubsetMask::npos; x = delta.find_next(x)) {
      for (auto y = set.find_first(); y != SubsetMask::npos; y = set.find_next(y)) {
        std::uint32_t slot = pair_slot(x, y);
        if (seen_[slot] == generation_) continue;
        seen_[slot] = generation_;
        next |= up(slot_element_[slot]);
      }
    }
    next &= active;
    next -= set;
    if (next.none()) break;
    if (abort_below > 0 && next.find_first() < abort_below) return false;
    if (rounds) ++*rounds;
    set |= next;
    delta = next;
  }
  return true;
}

}  // namespace detail

namespace {

using detail::ClosureEngine;

std::vector<ElementId> filter_universe(const Semilattice& s, ElementId base,
                                       const LogWeight* lambda, const Rational* cap) {
  std::vector<ElementId> out;
  for (std::size_t t = 0; t < s.size(); ++t) {
    auto id = static_cast<ElementId>(t);
    if (cap && (*lambda)[t] > *cap) continue;
    if (s.leq(base, id)) out.push_back(id);
  }
  return out;
}

std::vector<ElementId> reduce_to_minimal(const Semilattice& s, std::vector<ElementId> e, ElementId z) {
  for (std::size_t i = 0; i < e.size() && e.size() > 1;) {
    std::vector<ElementId> rest;
    rest.reserve(e.size() - 1);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j != i) rest.push_back(e[j]);
    }
    if (s.leq(s.product_of(rest), z)) {
      e = std::move(rest);
    } else {
      ++i;
    }
  }
  return e;
}

// Close-by-One over positions [0, limit) of the engine. `visit` sees each
// closed set once together with the product of its generators and returns
// false to stop the walk.
class CloseByOne {
 public:
  using Visit = std::function<bool(const SubsetMask&, std::optional<ElementId>)>;

  CloseByOne(const Semilattice& s, ClosureEngine& engine, std::size_t limit, std::size_t budget,
             std::size_t& used, Visit visit)
      : s_(s), engine_(engine), limit_(limit), budget_(budget), used_(used),
        active_(engine.size()), visit_(std::move(visit)) {
    active_.set();
  }

  /// Returns true when every closed set was visited.
  bool run() {
    run_node(engine_.empty(), std::nullopt, 0);
    return !stopped_ && !over_budget_;
  }
  bool over_budget() const { return over_budget_; }

 private:
  void run_node(const SubsetMask& closure, std::optional<ElementId> product, std::size_t start) {
    if (!visit_(closure, product)) {
      stopped_ = true;
      return;
    }
    SubsetMask add = engine_.empty();
    for (std::size_t i = start; i < limit_; ++i) {
      if (stopped_ || over_budget_) return;
      if (closure.test(i)) continue;
      if (used_ >= budget_) {
        over_budget_ = true;
        return;
      }
      ++used_;
      SubsetMask next = closure;
      add.set(i);
      bool canonical = engine_.extend(next, add, active_, i);
      add.reset(i);
      if (!canonical) continue;
      ElementId x = engine_.element(i);
      run_node(next, product ? s_.product(*product, x) : x, i + 1);
    }
  }

  const Semilattice& s_;
  ClosureEngine& engine_;
  std::size_t limit_;
  std::size_t budget_;
  std::size_t& used_;
  SubsetMask active_;
  Visit visit_;
  bool stopped_ = false;
  bool over_budget_ = false;
};

}  // namespace

SubsetMask fbp(const Semilattice& s, const LogWeight& lambda, const Rational& c, const SubsetMask& x) {
  std::vector<ElementId> inside;
  for_each_bit(x, [&](ElementId t) {
    if (lambda[t] <= c) inside.push_back(t);
  });
  std::vector<ElementId> products;
  std::unordered_set<ElementId> seen;
  for (std::size_t i = 0; i < inside.size(); ++i) {
    for (std::size_t j = i; j < inside.size(); ++j) {
      ElementId p = s.product(inside[i], inside[j]);
      if (seen.insert(p).second) products.push_back(p);
    }
  }
  SubsetMask out(s.size());
  if (products.empty()) return out;
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (lambda[z] > c) continue;
    for (ElementId p : products) {
      if (s.leq(p, static_cast<ElementId>(z))) {
        out.set(z);
        break;
      }
    }
  }
  return out;
}

ClosureResult fbp_closure(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                          const SubsetMask& e) {
  ClosureResult result{SubsetMask(s.size()), 0};
  if (e.none()) return result;
  std::vector<ElementId> seeds;
  for_each_bit(e, [&](ElementId t) {
    if (lambda[t] <= c) seeds.push_back(t);
  });
  bool dropped = seeds.size() != e.count();
  if (seeds.empty()) {
    result.iterations = 1;
    return result;
  }
  ClosureEngine engine(s, filter_universe(s, s.product_of(seeds), &lambda, &c));
  SubsetMask set = engine.empty();
  SubsetMask added = engine.empty();
  for (ElementId t : seeds) added.set(*engine.index_of(t));
  SubsetMask active = engine.empty();
  active.set();
  std::size_t rounds = 0;
  engine.extend(set, added, active, 0, &rounds);
  result.iterations = rounds > 0 ? rounds : (dropped ? 1 : 0);
  for_each_bit(set, [&](ElementId i) { result.set.set(engine.element(i)); });
  return result;
}

bool is_fbp_stable(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                   const SubsetMask& x) {
  return fbp(s, lambda, c, x).is_subset_of(x);
}

PropagationValue v_value(const Semilattice& s, const LogWeight& lambda,
                         std::span<const ElementId> e, ElementId z) {
  if (e.empty()) return PropagationValue::infinity();
  ElementId base = s.product_of(e);
  if (!s.leq(base, z)) return PropagationValue::infinity();
  ClosureEngine engine(s, filter_universe(s, base, nullptr, nullptr));
  Rational lo = lambda[z];
  Rational min_e = lambda[e.front()];
  for (ElementId x : e) min_e = std::min(min_e, lambda[x]);
  lo = std::max(lo, min_e);
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < engine.size(); ++i) {
    const Rational& v = lambda[engine.element(i)];
    if (v >= lo) candidates.push_back(v);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  SubsetMask seeds = engine.empty();
  for (ElementId x : e) seeds.set(*engine.index_of(x));
  const std::size_t zpos = *engine.index_of(z);
  auto reaches = [&](const Rational& c) {
    SubsetMask active = engine.empty();
    for (std::size_t i = 0; i < engine.size(); ++i) {
      if (lambda[engine.element(i)] <= c) active.set(i);
    }
    SubsetMask set = engine.empty();
    engine.extend(set, seeds, active);
    return set.test(zpos);
  };
  // Reachability is monotone in C, and at the largest level the closure is
  // all of ⟨E⟩.
  std::size_t lo_i = 0;
  std::size_t hi_i = candidates.size() - 1;
  if (!reaches(candidates[hi_i])) throw std::logic_error("closure at the top level misses z");
  while (lo_i < hi_i) {
    std::size_t mid = lo_i + (hi_i - lo_i) / 2;
    if (reaches(candidates[mid])) {
      hi_i = mid;
    } else {
      lo_i = mid + 1;
    }
  }
  return PropagationValue::finite(candidates[lo_i]);
}

PropagationValue v_value(const Semilattice& s, const LogWeight& lambda, const SubsetMask& e,
                         ElementId z) {
  auto ids = ids_from_mask(e);
  return v_value(s, lambda, std::span<const ElementId>(ids), z);
}

PropagationProfile propagation_profile(const Semilattice& s, const LogWeight& lambda,
                                       const Rational& level, const SearchOptions& options) {
  PropagationProfile out;
  out.level = level;
  std::vector<ElementId> wl;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (lambda[x] <= level) wl.push_back(static_cast<ElementId>(x));
  }
  if (wl.empty()) return out;

  // V_{x}(x) = λ(x), so the profile is at least the largest λ on W_L.
  ElementId top = wl.front();
  for (ElementId x : wl) {
    if (lambda[x] > lambda[top]) top = x;
  }
  Rational c = lambda[top];
  out.value = PropagationValue::finite(c);
  out.witness_e = {top};
  out.witness_z = top;

  std::size_t used = 0;
  while (true) {
    std::vector<ElementId> universe = wl;
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (lambda[x] > level && lambda[x] <= c) universe.push_back(static_cast<ElementId>(x));
    }
    ClosureEngine engine(s, universe);
    const std::size_t m = wl.size();
    SubsetMask wl_part = engine.empty();
    for (std::size_t i = 0; i < m; ++i) wl_part.set(i);

    std::optional<std::pair<std::vector<ElementId>, ElementId>> failure;
    CloseByOne walk(s, engine, m, options.budget, used,
                    [&](const SubsetMask& closure, std::optional<ElementId> product) {
                      if (!product) return true;
                      SubsetMask missing = engine.up(*product) & wl_part;
                      missing -= closure;
                      if (missing.none()) return true;
                      std::vector<ElementId> a;
                      for (std::size_t i = 0; i < m; ++i) {
                        if (closure.test(i)) a.push_back(engine.element(i));
                      }
                      failure.emplace(std::move(a), engine.element(missing.find_first()));
                      return false;
                    });
    bool complete = walk.run();
    out.closures = used;
    if (complete) return out;
    if (walk.over_budget()) break;

    auto e = reduce_to_minimal(s, failure->first, failure->second);
    PropagationValue v = v_value(s, lambda, std::span<const ElementId>(e), failure->second);
    if (v.infinite || v.c <= c) throw std::logic_error("profile search failed to make progress");
    c = v.c;
    out.value = v;
    out.witness_e = std::move(e);
    out.witness_z = failure->second;
    ++out.steps;
  }

  if (options.strict) {
    throw Error(ErrorCode::BudgetExceeded, "profile search exceeded the budget of " +
                                               std::to_string(options.budget) + " closures");
  }
  out.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  for (std::size_t k = 0; k < options.samples; ++k) {
    std::vector<ElementId> e;
    for (ElementId x : wl) {
      if (rng() >> 63) e.push_back(x);
    }
    if (e.empty()) e.push_back(wl[rng() % wl.size()]);
    ElementId base = s.product_of(e);
    std::vector<ElementId> targets;
    for (ElementId x : wl) {
      if (s.leq(base, x)) targets.push_back(x);
    }
    ElementId z = targets[rng() % targets.size()];
    e = reduce_to_minimal(s, std::move(e), z);
    PropagationValue v = v_value(s, lambda, std::span<const ElementId>(e), z);
    if (!v.infinite && v.c > out.value.c) {
      out.value = v;
      out.witness_e = std::move(e);
      out.witness_z = z;
    }
  }
  return out;
}

EquivalenceReport check_equivalence_iii(const Semilattice& s, const LogWeight& lambda,
                                        const Rational& level, const Rational& c,
                                        const SearchOptions& options) {
  EquivalenceReport report;
  report.level = level;
  report.c = c;
  std::vector<ElementId> wc;
  std::vector<ElementId> extra;
  SubsetMask wl_mask(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (lambda[x] <= level) wl_mask.set(x);
    if (lambda[x] <= c) {
      wc.push_back(static_cast<ElementId>(x));
    } else if (lambda[x] <= level) {
      extra.push_back(static_cast<ElementId>(x));
    }
  }
  // A C-stable G is a closed subset of W_C plus anything outside W_C; only the
  // part inside W_L affects the identity.
  const bool enumerate_extra = extra.size() <= 20;
  ClosureEngine engine(s, wc);
  std::size_t used = 0;

  auto check = [&](const SubsetMask& g) {
    ++report.stable_sets_checked;
    SubsetMask h = g & wl_mask;
    if (h.none()) return;
    SubsetMask missing = s.up_set(s.product_of(h)) & wl_mask;
    missing -= h;
    if (missing.none()) return;
    if (report.violations++ == 0) {
      report.witness_g = ids_from_mask(g);
      report.witness_z = static_cast<ElementId>(missing.find_first());
    }
  };
  auto lift = [&](const SubsetMask& closure) {
    SubsetMask g(s.size());
    for_each_bit(closure, [&](ElementId i) { g.set(engine.element(i)); });
    return g;
  };

  CloseByOne walk(s, engine, engine.size(), options.budget, used,
                  [&](const SubsetMask& closure, std::optional<ElementId>) {
                    ++report.closed_sets;
                    SubsetMask g = lift(closure);
                    if (!enumerate_extra) {
                      check(g);
                      return true;
                    }
                    const std::uint64_t combos = std::uint64_t{1} << extra.size();
                    for (std::uint64_t bits = 0; bits < combos; ++bits) {
                      if (bits != 0 && used >= options.budget) return false;
                      if (bits != 0) ++used;
                      SubsetMask gb = g;
                      for (std::size_t k = 0; k < extra.size(); ++k) {
                        if ((bits >> k) & 1U) gb.set(extra[k]);
                      }
                      check(gb);
                    }
                    return true;
                  });
  bool complete = walk.run() && enumerate_extra;
  if (complete) return report;
  if (options.strict) {
    throw Error(ErrorCode::BudgetExceeded, "stable-set enumeration exceeded the budget");
  }
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  SubsetMask active = engine.empty();
  active.set();
  for (std::size_t k = 0; k < options.samples; ++k) {
    SubsetMask seed = engine.empty();
    for (std::size_t i = 0; i < engine.size(); ++i) {
      if (rng() >> 63) seed.set(i);
    }
    SubsetMask closure = engine.empty();
    engine.extend(closure, seed, active);
    SubsetMask g = lift(closure);
    for (ElementId x : extra) {
      if (rng() >> 63) g.set(x);
    }
    check(g);
  }
  return report;
}

BreadthBoundReport finite_breadth_bound_check(const Semilattice& s, const LogWeight& lambda,
                                              const Rational& level, std::size_t breadth,
                                              const SearchOptions& options) {
  BreadthBoundReport report;
  report.level = level;
  report.breadth = breadth;
  report.profile = propagation_profile(s, lambda, level, options);
  Rational bound = Rational(static_cast<std::int64_t>(breadth)) * level;
  report.ok = !report.profile.value.infinite && report.profile.value.c <= bound;
  if (bound > 0) report.ratio = report.profile.value.c / bound;
  return report;
}

}  // namespace slat
