#include "slat/breadth.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <unordered_set>

#include "slat/parallel.hpp"

namespace slat {

namespace {

std::vector<ElementId> distinct(std::span<const ElementId> e) {
  std::vector<ElementId> out(e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Depth-first search over incompressible sets, extending only in `order`.
// Incompressibility is hereditary, so compressible prefixes are cut.
class Searcher {
 public:
  Searcher(const Semilattice& s, const std::vector<ElementId>& order, std::size_t target,
           std::size_t upper_bound, std::size_t cap, std::atomic<std::size_t>& nodes,
           std::atomic<std::size_t>& best)
      : s_(s), order_(order), target_(target), upper_bound_(upper_bound), cap_(cap),
        nodes_(nodes), best_(best) {}

  void run_root() { dfs(0); }

  void run_from(std::size_t first) {
    if (try_push(order_[first])) {
      dfs(first + 1);
      pop();
    }
  }

  const std::vector<ElementId>& found() const { return found_; }
  bool capped() const { return capped_; }
  bool done() const { return done_; }

 private:
  // Size the search must beat to be worth continuing.
  std::size_t bound() const { return target_ > 0 ? target_ - 1 : best_.load(); }

  bool try_push(ElementId y) {
    if (nodes_.fetch_add(1) >= cap_) {
      capped_ = true;
      done_ = true;
      return false;
    }
    const std::size_t d = current_.size();
    if (d == 0) {
      current_.push_back(y);
      without_.push_back({kNoElement});
      products_.push_back(y);
      return true;
    }
    const ElementId prev = products_.back();
    const ElementId all = s_.product(prev, y);
    if (all == prev) return false;
    const auto& w = without_.back();
    std::vector<ElementId> next(d + 1);
    for (std::size_t j = 0; j < d; ++j) {
      ElementId v = w[j] == kNoElement ? y : s_.product(w[j], y);
      if (v == all) return false;
      next[j] = v;
    }
    next[d] = prev;
    current_.push_back(y);
    without_.push_back(std::move(next));
    products_.push_back(all);
    return true;
  }

  void pop() {
    current_.pop_back();
    without_.pop_back();
    products_.pop_back();
  }

  void record() {
    const std::size_t d = current_.size();
    if (target_ > 0) {
      if (d == target_) {
        found_ = current_;
        done_ = true;
      }
      return;
    }
    std::size_t seen = best_.load();
    while (d > seen && !best_.compare_exchange_weak(seen, d)) {
    }
    if (d > found_.size()) found_ = current_;
    if (best_.load() >= upper_bound_) done_ = true;
  }

  void dfs(std::size_t start) {
    if (!current_.empty()) record();
    if (done_ || (target_ == 0 && best_.load() >= upper_bound_)) {
      done_ = true;
      return;
    }
    if (target_ > 0 && current_.size() >= target_) return;
    for (std::size_t i = start; i < order_.size(); ++i) {
      if (current_.size() + (order_.size() - i) <= bound()) return;
      if (!try_push(order_[i])) {
        if (done_) return;
        continue;
      }
      dfs(i + 1);
      pop();
      if (done_) return;
    }
  }

  const Semilattice& s_;
  const std::vector<ElementId>& order_;
  std::size_t target_;
  std::size_t upper_bound_;
  std::size_t cap_;
  std::atomic<std::size_t>& nodes_;
  std::atomic<std::size_t>& best_;
  std::vector<ElementId> current_;
  std::vector<std::vector<ElementId>> without_;
  std::vector<ElementId> products_;
  std::vector<ElementId> found_;
  bool capped_ = false;
  bool done_ = false;
};

std::size_t log2_bound(std::size_t n) { return static_cast<std::size_t>(std::bit_width(n + 1)) - 1; }

// Elements high in the order (many elements below them) first.
std::vector<ElementId> search_order(const Semilattice& s) {
  std::vector<ElementId> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<ElementId>(i);
  if (s.kind() == Kind::SetSystem || s.size() > 4096) return order;
  std::vector<std::size_t> below(s.size(), 0);
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s.leq(static_cast<ElementId>(t), static_cast<ElementId>(x))) ++below[x];
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](ElementId a, ElementId b) { return below[a] > below[b]; });
  return order;
}

IncompressibleSearch find_in_order(const Semilattice& s, const std::vector<ElementId>& order,
                                   std::size_t k, std::size_t cap) {
  std::atomic<std::size_t> nodes{0};
  std::atomic<std::size_t> best{0};
  Searcher searcher(s, order, k, k, cap, nodes, best);
  searcher.run_root();
  IncompressibleSearch out;
  out.nodes = nodes.load();
  out.exhaustive = !searcher.capped();
  if (searcher.found().size() == k) {
    out.set = searcher.found();
    out.exhaustive = true;
  }
  return out;
}

}  // namespace

CompressResult is_compressible(const Semilattice& s, std::span<const ElementId> e) {
  auto set = distinct(e);
  if (set.empty()) throw Error(ErrorCode::EmptySet, "compressibility of an empty set");
  const std::size_t k = set.size();
  if (k == 1) return {};
  std::vector<ElementId> prefix(k + 1, kNoElement);
  std::vector<ElementId> suffix(k + 1, kNoElement);
  auto mul = [&](ElementId a, ElementId b) {
    if (a == kNoElement) return b;
    if (b == kNoElement) return a;
    return s.product(a, b);
  };
  for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = mul(prefix[i], set[i]);
  for (std::size_t i = k; i > 0; --i) suffix[i - 1] = mul(suffix[i], set[i - 1]);
  const ElementId all = prefix[k];
  for (std::size_t i = 0; i < k; ++i) {
    if (mul(prefix[i], suffix[i + 1]) == all) return {true, set[i]};
  }
  return {};
}

bool is_free_embedding(const Semilattice& s, std::span<const ElementId> e) {
  auto set = distinct(e);
  if (set.empty()) throw Error(ErrorCode::EmptySet, "free embedding of an empty set");
  if (set.size() > 20) throw Error(ErrorCode::SizeLimit, "free embedding test is limited to 20 elements");
  const std::size_t k = set.size();
  const std::size_t total = std::size_t{1} << k;
  std::vector<ElementId> prod(total, kNoElement);
  std::unordered_set<ElementId> generated;
  for (std::size_t mask = 1; mask < total; ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    std::size_t rest = mask & (mask - 1);
    prod[mask] = rest == 0 ? set[low] : s.product(prod[rest], set[low]);
    generated.insert(prod[mask]);
  }
  return generated.size() == total - 1;
}

BreadthReport breadth(const Semilattice& s, const BreadthOptions& options) {
  BreadthReport report;
  report.upper_bound = log2_bound(s.size());
  const auto order = search_order(s);
  std::atomic<std::size_t> nodes{0};
  std::atomic<std::size_t> best{0};
  bool capped = false;
  std::vector<ElementId> found;
  const unsigned jobs = resolve_jobs(options.jobs);
  if (jobs <= 1) {
    Searcher searcher(s, order, 0, report.upper_bound, options.cap, nodes, best);
    searcher.run_root();
    capped = searcher.capped();
    found = searcher.found();
  } else {
    std::vector<char> worker_capped(order.size(), 0);
    parallel_for(order.size(), jobs, [&](std::size_t i) {
      if (best.load() >= report.upper_bound) return;
      if (1 + (order.size() - i - 1) <= best.load()) return;
      Searcher searcher(s, order, 0, report.upper_bound, options.cap, nodes, best);
      searcher.run_from(i);
      worker_capped[i] = searcher.capped();
    });
    capped = std::any_of(worker_capped.begin(), worker_capped.end(), [](char c) { return c != 0; });
    // Workers race on the bound, so the witness comes from a sequential pass.
    auto again = find_in_order(s, order, best.load(), options.cap);
    if (again.set) found = *again.set;
  }
  report.nodes = nodes.load();
  report.breadth = found.size();
  report.witness = found;
  report.exhaustive = !capped || report.breadth >= report.upper_bound;
  return report;
}

IncompressibleSearch find_incompressible_of_size(const Semilattice& s, std::size_t k,
                                                 std::size_t cap) {
  if (k == 0) throw Error(ErrorCode::Usage, "incompressible set size must be >= 1");
  std::vector<ElementId> order;
  order.reserve(s.size());
  auto top = s.identity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (k >= 2 && top && *top == i) continue;
    order.push_back(static_cast<ElementId>(i));
  }
  return find_in_order(s, order, k, cap);
}

ChainAntichain chain_and_antichain(const Semilattice& s, std::span<const ElementId> e) {
  ChainAntichain out;
  if (e.empty()) return out;
  ElementId acc = e.front();
  out.chain.push_back(acc);
  for (std::size_t i = 1; i < e.size(); ++i) {
    acc = s.product(acc, e[i]);
    out.chain.push_back(acc);
  }
  if (e.size() == 1) {
    out.antichain.push_back(e.front());
    return out;
  }
  for (std::size_t j = 0; j < e.size(); ++j) {
    std::vector<ElementId> rest;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != j) rest.push_back(e[i]);
    }
    out.antichain.push_back(s.product_of(rest));
  }
  return out;
}

}  // namespace slat
