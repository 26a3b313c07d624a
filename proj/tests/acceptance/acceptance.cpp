// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slat/adversarial.hpp"
#include "slat/breadth.hpp"
#include "slat/instances.hpp"
#include "slat/metrics.hpp"
#include "slat/propagation.hpp"
#include "slat/reference.hpp"
#include "slat/weights.hpp"

#ifndef SLAT_CLI_PATH
#error "SLAT_CLI_PATH must name the slat executable"
#endif

namespace {

using namespace slat;

// Tolerances and budgets.
constexpr double kOmegaSlack = 1e-12;
constexpr std::size_t kRandomFilterSets = 1000;
constexpr std::size_t kRandomPairs = 10'000;
constexpr std::size_t kRandomPsi = 10'000;
constexpr std::size_t kExhaustiveSubsetLimit = 12;
constexpr std::uint64_t kSeed = 20240601;

struct Weighted {
  std::string name;
  Semilattice s;
  LogWeight lambda;
};

struct Outcome {
  bool passed = true;
  std::string detail;
  std::string failure;

  void require(bool ok, const std::function<std::string()>& what) {
    if (!ok && passed) {
      passed = false;
      failure = what();
    }
  }
};

// λ(i) = m - 1 - i on chain(m): the product min(i, j) takes the larger value.
Weighted chain_rank(std::size_t m) {
  LogWeight lambda(m);
  for (std::size_t i = 0; i < m; ++i) lambda[i] = Rational(static_cast<std::int64_t>(m - 1 - i));
  return {"chain:" + std::to_string(m) + " rank", chain(m), lambda};
}

Weighted chain_zero(std::size_t m) { return {"chain:" + std::to_string(m) + " zero", chain(m), LogWeight(m, Rational(0))}; }

// Depth of each vertex; the lowest common ancestor is never deeper than either input.
Weighted tree_depth(std::size_t k, std::size_t depth) {
  auto s = kary_tree(k, depth);
  LogWeight lambda(s.size(), Rational(0));
  for (std::size_t v = 1; v < s.size(); ++v) lambda[v] = lambda[(v - 1) / k] + Rational(1);
  return {"tree:" + std::to_string(k) + ":" + std::to_string(depth) + " depth", std::move(s), std::move(lambda)};
}

Weighted builtin(const std::string& family, Semilattice s, const std::string& weight, Rational q = 0) {
  auto lambda = builtin_logweight(s, weight, q);
  return {family + " " + weight, std::move(s), std::move(lambda)};
}

SubsetMask random_mask(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const double p = density(rng);
  SubsetMask m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (density(rng) < p) m.set(i);
  }
  return m;
}

SubsetMask singletons_of(const Semilattice& s) {
  SubsetMask out(s.size());
  for (std::uint32_t p = 0; p < s.ground_size(); ++p) out.set(*s.find_set(std::vector<std::uint32_t>{p}));
  return out;
}

// AC1 ------------------------------------------------------------------------

Outcome filter_oracle() {
  std::vector<Semilattice> instances;
  for (std::size_t m = 1; m <= 16; ++m) instances.push_back(chain(m));
  for (std::size_t k = 1; k <= 4; ++k) instances.push_back(powerset(k));
  for (std::size_t k = 1; k <= 4; ++k) instances.push_back(free_semilattice(k));
  for (auto [k, d] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
    instances.push_back(kary_tree(k, d));
  }
  Outcome out;
  std::mt19937_64 rng(kSeed);
  std::size_t sets = 0;
  for (const auto& s : instances) {
    auto fast = enumerate_filters(s);
    auto brute = reference::filters_bruteforce(s);
    auto sorted = fast;
    std::sort(sorted.begin(), sorted.end());
    std::sort(brute.begin(), brute.end());
    out.require(sorted == brute, [&] { return "filter enumeration differs on n=" + std::to_string(s.size()); });
    for (std::size_t i = 0; i < kRandomFilterSets; ++i) {
      auto e = random_mask(s.size(), rng);
      out.require(generate_filter(s, e) == reference::generate_filter_oracle(s, brute, e),
                  [&] { return "generate_filter differs on n=" + std::to_string(s.size()); });
      ++sets;
    }
  }
  out.detail = std::to_string(instances.size()) + " instances, " + std::to_string(sets) + " random E";
  return out;
}

// AC2 ------------------------------------------------------------------------

Outcome levels_lemma() {
  std::vector<Weighted> instances = {builtin("free:4", free_semilattice(4), "cardinality"),
                                     builtin("powerset:4", powerset(4), "cardinality"),
                                     builtin("prototype:5", prototype(5), "prototype"),
                                     builtin("free:3", free_semilattice(3), "scaled", Rational(1, 3)),
                                     tree_depth(2, 3), chain_rank(10)};
  Outcome out;
  std::mt19937_64 rng(kSeed + 2);
  std::size_t checks = 0;
  for (const auto& w : instances) {
    const auto levels = reference::dense_levels(w.lambda);
    std::vector<SubsetMask> level_sets;
    for (const auto& l : levels) level_sets.push_back(level_set(w.lambda, l));
    for (std::size_t i = 0; i < kRandomPairs; ++i) {
      auto x = random_mask(w.s.size(), rng);
      auto y = (i % 4 == 0) ? x : random_mask(w.s.size(), rng);
      if (i % 4 == 1) y.flip(rng() % w.s.size());
      const auto d = d_set(w.lambda, x, y);
      const auto diff = x ^ y;
      const auto agreement = level_agreement(w.lambda, x, y);
      out.require(d.is_zero() == agreement.infinite && (d.is_zero() || agreement.threshold == d.m()),
                  [&] { return w.name + ": level_agreement disagrees with d_set"; });
      for (std::size_t j = 0; j < levels.size(); ++j) {
        const auto& level = levels[j];
        const bool agree = (diff & level_sets[j]).none();
        // (i) agreement below the distance exponent, and not at it.
        if (d.is_zero() || level < d.m()) {
          out.require(agree, [&] { return w.name + ": sets differ below the distance level " + to_string(level); });
        } else if (level == d.m()) {
          out.require(!agree, [&] { return w.name + ": agreement at the distance level is not strict"; });
        }
        // (ii) agreement on W_L bounds the distance by e^{-L}.
        if (agree) {
          out.require(d <= LogMagnitude::exp(level),
                      [&] { return w.name + ": agreement on W_" + to_string(level) + " but d exceeds e^{-L}"; });
        }
        ++checks;
      }
    }
  }
  out.detail = std::to_string(instances.size()) + " instances, " + std::to_string(kRandomPairs) + " pairs each, " +
               std::to_string(checks) + " level checks";
  return out;
}

// AC3 ------------------------------------------------------------------------

std::vector<Weighted> small_instances() {
  return {chain_rank(6),
          chain_zero(5),
          tree_depth(2, 2),
          tree_depth(3, 1),
          builtin("free:3", free_semilattice(3), "cardinality"),
          builtin("free:3", free_semilattice(3), "scaled", Rational(1, 2)),
          builtin("prototype:3", prototype(3), "prototype"),
          builtin("powerset:3", powerset(3), "cardinality"),
          builtin("table(free:3)", to_table(free_semilattice(3)), "zero"),
          {"table(free:3) cardinality", to_table(free_semilattice(3)), builtin_logweight(free_semilattice(3), "cardinality")},
          chain_rank(12)};
}

Outcome stable_and_am() {
  Outcome out;
  std::size_t checks = 0;
  auto instances = small_instances();
  for (const auto& w : instances) {
    const std::size_t n = w.s.size();
    if (n > kExhaustiveSubsetLimit) continue;
    auto levels = thresholds(w.lambda);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      SubsetMask x(n, static_cast<unsigned long>(bits));
      const auto def = defect_set(w.s, w.lambda, x);
      for (const auto& c : levels) {
        const bool stable = is_fbp_stable(w.s, w.lambda, c, x);
        if (stable) {
          out.require(def <= LogMagnitude::exp(c), [&] {
            return w.name + ": C-stable set with defect above e^{-C}, C=" + to_string(c);
          });
        }
        if (def.is_zero() || def.m() > c * 3) {
          out.require(stable, [&] { return w.name + ": defect below e^{-3C} but not C-stable, C=" + to_string(c); });
        }
        ++checks;
      }
    }
  }
  out.detail = std::to_string(instances.size()) + " instances, all subsets, " + std::to_string(checks) + " (X, C) pairs";
  return out;
}

// AC4 ------------------------------------------------------------------------

Outcome omega_bounded() {
  std::vector<Weighted> instances = {chain_rank(8), tree_depth(2, 3),
                                     builtin("free:4", free_semilattice(4), "cardinality"),
                                     builtin("prototype:5", prototype(5), "prototype"),
                                     builtin("powerset:4", powerset(4), "zero")};
  Outcome out;
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> small(-0.05, 0.05);
  double worst = -1e300;
  for (const auto& w : instances) {
    auto filters = enumerate_filters(w.s);
    for (std::size_t i = 0; i < kRandomPsi; ++i) {
      ComplexFunction psi(w.s.size());
      if (i % 2 == 0) {
        for (auto& v : psi) v = {u(rng), u(rng)};
      } else {
        // Perturbed characters probe the regime where the defect is small.
        const auto& f = filters[rng() % filters.size()];
        for (std::size_t x = 0; x < psi.size(); ++x) psi[x] = {(f.test(x) ? 1.0 : 0.0) + small(rng), small(rng)};
      }
      const auto b = omega_bound(w.s, w.lambda, psi);
      worst = std::max(worst, b.sup_ratio - b.bound);
      out.require(b.sup_ratio <= b.bound + kOmegaSlack, [&] { return w.name + ": sup ratio exceeds 1 + defect"; });
    }
  }
  std::ostringstream detail;
  detail << instances.size() << " instances, " << kRandomPsi << " psi each, max(sup - bound) = " << worst;
  out.detail = detail.str();
  return out;
}

// AC5 ------------------------------------------------------------------------

Outcome equivalence() {
  Outcome out;
  std::size_t levels_checked = 0;
  std::size_t certified = 0;
  std::size_t uncertified = 0;
  auto instances = small_instances();
  for (const auto& w : instances) {
    if (w.s.size() > kExhaustiveSubsetLimit) continue;
    const auto levels = thresholds(w.lambda);
    for (const auto& level : levels) {
      auto p = propagation_profile(w.s, w.lambda, level);
      out.require(p.exhaustive && !p.value.infinite, [&] { return w.name + ": profile not exhaustive at L=" + to_string(level); });
      if (!p.exhaustive || p.value.infinite) continue;
      ++levels_checked;
      const Rational c = p.value.c;
      auto at = check_equivalence_iii(w.s, w.lambda, level, c);
      out.require(at.exhaustive && at.violations == 0, [&] {
        return w.name + ": " + std::to_string(at.violations) + " violations at C=P(L)=" + to_string(c) + ", L=" + to_string(level);
      });
      out.require(reference::equivalence_violations_bruteforce(w.s, w.lambda, level, c) == 0,
                  [&] { return w.name + ": brute force finds violations at C=P(L), L=" + to_string(level); });

      auto lower = std::find_if(levels.rbegin(), levels.rend(), [&](const Rational& l) { return l < c; });
      if (lower == levels.rend()) continue;
      const bool witness_below = std::all_of(p.witness_e.begin(), p.witness_e.end(),
                                             [&](ElementId x) { return w.lambda[x] <= *lower; });
      if (!witness_below) {
        ++uncertified;
        continue;
      }
      ++certified;
      // G = FBP_{C'}^∞(E) is C'-stable and misses z ∈ ⟨G ∩ W_L⟩ ∩ W_L.
      auto e = mask_from_ids(w.s.size(), p.witness_e);
      auto g = fbp_closure(w.s, w.lambda, *lower, e).set;
      auto wl = level_set(w.lambda, level);
      const bool violates = is_fbp_stable(w.s, w.lambda, *lower, g) &&
                            (g & wl) != (generate_filter(w.s, g & wl) & wl);
      out.require(violates, [&] { return w.name + ": witness G does not violate at C'=" + to_string(*lower); });
      auto below = check_equivalence_iii(w.s, w.lambda, level, *lower);
      out.require(below.violations > 0, [&] {
        return w.name + ": no violation at C'=" + to_string(*lower) + " < P(L)=" + to_string(c);
      });
    }
  }
  out.detail = std::to_string(levels_checked) + " levels, strictness certified at " + std::to_string(certified) +
               " (not certified: " + std::to_string(uncertified) + ")";
  return out;
}

// AC6 ------------------------------------------------------------------------

Outcome prototype_barrier() {
  Outcome out;
  std::string values;
  for (std::size_t n = 2; n <= 8; ++n) {
    auto s = prototype(n);
    auto lambda = builtin_logweight(s, "prototype");
    auto e = singletons_of(s);
    const auto top = static_cast<ElementId>(s.size() - 1);
    auto v = v_value(s, lambda, e, top);
    auto dense = reference::v_value_dense(to_table(s), lambda, e, top);
    const Rational ceiling(static_cast<std::int64_t>((n + 1) / 2));
    out.require(!v.infinite && v.c * 2 >= Rational(static_cast<std::int64_t>(n)),
                [&] { return "V below n/2 at n=" + std::to_string(n); });
    out.require(!v.infinite && v.c == ceiling, [&] { return "V is not ceil(n/2) at n=" + std::to_string(n); });
    out.require(dense == v, [&] { return "dense oracle disagrees at n=" + std::to_string(n); });
    values += (values.empty() ? "" : ",") + (v.infinite ? std::string("inf") : to_string(v.c));
  }
  out.detail = "V(singletons, top) for n=2..8: " + values;
  return out;
}

// AC7 ------------------------------------------------------------------------

Outcome square_bound() {
  Outcome out;
  std::size_t profiles = 0;
  Rational worst_ratio = 0;
  for (std::size_t c = 1; c <= 4; ++c) {
    for (std::size_t k = c; k <= 10; ++k) {
      auto s = fin_truncation(k, c);
      auto lambda = builtin_logweight(s, "cardinality");
      for (std::int64_t l = 1; l <= 3; ++l) {
        auto p = propagation_profile(s, lambda, Rational(l));
        out.require(p.exhaustive && !p.value.infinite, [&] {
          return "profile not exhaustive on fin:" + std::to_string(k) + ":" + std::to_string(c) + " at L=" + std::to_string(l);
        });
        if (p.value.infinite) continue;
        out.require(p.value.c <= Rational(l * l), [&] {
          return "fin:" + std::to_string(k) + ":" + std::to_string(c) + " profile " + to_string(p.value.c) + " > L^2 at L=" +
                 std::to_string(l);
        });
        worst_ratio = std::max(worst_ratio, p.value.c / Rational(l * l));
        ++profiles;
      }
    }
  }
  out.detail = std::to_string(profiles) + " profiles, max P(L)/L^2 = " + to_string(worst_ratio);
  return out;
}

// AC8 ------------------------------------------------------------------------

Outcome breadth_bound() {
  std::vector<Weighted> instances;
  for (std::size_t m = 2; m <= 8; ++m) {
    instances.push_back(chain_rank(m));
    instances.push_back(chain_zero(m));
  }
  instances.push_back(tree_depth(2, 2));
  instances.push_back(tree_depth(2, 3));
  instances.push_back(tree_depth(3, 2));
  for (std::size_t k = 1; k <= 5; ++k) instances.push_back(builtin("free:" + std::to_string(k), free_semilattice(k), "cardinality"));
  for (std::size_t k = 2; k <= 5; ++k) instances.push_back(builtin("prototype:" + std::to_string(k), prototype(k), "prototype"));
  Outcome out;
  std::size_t checks = 0;
  Rational worst_ratio = 0;
  for (const auto& w : instances) {
    auto br = breadth(w.s);
    out.require(br.exhaustive, [&] { return w.name + ": breadth search not exhaustive"; });
    for (const auto& level : thresholds(w.lambda)) {
      auto report = finite_breadth_bound_check(w.s, w.lambda, level, br.breadth);
      out.require(report.profile.exhaustive, [&] { return w.name + ": profile not exhaustive at L=" + to_string(level); });
      out.require(report.ok, [&] {
        return w.name + ": profile exceeds br*L at L=" + to_string(level) + " (br=" + std::to_string(br.breadth) + ")";
      });
      if (report.ratio) worst_ratio = std::max(worst_ratio, *report.ratio);
      ++checks;
    }
  }
  out.detail = std::to_string(instances.size()) + " instances, " + std::to_string(checks) +
               " levels, max P(L)/(br L) = " + to_string(worst_ratio);
  return out;
}

// AC9 ------------------------------------------------------------------------

Outcome adversarial_construction() {
  Outcome out;
  auto s = fin_truncation(24, 8);
  auto chain = build_chain(s, 4);
  out.require(chain.depth >= 3, [&] { return "chain stopped at depth " + std::to_string(chain.depth); });
  auto check = check_chain(s, chain);
  out.require(check.ok(), [&] { return "chain invariant: " + check.failures.front(); });
  auto eta = eta_weight(chain, s);
  auto sub = check_eta_subadditivity(chain, s, eta);
  out.require(sub.ok && sub.exhaustive, [&] { return std::string("eta subadditivity not established exhaustively"); });
  std::string values;
  for (std::size_t n = 1; n <= chain.depth; ++n) {
    for (ElementId x : chain.families[n - 1]) {
      out.require(eta.values[x] <= Rational(1), [&] { return "F_" + std::to_string(n) + " leaves W_1"; });
    }
    if (n < 2) continue;
    auto b = verify_barrier(chain, s, eta, n);
    out.require(b.evaluated, [&] { return "barrier at n=" + std::to_string(n) + " not evaluated"; });
    out.require(b.eta_z == Rational(0), [&] { return "eta(z_" + std::to_string(n) + ") is not 0"; });
    out.require(b.family_in_w1 && b.passed, [&] { return "barrier fails at n=" + std::to_string(n); });
    values += " V_" + std::to_string(n) + "=" + (b.value.infinite ? std::string("inf") : to_string(b.value.c));
  }
  out.detail = "fin:24:8 depth " + std::to_string(chain.depth) + ", " + std::to_string(sub.traces) + " traces," + values;
  return out;
}

// AC10 -----------------------------------------------------------------------

Outcome breadth_values() {
  Outcome out;
  auto expect = [&](const std::string& name, const Semilattice& s, std::size_t want) {
    auto report = breadth(s);
    auto brute = reference::breadth_bruteforce(s, std::min(s.size(), want + 1));
    out.require(report.exhaustive && report.breadth == want && brute == want, [&] {
      return name + ": breadth " + std::to_string(report.breadth) + ", brute force " + std::to_string(brute) +
             ", expected " + std::to_string(want);
    });
  };
  for (std::size_t m = 1; m <= 10; ++m) expect("chain:" + std::to_string(m), chain(m), 1);
  expect("tree:2:3", kary_tree(2, 3), 2);
  for (std::size_t k = 1; k <= 5; ++k) expect("free:" + std::to_string(k), free_semilattice(k), k);
  out.detail = "chain:1..10 = 1, tree:2:3 = 2, free:k = k for k <= 5";
  return out;
}

// AC11 -----------------------------------------------------------------------

bool capture(const std::string& command, std::string& output, int& status) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return false;
  std::array<char, 4096> buffer{};
  output.clear();
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
  status = pclose(pipe);
  return true;
}

Outcome determinism() {
  Outcome out;
  const std::string command = std::string("\"") + SLAT_CLI_PATH + "\" verify --seed 7";
  std::string first, second;
  int status_first = -1, status_second = -1;
  out.require(capture(command, first, status_first) && capture(command, second, status_second),
              [] { return std::string("could not run the CLI"); });
  out.require(!first.empty(), [] { return std::string("empty report"); });
  out.require(first == second, [] { return std::string("reports differ between runs"); });
  out.require(status_first == 0 && status_second == 0, [] { return std::string("verify reported failures"); });
  out.detail = std::to_string(first.size()) + " identical bytes";
  return out;
}

struct Criterion {
  const char* id;
  double budget_seconds;  ///< 0 = no runtime bound
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", 60, filter_oracle},          {"AC2", 30, levels_lemma},    {"AC3", 120, stable_and_am},
      {"AC4", 30, omega_bounded},          {"AC5", 300, equivalence},    {"AC6", 60, prototype_barrier},
      {"AC7", 300, square_bound},          {"AC8", 300, breadth_bound},  {"AC9", 300, adversarial_construction},
      {"AC10", 60, breadth_values},        {"AC11", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.failure = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds && outcome.passed) {
      outcome.passed = false;
      outcome.failure = "runtime over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds;
    std::cout << c.id << " " << (outcome.passed ? "PASS" : "FAIL") << " " << outcome.detail;
    if (!outcome.passed) std::cout << " | " << outcome.failure;
    std::cout << " [" << time.str() << " s]" << std::endl;
    if (!outcome.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
