#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slat/breadth.hpp"
#include "slat/metrics.hpp"
#include "slat/reference.hpp"
#include "report.hpp"

namespace slat::cli {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  template <typename Describe>
  void check(bool ok, Describe&& describe) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_failure_ = describe();
  }

  void skip(std::string reason) { skipped_ = std::move(reason); }
  bool passed() const { return failures_ == 0; }

  OrderedJson json() const {
    OrderedJson out;
    out["name"] = name_;
    out["checks"] = checks_;
    out["failures"] = failures_;
    out["passed"] = passed();
    if (!skipped_.empty()) out["skipped"] = skipped_;
    if (!first_failure_.empty()) out["first_failure"] = first_failure_;
    return out;
  }

 private:
  std::string name_;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string skipped_;
  std::string first_failure_;
};

// Seeded generator with platform-independent helpers (no std distributions).
class Random {
 public:
  Random(std::uint64_t seed, const std::string& salt) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : salt) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    engine_.seed(seed * 0x9E3779B97F4A7C15ULL + h);
  }

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  SubsetMask mask(std::size_t n) {
    SubsetMask out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (engine_() & 1U) != 0;
    return out;
  }

  SubsetMask sparse_mask(std::size_t n, std::size_t max_bits) {
    SubsetMask out(n);
    std::size_t bits = 1 + below(max_bits);
    for (std::size_t i = 0; i < bits; ++i) out.set(below(n));
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

std::string ids_text(const SubsetMask& mask) {
  std::string out = "{";
  bool first = true;
  for_each_bit(mask, [&](ElementId x) {
    out += (first ? "" : ",") + std::to_string(x);
    first = false;
  });
  return out + "}";
}

std::vector<Rational> levels_with_zero(const LogWeight& lambda) {
  auto out = thresholds(lambda);
  if (out.empty() || out.front() > Rational(0)) out.insert(out.begin(), Rational(0));
  return out;
}

std::vector<SubsetMask> sorted(std::vector<SubsetMask> masks) {
  std::sort(masks.begin(), masks.end());
  return masks;
}

constexpr std::size_t kBruteFilters = 20;
constexpr std::size_t kPairwise = 512;
constexpr std::size_t kTriple = 64;
constexpr std::size_t kExhaustiveSubsets = 12;
constexpr std::size_t kProfileOracle = 11;
constexpr std::size_t kBreadthOracle = 16;

Suite axioms(const Semilattice& s) {
  Suite suite("axioms");
  auto report = validate(s);
  suite.check(report.ok(), [&] { return std::to_string(report.total) + " axiom violations"; });
  return suite;
}

Suite weight(const Semilattice& s, const LogWeight& lambda) {
  Suite suite("logweight");
  auto report = validate_logweight(s, lambda);
  suite.check(report.ok(), [&] { return std::to_string(report.total) + " log-weight violations"; });
  return suite;
}

Suite filters(const Semilattice& s, Random& rng) {
  Suite suite("filters");
  const std::size_t n = s.size();
  auto fast = enumerate_filters(s);
  if (n <= kPairwise) {
    for (const auto& f : fast) suite.check(is_filter(s, f), [&] { return "enumerated " + ids_text(f) + " is not a filter"; });
  }
  if (n > kBruteFilters) {
    suite.skip("brute-force comparison needs n <= 20");
    return suite;
  }
  auto brute = reference::filters_bruteforce(s);
  suite.check(sorted(fast) == sorted(brute), [&] {
    return std::to_string(fast.size()) + " enumerated filters vs " + std::to_string(brute.size()) + " by brute force";
  });
  const LogWeight zero(n, Rational(0));
  for (int i = 0; i < 200; ++i) {
    auto e = rng.mask(n);
    auto got = generate_filter(s, e);
    auto want = reference::generate_filter_oracle(s, brute, e);
    suite.check(got == want, [&] { return "generate_filter" + ids_text(e) + " differs from the oracle"; });
    bool character = e.any() && defect_set(s, zero, e).is_zero();
    suite.check(character == is_filter(s, e), [&] { return ids_text(e) + " breaks the character-filter correspondence"; });
  }
  return suite;
}

Suite defect_and_distance(const Semilattice& s, const LogWeight& lambda, Random& rng) {
  Suite suite("defect_distance");
  const std::size_t n = s.size();
  if (n > kPairwise) {
    suite.skip("pairwise oracles need n <= 512");
    return suite;
  }
  auto filters = enumerate_filters(s);
  auto levels = levels_with_zero(lambda);
  for (int i = 0; i < 200; ++i) {
    auto x = rng.mask(n);
    if (i % 4 == 0) x = filters[rng.below(filters.size())];
    suite.check(defect_set(s, lambda, x) == reference::defect_set_naive(s, lambda, x),
                [&] { return "defect_set" + ids_text(x) + " differs from the pair scan"; });
    auto dist = dist_set(s, lambda, x);
    suite.check(dist.value == reference::dist_set_bruteforce(s, lambda, filters, x),
                [&] { return "dist_set" + ids_text(x) + " differs from the candidate scan"; });
    suite.check(d_set(lambda, x, dist.witness) == dist.value,
                [&] { return "dist_set" + ids_text(x) + " witness does not attain the value"; });
    bool character = x.none() || std::find(filters.begin(), filters.end(), x) != filters.end();
    suite.check(dist.value.is_zero() == character, [&] { return "dist_set" + ids_text(x) + " is zero off the filters"; });
    for (const auto& level : levels) {
      SubsetMask w = level_set(lambda, level);
      bool agrees = (x & w).none();
      for (const auto& f : filters) agrees = agrees || (f & w) == (x & w);
      if (agrees) {
        suite.check(best_guess_check(s, lambda, x, level), [&] {
          return "best guess fails for " + ids_text(x) + " at level " + to_string(level);
        });
      }
    }
  }
  return suite;
}

Suite level_lemma(const Semilattice& s, const LogWeight& lambda, Random& rng) {
  Suite suite("levels");
  const std::size_t n = s.size();
  auto levels = levels_with_zero(lambda);
  for (int i = 0; i < 500; ++i) {
    auto x = rng.mask(n);
    auto y = x;
    if (i % 2 == 0) {
      y = rng.mask(n);
    } else {
      y.flip(rng.below(n));
    }
    auto agreement = level_agreement(lambda, x, y);
    auto d = d_set(lambda, x, y);
    for (const auto& level : levels) {
      SubsetMask w = level_set(lambda, level);
      bool agree = (x & w) == (y & w);
      if (!agreement.infinite) {
        suite.check(agree == (level < agreement.threshold), [&] {
          return "agreement threshold wrong for " + ids_text(x) + " vs " + ids_text(y);
        });
      }
      if (agree) {
        suite.check(d <= LogMagnitude::exp(level), [&] {
          return "d_set" + ids_text(x) + ids_text(y) + " exceeds exp(-" + to_string(level) + ")";
        });
      }
    }
  }
  return suite;
}

Suite stable_defect(const Semilattice& s, const LogWeight& lambda, Random& rng) {
  Suite suite("stable_defect");
  const std::size_t n = s.size();
  if (n > kPairwise) {
    suite.skip("pairwise scans need n <= 512");
    return suite;
  }
  auto levels = levels_with_zero(lambda);
  auto run = [&](const SubsetMask& x) {
    auto def = defect_set(s, lambda, x);
    for (const auto& c : levels) {
      bool stable = is_fbp_stable(s, lambda, c, x);
      if (stable) {
        suite.check(def <= LogMagnitude::exp(c), [&] { return ids_text(x) + " is stable at " + to_string(c) + " with a larger defect"; });
      }
      if (def.is_zero() || def.m() > c * 3) {
        suite.check(stable, [&] { return ids_text(x) + " has small defect but is not stable at " + to_string(c); });
      }
    }
  };
  if (n <= kExhaustiveSubsets) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      SubsetMask x(n, bits);
      run(x);
    }
  } else {
    for (int i = 0; i < 500; ++i) run(rng.mask(n));
  }
  return suite;
}

Suite omega(const Semilattice& s, const LogWeight& lambda, Random& rng) {
  Suite suite("omega_bound");
  const std::size_t n = s.size();
  if (n > kPairwise) {
    suite.skip("pairwise scans need n <= 512");
    return suite;
  }
  auto filters = enumerate_filters(s);
  for (int i = 0; i < 300; ++i) {
    ComplexFunction psi(n);
    const auto& f = filters[rng.below(filters.size())];
    const double noise = i % 3 == 0 ? 4.0 : 0.05;
    for (std::size_t t = 0; t < n; ++t) {
      double base = i % 3 == 0 ? 0.0 : (f[t] ? 1.0 : 0.0);
      psi[t] = Complex(base + noise * (rng.unit() - 0.5), noise * (rng.unit() - 0.5));
    }
    auto bound = omega_bound(s, lambda, psi);
    suite.check(bound.sup_ratio <= bound.bound + 1e-12, [&] { return "omega bound fails on sample " + std::to_string(i); });
    double fast = defect_complex(s, lambda, psi);
    double naive = reference::defect_complex_naive(s, lambda, psi);
    suite.check(std::abs(fast - naive) <= 1e-12, [&] { return "defect_complex differs on sample " + std::to_string(i); });
  }
  return suite;
}

Suite propagation_checks(const Semilattice& s, const LogWeight& lambda, Random& rng) {
  Suite suite("fbp");
  const std::size_t n = s.size();
  if (n > kTriple) {
    suite.skip("triple-loop oracles need n <= 64");
    return suite;
  }
  auto levels = levels_with_zero(lambda);
  for (int i = 0; i < 100; ++i) {
    auto x = rng.mask(n);
    auto e = rng.sparse_mask(n, 3);
    std::size_t ci = rng.below(levels.size());
    const Rational& c = levels[ci];
    suite.check(fbp(s, lambda, c, x) == reference::fbp_naive(s, lambda, c, x),
                [&] { return "fbp" + ids_text(x) + " at " + to_string(c) + " differs from the triple loop"; });
    auto closure = fbp_closure(s, lambda, c, e).set;
    suite.check(closure == reference::closure_naive(s, lambda, c, e),
                [&] { return "closure of " + ids_text(e) + " differs from naive iteration"; });
    SubsetMask w = level_set(lambda, c);
    suite.check((e & w).is_subset_of(closure) && closure.is_subset_of(generate_filter(s, e) & w),
                [&] { return "closure of " + ids_text(e) + " breaks the sandwich"; });
    suite.check(is_fbp_stable(s, lambda, c, closure), [&] { return "closure of " + ids_text(e) + " is not stable"; });
    if (ci + 1 < levels.size()) {
      auto bigger = fbp_closure(s, lambda, levels[ci + 1], e).set;
      suite.check(closure.is_subset_of(bigger), [&] { return "closure of " + ids_text(e) + " not monotone in C"; });
    }

    auto up = generate_filter(s, e);
    ElementId z = static_cast<ElementId>(rng.below(n));
    if (i % 2 == 0 && up.any()) {
      auto members = ids_from_mask(up);
      z = members[rng.below(members.size())];
    }
    auto v = v_value(s, lambda, e, z);
    suite.check(v == reference::v_value_dense(s, lambda, e, z),
                [&] { return "v_value" + ids_text(e) + " -> " + std::to_string(z) + " differs from the dense scan"; });
    if (!v.infinite) {
      suite.check(fbp_closure(s, lambda, v.c, e).set.test(z), [&] { return "v_value not attained"; });
      auto below = std::find_if(levels.rbegin(), levels.rend(), [&](const Rational& l) { return l < v.c; });
      if (below != levels.rend()) {
        suite.check(!fbp_closure(s, lambda, *below, e).set.test(z), [&] { return "v_value not least"; });
      }
    }
  }
  return suite;
}

struct LevelProfile {
  Rational level;
  PropagationProfile profile;
};

Suite profiles(const Semilattice& s, const LogWeight& lambda, const VerifyOptions& options,
               std::vector<LevelProfile>& out) {
  Suite suite("profile");
  const std::size_t n = s.size();
  auto levels = levels_with_zero(lambda);
  std::size_t skipped = 0;
  for (const auto& level : levels) {
    auto p = propagation_profile(s, lambda, level, options.search);
    out.push_back({level, p});
    const std::size_t wl = level_set(lambda, level).count();
    if (n <= kTriple && wl <= kProfileOracle) {
      auto brute = reference::profile_bruteforce(s, lambda, level);
      suite.check(!p.value.infinite && p.value.c == brute, [&] {
        return "profile at " + to_string(level) + " is " + to_string(p.value.c) + ", brute force gives " + to_string(brute);
      });
    } else {
      ++skipped;
    }
    if (!p.exhaustive || p.value.infinite) continue;
    auto at = check_equivalence_iii(s, lambda, level, p.value.c, options.search);
    suite.check(at.violations == 0, [&] {
      return std::to_string(at.violations) + " stable-set violations at L=" + to_string(level) + ", C=P(L)";
    });
    if (n <= kExhaustiveSubsets) {
      suite.check(reference::equivalence_violations_bruteforce(s, lambda, level, p.value.c) == 0,
                  [&] { return "brute force finds stable-set violations at C=P(L), L=" + to_string(level); });
    }
    auto lower = std::find_if(levels.rbegin(), levels.rend(), [&](const Rational& l) { return l < p.value.c; });
    // G = FBP_{C'}^∞(E) witnesses a violation when the profile witness E lies in W_{C'}.
    const bool certified = lower != levels.rend() && std::all_of(p.witness_e.begin(), p.witness_e.end(), [&](ElementId x) {
                             return lambda[x] <= *lower;
                           });
    if (certified) {
      auto below = check_equivalence_iii(s, lambda, level, *lower, options.search);
      suite.check(below.violations > 0, [&] {
        return "no stable-set violation at L=" + to_string(level) + ", C=" + to_string(*lower) + " < P(L)";
      });
    }
  }
  if (skipped > 0) suite.skip(std::to_string(skipped) + " levels too large for the brute-force profile");
  return suite;
}

Suite breadth_checks(const Semilattice& s, const VerifyOptions& options,
                     const std::vector<LevelProfile>& levels, Random& rng) {
  Suite suite("breadth");
  const std::size_t n = s.size();
  auto report = breadth(s, {options.breadth_cap, options.jobs});
  auto witness = std::span<const ElementId>(report.witness);
  suite.check(report.witness.size() == report.breadth && !is_compressible(s, witness).compressible,
              [&] { return std::string("breadth witness is compressible"); });
  if (report.witness.size() <= 20) {
    suite.check(is_free_embedding(s, witness), [&] { return std::string("breadth witness is not a free embedding"); });
  }
  auto ca = chain_and_antichain(s, witness);
  bool chain_ok = ca.chain.size() == report.breadth;
  for (std::size_t i = 1; i < ca.chain.size(); ++i) chain_ok = chain_ok && s.leq(ca.chain[i], ca.chain[i - 1]) && ca.chain[i] != ca.chain[i - 1];
  bool antichain_ok = ca.antichain.size() == report.breadth;
  for (std::size_t i = 0; i < ca.antichain.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      antichain_ok = antichain_ok && !s.leq(ca.antichain[i], ca.antichain[j]) && !s.leq(ca.antichain[j], ca.antichain[i]);
    }
  }
  suite.check(chain_ok, [] { return std::string("witness chain is not a strict chain"); });
  suite.check(antichain_ok || report.breadth < 2, [] { return std::string("witness antichain has comparable elements"); });
  if (n <= kBreadthOracle && report.exhaustive) {
    auto brute = reference::breadth_bruteforce(s, std::min(n, report.breadth + 1));
    suite.check(brute == report.breadth, [&] {
      return "breadth " + std::to_string(report.breadth) + " vs brute force " + std::to_string(brute);
    });
  }
  for (int i = 0; i < 200; ++i) {
    std::vector<ElementId> e = ids_from_mask(rng.sparse_mask(n, 4));
    auto compress = is_compressible(s, std::span<const ElementId>(e));
    suite.check(compress.compressible == !is_free_embedding(s, std::span<const ElementId>(e)),
                [&] { return std::string("compressibility disagrees with free embedding"); });
    suite.check(compress.compressible == reference::compressible_by_subsets(s, e),
                [&] { return std::string("single-removal test disagrees with the subset scan"); });
  }
  if (report.exhaustive) {
    const Rational br(static_cast<std::int64_t>(report.breadth));
    for (const auto& lp : levels) {
      if (!lp.profile.exhaustive || lp.profile.value.infinite) continue;
      suite.check(lp.profile.value.c <= br * lp.level || (lp.level == Rational(0) && lp.profile.value.c == Rational(0)), [&] {
        return "profile " + to_string(lp.profile.value.c) + " exceeds breadth * L at L=" + to_string(lp.level);
      });
    }
  }
  return suite;
}

Suite roundtrip(const Semilattice& s, const LogWeight& lambda) {
  Suite suite("roundtrip");
  auto text = instance_to_json(s, &lambda).dump();
  auto reloaded = instance_from_json(parse_json(text, "roundtrip"), false);
  suite.check(reloaded.semilattice == s, [] { return std::string("instance JSON does not reload to the same semilattice"); });
  auto weight = resolve_weight("", reloaded);
  suite.check(weight == lambda, [] { return std::string("embedded log-weight does not reload"); });
  if (s.size() <= kPairwise) {
    auto embedding = sch_embed(s);
    suite.check(embedding.homomorphism_verified, [] { return std::string("embedding is not a homomorphism"); });
  }
  return suite;
}

}  // namespace

OrderedJson verify_instance(const std::string& name, const LoadedInstance& instance,
                            const LogWeight& lambda, const VerifyOptions& options) {
  const auto& s = instance.semilattice;
  Random rng(options.seed, name);
  std::vector<Suite> suites;
  suites.push_back(axioms(s));
  suites.push_back(weight(s, lambda));
  if (suites[0].passed() && suites[1].passed()) {
    std::vector<LevelProfile> levels;
    suites.push_back(filters(s, rng));
    suites.push_back(defect_and_distance(s, lambda, rng));
    suites.push_back(level_lemma(s, lambda, rng));
    suites.push_back(stable_defect(s, lambda, rng));
    suites.push_back(omega(s, lambda, rng));
    suites.push_back(propagation_checks(s, lambda, rng));
    suites.push_back(profiles(s, lambda, options, levels));
    suites.push_back(breadth_checks(s, options, levels, rng));
    suites.push_back(roundtrip(s, lambda));
  }
  OrderedJson out;
  out["instance"] = name;
  out["kind"] = s.kind() == Kind::Table ? "table" : "set_system";
  out["n"] = s.size();
  bool passed = true;
  OrderedJson list = OrderedJson::array();
  for (const auto& suite : suites) {
    passed = passed && suite.passed();
    list.push_back(suite.json());
  }
  out["suites"] = std::move(list);
  out["passed"] = passed;
  return out;
}

std::vector<std::pair<std::string, std::string>> standard_corpus() {
  return {{"gen:chain:4", "zero"},
          {"gen:tree:2:2", "zero"},
          {"gen:free:3", "cardinality"},
          {"gen:prototype:4", "prototype"},
          {"gen:fin:4:2", "cardinality"}};
}

}  // namespace slat::cli
