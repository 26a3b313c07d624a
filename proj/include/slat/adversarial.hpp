#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slat/propagation.hpp"
#include "slat/semilattice.hpp"
#include "slat/weights.hpp"

namespace slat {

struct Markers {
  std::vector<ElementId> b;           ///< elements b_1..b_m of the host
  std::vector<std::uint32_t> gamma;   ///< γ_j ∈ b_j ∖ b_k for k ≠ j, all outside a
};

/// Finds m elements with private points outside `a`, starting from an
/// incompressible set of size |a| + m. Throws InsufficientBreadth when the
/// host has none (or the search cap is hit first).
Markers find_markers(const Semilattice& s, const std::vector<std::uint32_t>& a, std::size_t m,
                     std::size_t cap = 10'000'000);

/// The marker sets E_n, families F_n and prefixes D_n of the construction,
/// truncated at the deepest level the host supports.
struct AdversarialChain {
  std::size_t requested = 0;
  std::size_t depth = 0;
  std::vector<std::vector<std::uint32_t>> markers;      ///< E_1..E_depth
  std::vector<std::vector<ElementId>> families;         ///< F_1..F_depth
  std::vector<std::vector<std::uint32_t>> cumulative;   ///< D_0..D_depth
  bool truncated = false;
  std::string notice;
};

/// Builds levels 1..n_max. With strict = false a level that runs out of
/// breadth ends the chain early and sets `truncated`.
AdversarialChain build_chain(const Semilattice& s, std::size_t n_max, bool strict = false,
                             std::size_t cap = 10'000'000);

struct ChainCheck {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Cardinalities, disjointness, containment of D_{n-1}, unique owners of
/// markers, and incompressibility of every F_n.
ChainCheck check_chain(const Semilattice& s, const AdversarialChain& chain);

/// η(x) = |(x ∩ D_∞) ∖ D_{N(x)}| with N(x) = max{n : D_n ⊆ x} and
/// D_∞ = D_depth.
struct EtaWeight {
  LogWeight values;
  std::vector<std::uint32_t> level;  ///< N(x)
};

EtaWeight eta_weight(const AdversarialChain& chain, const Semilattice& s);

struct SubadditivityCheck {
  bool ok = true;
  bool exhaustive = true;
  std::size_t traces = 0;
  std::size_t pairs = 0;
  std::optional<std::pair<ElementId, ElementId>> witness;
};

/// η depends only on x ∩ D_∞ and traces of a union are unions of traces, so
/// checking every pair of traces that occur in S covers every pair of
/// elements. Falls back to random pairs above `max_traces`.
SubadditivityCheck check_eta_subadditivity(const AdversarialChain& chain, const Semilattice& s,
                                           const EtaWeight& eta, std::size_t max_traces = 4096,
                                           std::uint64_t seed = 0);

struct BarrierResult {
  std::size_t n = 0;
  ElementId z = kNoElement;  ///< join of F_n
  Rational eta_z = 0;
  bool family_in_w1 = false;
  bool evaluated = false;    ///< false when ⟨F_n⟩ exceeds the universe cap
  PropagationValue value = PropagationValue::infinity();
  bool passed = false;
};

/// V_{F_n}(z_n) under η, checked against n/2.
BarrierResult verify_barrier(const AdversarialChain& chain, const Semilattice& s,
                             const EtaWeight& eta, std::size_t n,
                             std::size_t universe_cap = 4096);

}  // namespace slat
