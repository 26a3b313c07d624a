#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "slat/semilattice.hpp"
#include "slat/weights.hpp"

namespace slat {

/// V_E(z): either a finite exact level or +∞.
struct PropagationValue {
  bool infinite = true;
  Rational c = 0;

  static PropagationValue finite(Rational value) { return {false, value}; }
  static PropagationValue infinity() { return {true, 0}; }

  friend bool operator==(const PropagationValue& a, const PropagationValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.c == b.c);
  }
};

/// One application of FBP_C: {z ∈ W_C : z ⪰ xy for some x, y ∈ X ∩ W_C}.
SubsetMask fbp(const Semilattice& s, const LogWeight& lambda, const Rational& c, const SubsetMask& x);

struct ClosureResult {
  SubsetMask set;
  /// Number of applications of FBP_C that changed the set.
  std::size_t iterations = 0;
};

/// FBP_C^∞(E), the union of all iterates of FBP_C on E.
ClosureResult fbp_closure(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                          const SubsetMask& e);

/// FBP_C(X) ⊆ X.
bool is_fbp_stable(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                   const SubsetMask& x);

/// Least C with z ∈ FBP_C^∞(E), or +∞ when z ∉ ⟨E⟩.
PropagationValue v_value(const Semilattice& s, const LogWeight& lambda,
                         std::span<const ElementId> e, ElementId z);
PropagationValue v_value(const Semilattice& s, const LogWeight& lambda, const SubsetMask& e,
                         ElementId z);

struct SearchOptions {
  /// Maximum number of closure computations before falling back to sampling.
  std::size_t budget = 2'000'000;
  /// Random E drawn once the budget is spent.
  std::size_t samples = 256;
  bool strict = false;
  std::uint64_t seed = 0;
};

struct PropagationProfile {
  Rational level = 0;
  PropagationValue value = PropagationValue::finite(0);
  std::vector<ElementId> witness_e;
  std::optional<ElementId> witness_z;
  bool exhaustive = true;
  std::size_t closures = 0;
  /// Threshold increases taken by the search.
  std::size_t steps = 0;
};

/// sup over nonempty E ⊆ W_L and z ∈ ⟨E⟩ ∩ W_L of V_E(z).
///
/// Scans candidate levels upward. A level C is accepted once every set A ⊆ W_L
/// that is closed under A ↦ FBP_C^∞(A) ∩ W_L already contains ⟨A⟩ ∩ W_L; the
/// closed sets are enumerated with Close-by-One. A failing set yields a pair
/// (E, z) whose exact V_E(z) becomes the next candidate.
PropagationProfile propagation_profile(const Semilattice& s, const LogWeight& lambda,
                                       const Rational& level, const SearchOptions& options = {});

struct EquivalenceReport {
  Rational level = 0;
  Rational c = 0;
  std::size_t closed_sets = 0;
  std::size_t stable_sets_checked = 0;
  std::size_t violations = 0;
  bool exhaustive = true;
  std::vector<ElementId> witness_g;
  std::optional<ElementId> witness_z;
};

/// Checks G ∩ W_L = ⟨G ∩ W_L⟩ ∩ W_L over C-stable sets G.
EquivalenceReport check_equivalence_iii(const Semilattice& s, const LogWeight& lambda,
                                        const Rational& level, const Rational& c,
                                        const SearchOptions& options = {});

struct BreadthBoundReport {
  Rational level = 0;
  std::size_t breadth = 0;
  PropagationProfile profile;
  bool ok = false;
  std::optional<Rational> ratio;  ///< profile / (breadth · L) when L > 0
};

BreadthBoundReport finite_breadth_bound_check(const Semilattice& s, const LogWeight& lambda,
                                              const Rational& level, std::size_t breadth,
                                              const SearchOptions& options = {});

namespace detail {

/// FBP closure over a fixed finite universe U ⊆ S, with sets held as bitsets
/// over positions in U. Positions follow the order given at construction.
class ClosureEngine {
 public:
  ClosureEngine(const Semilattice& s, std::vector<ElementId> universe);

  std::size_t size() const { return universe_.size(); }
  ElementId element(std::size_t i) const { return universe_[i]; }
  std::optional<std::size_t> index_of(ElementId x) const;
  SubsetMask empty() const { return SubsetMask(universe_.size()); }

  /// ↑p ∩ U for any element p of S.
  const SubsetMask& up(ElementId p);

  /// Grows `set`, which must already be closed within `active`, to the
  /// closure of set ∪ (added ∩ active). Returns false and leaves `set`
  /// partially grown if a position below `abort_below` is reached.
  bool extend(SubsetMask& set, const SubsetMask& added, const SubsetMask& active,
              std::size_t abort_below = 0, std::size_t* rounds = nullptr);

  std::size_t closures() const { return closures_; }

 private:
  std::uint32_t slot_of(ElementId p);
  std::uint32_t pair_slot(std::size_t i, std::size_t j);

  const Semilattice& s_;
  std::vector<ElementId> universe_;
  std::unordered_map<ElementId, std::size_t> position_;
  std::unordered_map<ElementId, std::uint32_t> slots_;
  std::vector<ElementId> slot_element_;
  std::vector<std::optional<SubsetMask>> up_cache_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t generation_ = 0;
  std::vector<std::uint32_t> pair_table_;
  std::size_t closures_ = 0;
};

}  // namespace detail

}  // namespace slat
