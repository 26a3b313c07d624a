#pragma once

// Direct, definition-level implementations used as oracles by the test suite
// and by `slat verify`. Everything here is exponential or cubic on purpose and
// shares no code with the fast paths beyond the Semilattice product.

#include <vector>

#include "slat/metrics.hpp"
#include "slat/propagation.hpp"
#include "slat/semilattice.hpp"
#include "slat/weights.hpp"

namespace slat::reference {

/// Every subset F with F ≠ ∅ and xy ∈ F ⟺ x, y ∈ F, found by trying all 2^n
/// subsets. n <= 20.
std::vector<SubsetMask> filters_bruteforce(const Semilattice& s);

/// Intersection of all filters-or-empty containing E.
SubsetMask generate_filter_oracle(const Semilattice& s, const std::vector<SubsetMask>& filters,
                                  const SubsetMask& e);

/// ↑x by scanning products.
SubsetMask up_naive(const Semilattice& s, ElementId x);

LogMagnitude defect_set_naive(const Semilattice& s, const LogWeight& lambda, const SubsetMask& x);
LogMagnitude dist_set_bruteforce(const Semilattice& s, const LogWeight& lambda,
                                 const std::vector<SubsetMask>& filters, const SubsetMask& x);
double defect_complex_naive(const Semilattice& s, const LogWeight& lambda, const ComplexFunction& psi);

/// One FBP_C step by the triple loop over (x, y, z).
SubsetMask fbp_naive(const Semilattice& s, const LogWeight& lambda, const Rational& c, const SubsetMask& x);

/// Iterates fbp_naive from E until nothing changes.
SubsetMask closure_naive(const Semilattice& s, const LogWeight& lambda, const Rational& c,
                         const SubsetMask& e);

/// Levels probed by the dense scan: 0, every value of λ, the midpoints
/// between consecutive values, and one level above the maximum.
std::vector<Rational> dense_levels(const LogWeight& lambda);

/// First dense level whose closure reaches z, or +∞ if z ∉ ⟨E⟩.
PropagationValue v_value_dense(const Semilattice& s, const LogWeight& lambda, const SubsetMask& e,
                               ElementId z);

/// Maximum of v_value_dense over all nonempty E ⊆ W_L and z ∈ ⟨E⟩ ∩ W_L.
/// Returns 0 when W_L is empty.
Rational profile_bruteforce(const Semilattice& s, const LogWeight& lambda, const Rational& level);

/// Number of C-stable G ⊆ S (all 2^n) with G ∩ W_L ≠ ⟨G ∩ W_L⟩ ∩ W_L.
std::size_t equivalence_violations_bruteforce(const Semilattice& s, const LogWeight& lambda,
                                              const Rational& level, const Rational& c);

/// Compressible by the definition: some proper nonempty subset has the same product.
bool compressible_by_subsets(const Semilattice& s, const std::vector<ElementId>& e);

/// Largest k <= max_k such that some k-subset is incompressible by the definition.
std::size_t breadth_bruteforce(const Semilattice& s, std::size_t max_k);

}  // namespace slat::reference
