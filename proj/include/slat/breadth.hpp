#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slat/semilattice.hpp"

namespace slat {

struct CompressResult {
  bool compressible = false;
  /// An x with ∏(E∖{x}) = ∏E, when one exists.
  std::optional<ElementId> witness;
};

/// Single-removal test. Throws EmptySet for an empty E; a one-element set is
/// incompressible.
CompressResult is_compressible(const Semilattice& s, std::span<const ElementId> e);

/// True when the subsemigroup generated by E has 2^|E| - 1 elements.
/// Throws SizeLimit above 20 generators.
bool is_free_embedding(const Semilattice& s, std::span<const ElementId> e);

struct BreadthOptions {
  /// Search-tree nodes before giving up on exactness.
  std::size_t cap = 10'000'000;
  /// 0 defers to SLAT_JOBS, else 1.
  unsigned jobs = 0;
};

struct BreadthReport {
  std::size_t breadth = 1;
  std::vector<ElementId> witness;
  bool exhaustive = true;
  std::size_t nodes = 0;
  /// floor(log2(n + 1)); an incompressible k-set generates 2^k - 1 elements.
  std::size_t upper_bound = 1;
};

BreadthReport breadth(const Semilattice& s, const BreadthOptions& options = {});

struct IncompressibleSearch {
  std::optional<std::vector<ElementId>> set;
  bool exhaustive = true;
  std::size_t nodes = 0;
};

/// First incompressible k-subset in canonical depth-first order.
IncompressibleSearch find_incompressible_of_size(const Semilattice& s, std::size_t k,
                                                 std::size_t cap = 10'000'000);

struct ChainAntichain {
  std::vector<ElementId> chain;      ///< prefix products x1, x1x2, ...
  std::vector<ElementId> antichain;  ///< ∏(E∖{x_j}) for each j
};

/// The chain and antichain of size |E| carried by an incompressible E.
ChainAntichain chain_and_antichain(const Semilattice& s, std::span<const ElementId> e);

}  // namespace slat
