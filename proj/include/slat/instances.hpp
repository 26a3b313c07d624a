#pragma once

#include <string>

#include "slat/semilattice.hpp"

namespace slat {

/// Chain 0 < 1 < ... < m-1 with product = min.
Semilattice chain(std::size_t m, const Limits& limits = {});

/// All subsets of a k-set under union, including the empty set.
Semilattice powerset(std::size_t k, const Limits& limits = {});

/// P_*(k): the nonempty subsets of a k-set under union.
Semilattice free_semilattice(std::size_t k, const Limits& limits = {});

/// Subsets of a k-set of cardinality at most c.
///
/// By default the family is replaced by its union-closure, which is the whole
/// powerset for c >= 1. With `exact` the family is kept as is and NotClosed is
/// thrown when it is not a semilattice.
Semilattice fin_truncation(std::size_t k, std::size_t c, bool exact = false,
                           const Limits& limits = {});

/// Complete k-ary tree of the given depth, BFS numbered from the root, with
/// product = lowest common ancestor.
Semilattice kary_tree(std::size_t k, std::size_t depth, const Limits& limits = {});

/// Host of the prototype weight: P_*(n), whose top element is the full set.
Semilattice prototype(std::size_t n, const Limits& limits = {});

struct GeneratedInstance {
  Semilattice semilattice;
  std::string family;
  /// Built-in weight that belongs with the family: "prototype" for prototype,
  /// "cardinality" for fin and fin_exact, "zero" otherwise.
  std::string default_weight;
};

/// Parses a family descriptor such as "chain:5", "powerset:3", "free:4",
/// "fin:24:8", "fin_exact:5:5", "tree:2:3" or "prototype:6".
GeneratedInstance generate_instance(const std::string& descriptor, const Limits& limits = {});

}  // namespace slat
