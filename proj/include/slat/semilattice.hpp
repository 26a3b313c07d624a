#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slat/common.hpp"

namespace slat {

enum class Kind { Table, SetSystem };

const char* to_string(Kind kind);

/// Size guards applied by constructors and generators.
struct Limits {
  /// A Table stores n*n ids, so this is a memory guard as much as a size guard.
  std::size_t max_table = 16384;
  std::size_t max_set_system = std::size_t{1} << 25;
  /// Set systems up to this size keep a materialized product table.
  std::size_t product_table_threshold = 2048;
};

namespace detail {

/// Open-addressing index from a member set (as packed words) to its element id.
class SetIndex {
 public:
  void build(std::span<const std::uint64_t> words, std::size_t words_per_set, std::size_t count);
  ElementId find(std::span<const std::uint64_t> words, std::span<const std::uint64_t> key,
                 std::size_t words_per_set) const;

 private:
  std::vector<ElementId> slots_;
  std::size_t mask_ = 0;
};

}  // namespace detail

/// A finite semilattice, stored either as a product table or as a family of
/// finite sets whose product is union.
///
/// Set systems are kept in canonical order: by cardinality, then
/// lexicographically on the sorted universe indices. Element ids of a set
/// system are therefore reproducible from the sets alone.
///
/// Values are immutable after construction and safe to share across threads.
class Semilattice {
 public:
  /// `product` is row-major n*n. Entries must be < n; algebraic axioms are
  /// checked separately by validate().
  static Semilattice table(std::size_t n, std::vector<ElementId> product,
                           std::vector<std::string> labels = {}, const Limits& limits = {});

  /// Builds a set system from explicit member sets (universe indices).
  /// Duplicate sets are rejected. Elements are reordered canonically; when
  /// `input_to_id` is given it receives the id assigned to each input set.
  static Semilattice set_system(std::size_t ground_size,
                                const std::vector<std::vector<std::uint32_t>>& sets,
                                std::vector<std::string> ground_labels = {},
                                std::vector<std::string> labels = {},
                                std::vector<ElementId>* input_to_id = nullptr,
                                const Limits& limits = {});

  /// Fast path for generators: `words` holds `count` packed member sets that
  /// are already distinct and in canonical order.
  static Semilattice set_system_from_canonical_words(std::size_t ground_size,
                                                     std::vector<std::uint64_t> words,
                                                     std::vector<std::string> ground_labels = {},
                                                     const Limits& limits = {});

  Kind kind() const { return kind_; }
  std::size_t size() const { return n_; }

  /// Product of two elements. Throws Error(NotClosed) if a set system lacks
  /// the union of the two sets.
  ElementId product(ElementId x, ElementId y) const;
  std::optional<ElementId> try_product(ElementId x, ElementId y) const;
  /// Product of every element of a nonempty mask.
  ElementId product_of(const SubsetMask& elements) const;
  ElementId product_of(std::span<const ElementId> elements) const;

  /// x ⪯ y, i.e. xy = x. For set systems this is reverse inclusion.
  bool leq(ElementId x, ElementId y) const;

  /// The principal filter ↑x = {t : x ⪯ t}.
  SubsetMask up_set(ElementId x) const;

  /// The identity element (⪯-maximum), if any.
  std::optional<ElementId> identity() const;

  // Set-system accessors. Calling these on a Table throws KindMismatch.
  std::size_t ground_size() const;
  std::size_t words_per_set() const { return words_per_set_; }
  std::span<const std::uint64_t> words(ElementId x) const;
  std::vector<std::uint32_t> member_set(ElementId x) const;
  std::size_t cardinality(ElementId x) const;
  std::optional<ElementId> find_set(std::span<const std::uint64_t> words) const;
  std::optional<ElementId> find_set(const std::vector<std::uint32_t>& set) const;
  const std::vector<std::string>& ground_labels() const { return ground_labels_; }
  std::string ground_label(std::uint32_t point) const;

  /// Row-major product table (Table kind only).
  std::span<const ElementId> table_data() const { return product_; }

  const std::vector<std::string>& labels() const { return labels_; }
  /// Display name: the stored label, else "{a,b}" for sets, else "e<id>".
  std::string label(ElementId x) const;

  bool operator==(const Semilattice& other) const;

 private:
  Semilattice() = default;
  void require_sets(const char* what) const;
  void finish_set_system(const Limits& limits);

  Kind kind_ = Kind::Table;
  std::size_t n_ = 0;
  std::vector<ElementId> product_;
  std::vector<std::string> labels_;

  std::size_t ground_size_ = 0;
  std::size_t words_per_set_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::string> ground_labels_;
  detail::SetIndex index_;
};

std::size_t words_for(std::size_t ground_size);

enum class ViolationKind { NotCommutative, NotAssociative, NotIdempotent, NotUnionClosed };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<ElementId> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;  ///< first few, in discovery order
  std::size_t total = 0;

  bool ok() const { return total == 0; }
};

/// Checks commutativity, associativity and idempotence (Table) or closure
/// under binary union (SetSystem). Violations are data, never exceptions.
ValidationReport validate(const Semilattice& s, std::size_t max_listed = 32);

/// Result of the Schützenberger embedding x ↦ E_x = {t : t ⪯ x}.
///
/// E_x ∩ E_y = E_xy, so the raw image is intersection-closed. We emit the
/// complements S∖E_x, which form a union-closed family.
struct SchEmbedding {
  Semilattice system;
  std::vector<ElementId> image;  ///< image[x] = id of x's set in `system`
  bool homomorphism_verified = false;
  std::string convention = "complement";
};

SchEmbedding sch_embed(const Semilattice& s);

/// Lossless conversions between the two representations.
Semilattice to_table(const Semilattice& s, const Limits& limits = {});
Semilattice to_set_system(const Semilattice& s);

/// Union-closure of a set family (used by loaders given --close).
std::vector<std::vector<std::uint32_t>> union_closure(
    std::size_t ground_size, const std::vector<std::vector<std::uint32_t>>& sets,
    std::size_t max_sets);

}  // namespace slat
