#include "slat/semilattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>

namespace slat {

const char* to_string(Kind kind) { return kind == Kind::Table ? "table" : "set_system"; }

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NotCommutative: return "NotCommutative";
    case ViolationKind::NotAssociative: return "NotAssociative";
    case ViolationKind::NotIdempotent: return "NotIdempotent";
    case ViolationKind::NotUnionClosed: return "NotUnionClosed";
  }
  return "Unknown";
}

std::size_t words_for(std::size_t ground_size) { return std::max<std::size_t>(1, (ground_size + 63) / 64); }

namespace {

std::uint64_t hash_words(std::span<const std::uint64_t> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words) {
    std::uint64_t z = w + h + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return h;
}

std::size_t popcount(std::span<const std::uint64_t> words) {
  std::size_t c = 0;
  for (auto w : words) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// (cardinality, lexicographic on sorted indices). Between equal-size sets the
// one holding the lowest differing point comes first.
bool canonical_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  auto ca = popcount(a);
  auto cb = popcount(b);
  if (ca != cb) return ca < cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t diff = a[i] ^ b[i];
    if (diff != 0) {
      std::uint64_t low = diff & (~diff + 1);
      return (a[i] & low) != 0;
    }
  }
  return false;
}

// Scratch storage for a union of two member sets.
class WordBuffer {
 public:
  explicit WordBuffer(std::size_t size) : size_(size) {
    if (size_ > small_.size()) large_.resize(size_);
  }
  std::span<std::uint64_t> span() {
    return size_ <= small_.size() ? std::span<std::uint64_t>(small_.data(), size_)
                                  : std::span<std::uint64_t>(large_);
  }

 private:
  std::size_t size_;
  std::array<std::uint64_t, 8> small_{};
  std::vector<std::uint64_t> large_;
};

}  // namespace

namespace detail {

void SetIndex::build(std::span<const std::uint64_t> words, std::size_t words_per_set,
                     std::size_t count) {
  std::size_t capacity = 16;
  while (capacity < 2 * count) capacity <<= 1;
  slots_.assign(capacity, kNoElement);
  mask_ = capacity - 1;
  for (std::size_t id = 0; id < count; ++id) {
    auto key = words.subspan(id * words_per_set, words_per_set);
    std::size_t slot = hash_words(key) & mask_;
    while (slots_[slot] != kNoElement) slot = (slot + 1) & mask_;
    slots_[slot] = static_cast<ElementId>(id);
  }
}

ElementId SetIndex::find(std::span<const std::uint64_t> words, std::span<const std::uint64_t> key,
                         std::size_t words_per_set) const {
  if (slots_.empty()) return kNoElement;
  std::size_t slot = hash_words(key) & mask_;
  while (slots_[slot] != kNoElement) {
    ElementId id = slots_[slot];
    auto stored = words.subspan(static_cast<std::size_t>(id) * words_per_set, words_per_set);
    if (std::equal(stored.begin(), stored.end(), key.begin())) return id;
    slot = (slot + 1) & mask_;
  }
  return kNoElement;
}

}  // namespace detail

Semilattice Semilattice::table(std::size_t n, std::vector<ElementId> product,
                               std::vector<std::string> labels, const Limits& limits) {
  if (n == 0) throw Error(ErrorCode::InvalidInstance, "a semilattice needs at least one element");
  if (n > limits.max_table) {
    throw Error(ErrorCode::SizeLimit, "table with n = " + std::to_string(n) +
                                          " exceeds the cap of " + std::to_string(limits.max_table));
  }
  if (product.size() != n * n) {
    throw Error(ErrorCode::InvalidInstance, "product table must have n*n entries");
  }
  for (ElementId v : product) {
    if (v >= n) throw Error(ErrorCode::InvalidInstance, "product table entry out of range");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::InvalidInstance, "labels must have one entry per element");
  }
  Semilattice s;
  s.kind_ = Kind::Table;
  s.n_ = n;
  s.product_ = std::move(product);
  s.labels_ = std::move(labels);
  return s;
}

Semilattice Semilattice::set_system(std::size_t ground_size,
                                    const std::vector<std::vector<std::uint32_t>>& sets,
                                    std::vector<std::string> ground_labels,
                                    std::vector<std::string> labels,
                                    std::vector<ElementId>* input_to_id, const Limits& limits) {
  const std::size_t n = sets.size();
  if (n == 0) throw Error(ErrorCode::InvalidInstance, "a semilattice needs at least one element");
  if (n > limits.max_set_system) {
    throw Error(ErrorCode::SizeLimit, "set system with n = " + std::to_string(n) +
                                          " exceeds the cap of " +
                                          std::to_string(limits.max_set_system));
  }
  if (!ground_labels.empty() && ground_labels.size() != ground_size) {
    throw Error(ErrorCode::InvalidInstance, "ground labels must match the universe size");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::InvalidInstance, "labels must have one entry per element");
  }
  const std::size_t wps = words_for(ground_size);
  std::vector<std::uint64_t> raw(n * wps, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t point : sets[i]) {
      if (point >= ground_size) {
        throw Error(ErrorCode::InvalidInstance, "universe index " + std::to_string(point) +
                                                    " out of range");
      }
      raw[i * wps + point / 64] |= std::uint64_t{1} << (point % 64);
    }
  }
  auto row = [&](std::size_t i) { return std::span<const std::uint64_t>(raw).subspan(i * wps, wps); };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return canonical_less(row(a), row(b)); });
  for (std::size_t k = 1; k < n; ++k) {
    auto a = row(order[k - 1]);
    auto b = row(order[k]);
    if (std::equal(a.begin(), a.end(), b.begin())) {
      throw Error(ErrorCode::InvalidInstance, "duplicate element set at input positions " +
                                                  std::to_string(order[k - 1]) + " and " +
                                                  std::to_string(order[k]));
    }
  }
  Semilattice s;
  s.kind_ = Kind::SetSystem;
  s.n_ = n;
  s.ground_size_ = ground_size;
  s.words_per_set_ = wps;
  s.ground_labels_ = std::move(ground_labels);
  s.words_.resize(n * wps);
  if (!labels.empty()) s.labels_.resize(n);
  if (input_to_id) input_to_id->assign(n, kNoElement);
  for (std::size_t k = 0; k < n; ++k) {
    auto src = row(order[k]);
    std::copy(src.begin(), src.end(), s.words_.begin() + static_cast<std::ptrdiff_t>(k * wps));
    if (!labels.empty()) s.labels_[k] = std::move(labels[order[k]]);
    if (input_to_id) (*input_to_id)[order[k]] = static_cast<ElementId>(k);
  }
  s.finish_set_system(limits);
  return s;
}

Semilattice Semilattice::set_system_from_canonical_words(std::size_t ground_size,
                                                         std::vector<std::uint64_t> words,
                                                         std::vector<std::string> ground_labels,
                                                         const Limits& limits) {
  const std::size_t wps = words_for(ground_size);
  if (words.empty() || words.size() % wps != 0) {
    throw Error(ErrorCode::InvalidInstance, "packed set data has the wrong length");
  }
  const std::size_t n = words.size() / wps;
  if (n > limits.max_set_system) {
    throw Error(ErrorCode::SizeLimit, "set system with n = " + std::to_string(n) +
                                          " exceeds the cap of " +
                                          std::to_string(limits.max_set_system));
  }
  Semilattice s;
  s.kind_ = Kind::SetSystem;
  s.n_ = n;
  s.ground_size_ = ground_size;
  s.words_per_set_ = wps;
  s.words_ = std::move(words);
  s.ground_labels_ = std::move(ground_labels);
  s.finish_set_system(limits);
  return s;
}

void Semilattice::finish_set_system(const Limits& limits) {
  index_.build(words_, words_per_set_, n_);
  if (n_ <= limits.product_table_threshold) {
    product_.assign(n_ * n_, kNoElement);
    WordBuffer buf(words_per_set_);
    auto u = buf.span();
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = x; y < n_; ++y) {
        auto a = words(static_cast<ElementId>(x));
        auto b = words(static_cast<ElementId>(y));
        for (std::size_t i = 0; i < words_per_set_; ++i) u[i] = a[i] | b[i];
        ElementId p = index_.find(words_, u, words_per_set_);
        product_[x * n_ + y] = p;
        product_[y * n_ + x] = p;
      }
    }
  }
}

void Semilattice::require_sets(const char* what) const {
  if (kind_ != Kind::SetSystem) {
    throw Error(ErrorCode::KindMismatch, std::string(what) + " requires a set-system instance");
  }
}

std::optional<ElementId> Semilattice::try_product(ElementId x, ElementId y) const {
  if (!product_.empty()) {
    ElementId p = product_[static_cast<std::size_t>(x) * n_ + y];
    if (p == kNoElement) return std::nullopt;
    return p;
  }
  WordBuffer buf(words_per_set_);
  auto u = buf.span();
  auto a = words(x);
  auto b = words(y);
  for (std::size_t i = 0; i < words_per_set_; ++i) u[i] = a[i] | b[i];
  ElementId p = index_.find(words_, u, words_per_set_);
  if (p == kNoElement) return std::nullopt;
  return p;
}

ElementId Semilattice::product(ElementId x, ElementId y) const {
  auto p = try_product(x, y);
  if (!p) {
    throw Error(ErrorCode::NotClosed, "union of " + label(x) + " and " + label(y) +
                                          " is not an element of the set system");
  }
  return *p;
}

ElementId Semilattice::product_of(std::span<const ElementId> elements) const {
  if (elements.empty()) throw Error(ErrorCode::EmptySet, "product of an empty family");
  if (kind_ == Kind::SetSystem) {
    WordBuffer buf(words_per_set_);
    auto u = buf.span();
    std::fill(u.begin(), u.end(), 0);
    for (ElementId e : elements) {
      auto w = words(e);
      for (std::size_t i = 0; i < words_per_set_; ++i) u[i] |= w[i];
    }
    ElementId p = index_.find(words_, u, words_per_set_);
    if (p == kNoElement) throw Error(ErrorCode::NotClosed, "union of the family is not an element");
    return p;
  }
  ElementId acc = elements.front();
  for (std::size_t i = 1; i < elements.size(); ++i) acc = product(acc, elements[i]);
  return acc;
}

ElementId Semilattice::product_of(const SubsetMask& elements) const {
  return product_of(ids_from_mask(elements));
}

bool Semilattice::leq(ElementId x, ElementId y) const {
  if (kind_ == Kind::SetSystem) {
    auto a = words(x);
    auto b = words(y);
    for (std::size_t i = 0; i < words_per_set_; ++i) {
      if ((b[i] & ~a[i]) != 0) return false;
    }
    return true;
  }
  return product_[static_cast<std::size_t>(x) * n_ + y] == x;
}

SubsetMask Semilattice::up_set(ElementId x) const {
  SubsetMask up(n_);
  for (std::size_t t = 0; t < n_; ++t) {
    if (leq(x, static_cast<ElementId>(t))) up.set(t);
  }
  return up;
}

std::optional<ElementId> Semilattice::identity() const {
  if (kind_ == Kind::SetSystem) {
    if (cardinality(0) == 0) return ElementId{0};
    return std::nullopt;
  }
  for (std::size_t e = 0; e < n_; ++e) {
    bool top = true;
    for (std::size_t x = 0; x < n_ && top; ++x) {
      top = leq(static_cast<ElementId>(x), static_cast<ElementId>(e));
    }
    if (top) return static_cast<ElementId>(e);
  }
  return std::nullopt;
}

std::size_t Semilattice::ground_size() const {
  require_sets("ground_size");
  return ground_size_;
}

std::span<const std::uint64_t> Semilattice::words(ElementId x) const {
  return std::span<const std::uint64_t>(words_).subspan(static_cast<std::size_t>(x) * words_per_set_,
                                                        words_per_set_);
}

std::vector<std::uint32_t> Semilattice::member_set(ElementId x) const {
  require_sets("member_set");
  std::vector<std::uint32_t> out;
  auto w = words(x);
  for (std::size_t i = 0; i < words_per_set_; ++i) {
    std::uint64_t bits = w[i];
    while (bits != 0) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t Semilattice::cardinality(ElementId x) const {
  require_sets("cardinality");
  return popcount(words(x));
}

std::optional<ElementId> Semilattice::find_set(std::span<const std::uint64_t> key) const {
  require_sets("find_set");
  if (key.size() != words_per_set_) return std::nullopt;
  ElementId id = index_.find(words_, key, words_per_set_);
  if (id == kNoElement) return std::nullopt;
  return id;
}

std::optional<ElementId> Semilattice::find_set(const std::vector<std::uint32_t>& set) const {
  require_sets("find_set");
  std::vector<std::uint64_t> key(words_per_set_, 0);
  for (auto p : set) {
    if (p >= ground_size_) return std::nullopt;
    key[p / 64] |= std::uint64_t{1} << (p % 64);
  }
  return find_set(std::span<const std::uint64_t>(key));
}

std::string Semilattice::ground_label(std::uint32_t point) const {
  if (point < ground_labels_.size()) return ground_labels_[point];
  return std::to_string(point);
}

std::string Semilattice::label(ElementId x) const {
  if (!labels_.empty()) return labels_[x];
  if (kind_ == Kind::SetSystem) {
    std::string out = "{";
    bool first = true;
    for (auto p : member_set(x)) {
      if (!first) out += ",";
      out += ground_label(p);
      first = false;
    }
    return out + "}";
  }
  return "e" + std::to_string(x);
}

bool Semilattice::operator==(const Semilattice& other) const {
  if (kind_ != other.kind_ || n_ != other.n_ || labels_ != other.labels_) return false;
  if (kind_ == Kind::Table) return product_ == other.product_;
  return ground_size_ == other.ground_size_ && words_ == other.words_ &&
         ground_labels_ == other.ground_labels_;
}

ValidationReport validate(const Semilattice& s, std::size_t max_listed) {
  ValidationReport report;
  auto record = [&](ViolationKind kind, std::vector<ElementId> witness) {
    ++report.total;
    if (report.violations.size() < max_listed) report.violations.push_back({kind, std::move(witness)});
  };
  const auto n = static_cast<ElementId>(s.size());
  if (s.kind() == Kind::SetSystem) {
    // Union is commutative, associative and idempotent; closure is the only axiom at risk.
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId y = x + 1; y < n; ++y) {
        if (!s.try_product(x, y)) record(ViolationKind::NotUnionClosed, {x, y});
      }
    }
    return report;
  }
  for (ElementId x = 0; x < n; ++x) {
    if (s.product(x, x) != x) record(ViolationKind::NotIdempotent, {x});
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x + 1; y < n; ++y) {
      if (s.product(x, y) != s.product(y, x)) record(ViolationKind::NotCommutative, {x, y});
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      ElementId xy = s.product(x, y);
      for (ElementId z = 0; z < n; ++z) {
        if (s.product(xy, z) != s.product(x, s.product(y, z))) {
          record(ViolationKind::NotAssociative, {x, y, z});
        }
      }
    }
  }
  return report;
}

SchEmbedding sch_embed(const Semilattice& s) {
  const std::size_t n = s.size();
  if (n > 4096) throw Error(ErrorCode::SizeLimit, "sch_embed is limited to n <= 4096");
  std::vector<std::vector<std::uint32_t>> sets(n);
  std::vector<std::string> ground_labels(n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    ground_labels[x] = s.label(static_cast<ElementId>(x));
    labels[x] = ground_labels[x];
    for (std::size_t t = 0; t < n; ++t) {
      if (!s.leq(static_cast<ElementId>(t), static_cast<ElementId>(x))) {
        sets[x].push_back(static_cast<std::uint32_t>(t));
      }
    }
  }
  SchEmbedding out{Semilattice::set_system(n, sets, std::move(ground_labels), std::move(labels),
                                           nullptr),
                   {}, false, "complement"};
  Semilattice::set_system(n, sets, {}, {}, &out.image);
  bool ok = true;
  for (std::size_t x = 0; x < n && ok; ++x) {
    for (std::size_t y = x; y < n && ok; ++y) {
      auto xy = s.product(static_cast<ElementId>(x), static_cast<ElementId>(y));
      auto img = out.system.try_product(out.image[x], out.image[y]);
      ok = img && *img == out.image[xy];
    }
  }
  out.homomorphism_verified = ok;
  return out;
}

Semilattice to_table(const Semilattice& s, const Limits& limits) {
  if (s.kind() == Kind::Table) return s;
  const std::size_t n = s.size();
  if (n > limits.max_table) {
    throw Error(ErrorCode::SizeLimit, "cannot materialize a table with n = " + std::to_string(n));
  }
  std::vector<ElementId> product(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      product[x * n + y] = s.product(static_cast<ElementId>(x), static_cast<ElementId>(y));
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = s.label(static_cast<ElementId>(x));
  return Semilattice::table(n, std::move(product), std::move(labels), limits);
}

Semilattice to_set_system(const Semilattice& s) {
  if (s.kind() == Kind::SetSystem) return s;
  return sch_embed(s).system;
}

std::vector<std::vector<std::uint32_t>> union_closure(
    std::size_t ground_size, const std::vector<std::vector<std::uint32_t>>& sets,
    std::size_t max_sets) {
  const std::size_t wps = words_for(ground_size);
  using Key = std::vector<std::uint64_t>;
  std::set<Key> seen;
  std::vector<Key> all;
  auto to_key = [&](const std::vector<std::uint32_t>& set) {
    Key key(wps, 0);
    for (auto p : set) {
      if (p >= ground_size) throw Error(ErrorCode::InvalidInstance, "universe index out of range");
      key[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    return key;
  };
  for (const auto& set : sets) {
    Key key = to_key(set);
    if (seen.insert(key).second) all.push_back(std::move(key));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Key u(wps);
      for (std::size_t w = 0; w < wps; ++w) u[w] = all[i][w] | all[j][w];
      if (seen.insert(u).second) {
        if (all.size() >= max_sets) {
          throw Error(ErrorCode::SizeLimit, "union closure exceeds " + std::to_string(max_sets) +
                                                " sets");
        }
        all.push_back(std::move(u));
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(all.size());
  for (const auto& key : all) {
    std::vector<std::uint32_t> set;
    for (std::size_t w = 0; w < wps; ++w) {
      std::uint64_t bits = key[w];
      while (bits != 0) {
        set.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace slat
