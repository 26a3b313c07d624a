#include "slat/instances.hpp"

#include <charconv>
#include <numeric>

namespace slat {

namespace {

void check_count(std::size_t n, std::size_t cap, const std::string& what) {
  if (n > cap) {
    throw Error(ErrorCode::SizeLimit, what + " would have " + std::to_string(n) +
                                          " elements, above the cap of " + std::to_string(cap));
  }
}

// All subsets of {0..k-1} with min_size <= |x| <= max_size, emitted in
// canonical order (size, then lexicographic on sorted indices).
Semilattice subsets_by_size(std::size_t k, std::size_t min_size, std::size_t max_size,
                            const Limits& limits) {
  if (k > 63) throw Error(ErrorCode::SizeLimit, "universe too large for a subset family");
  max_size = std::min(max_size, k);
  std::size_t count = 0;
  for (std::size_t p = min_size; p <= max_size; ++p) {
    std::size_t binom = 1;
    for (std::size_t i = 0; i < p; ++i) binom = binom * (k - i) / (i + 1);
    count += binom;
  }
  check_count(count, limits.max_set_system, "subset family");
  std::vector<std::uint64_t> words;
  words.reserve(count);
  std::vector<std::size_t> idx;
  for (std::size_t p = min_size; p <= max_size; ++p) {
    idx.resize(p);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t mask = 0;
      for (auto i : idx) mask |= std::uint64_t{1} << i;
      words.push_back(mask);
      // Advance to the next combination in lexicographic order.
      std::size_t pos = p;
      while (pos > 0 && idx[pos - 1] == k - p + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return Semilattice::set_system_from_canonical_words(k, std::move(words), {}, limits);
}

std::vector<std::size_t> parse_params(const std::string& text, const std::string& descriptor) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(':', start);
    if (end == std::string::npos) end = text.size();
    std::size_t value = 0;
    auto first = text.data() + start;
    auto last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw Error(ErrorCode::Usage, "bad parameter in instance descriptor '" + descriptor + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

}  // namespace

Semilattice chain(std::size_t m, const Limits& limits) {
  if (m == 0) throw Error(ErrorCode::Usage, "chain needs m >= 1");
  check_count(m, limits.max_table, "chain");
  std::vector<ElementId> product(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) product[i * m + j] = static_cast<ElementId>(std::min(i, j));
  }
  return Semilattice::table(m, std::move(product), {}, limits);
}

Semilattice powerset(std::size_t k, const Limits& limits) { return subsets_by_size(k, 0, k, limits); }

Semilattice free_semilattice(std::size_t k, const Limits& limits) {
  if (k == 0) throw Error(ErrorCode::Usage, "P_*(k) needs k >= 1");
  return subsets_by_size(k, 1, k, limits);
}

Semilattice fin_truncation(std::size_t k, std::size_t c, bool exact, const Limits& limits) {
  if (exact) {
    if (c != 0 && c < k && k >= 2) {
      throw Error(ErrorCode::NotClosed, "subsets of size <= " + std::to_string(c) + " of a " +
                                            std::to_string(k) +
                                            "-set are not closed under union");
    }
    return subsets_by_size(k, 0, c, limits);
  }
  // Two distinct sets of size <= c already generate every subset under union.
  return subsets_by_size(k, 0, c == 0 ? 0 : k, limits);
}

Semilattice kary_tree(std::size_t k, std::size_t depth, const Limits& limits) {
  if (k == 0) throw Error(ErrorCode::Usage, "tree arity must be >= 1");
  std::size_t n = 1;
  std::size_t level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    level *= k;
    n += level;
    check_count(n, limits.max_table, "tree");
  }
  std::vector<std::size_t> parent(n, 0);
  std::vector<std::size_t> node_depth(n, 0);
  for (std::size_t v = 1; v < n; ++v) {
    parent[v] = (v - 1) / k;
    node_depth[v] = node_depth[parent[v]] + 1;
  }
  std::vector<ElementId> product(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      std::size_t a = x;
      std::size_t b = y;
      while (node_depth[a] > node_depth[b]) a = parent[a];
      while (node_depth[b] > node_depth[a]) b = parent[b];
      while (a != b) {
        a = parent[a];
        b = parent[b];
      }
      product[x * n + y] = product[y * n + x] = static_cast<ElementId>(a);
    }
  }
  return Semilattice::table(n, std::move(product), {}, limits);
}

Semilattice prototype(std::size_t n, const Limits& limits) { return free_semilattice(n, limits); }

GeneratedInstance generate_instance(const std::string& descriptor, const Limits& limits) {
  auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::Usage, "instance descriptor needs parameters: '" + descriptor + "'");
  }
  std::string family = descriptor.substr(0, colon);
  auto params = parse_params(descriptor.substr(colon + 1), descriptor);
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      throw Error(ErrorCode::Usage, "family '" + family + "' takes " + std::to_string(count) +
                                        " parameter(s)");
    }
  };
  if (family == "chain") {
    need(1);
    return {chain(params[0], limits), family, "zero"};
  }
  if (family == "powerset") {
    need(1);
    return {powerset(params[0], limits), family, "zero"};
  }
  if (family == "free") {
    need(1);
    return {free_semilattice(params[0], limits), family, "zero"};
  }
  if (family == "fin" || family == "fin_exact") {
    need(2);
    return {fin_truncation(params[0], params[1], family == "fin_exact", limits), family, "cardinality"};
  }
  if (family == "tree") {
    need(2);
    return {kary_tree(params[0], params[1], limits), family, "zero"};
  }
  if (family == "prototype") {
    need(1);
    return {prototype(params[0], limits), family, "prototype"};
  }
  throw Error(ErrorCode::Usage, "unknown instance family '" + family + "'");
}

}  // namespace slat
