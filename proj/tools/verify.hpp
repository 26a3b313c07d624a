#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slat/io.hpp"
#include "slat/propagation.hpp"

namespace slat::cli {

struct VerifyOptions {
  std::uint64_t seed = 0;
  SearchOptions search;
  std::size_t breadth_cap = 10'000'000;
  unsigned jobs = 1;
};

/// Runs every invariant suite that applies to the instance. The report lists
/// check and failure counts per suite and never contains timings, so equal
/// inputs give byte-identical output.
OrderedJson verify_instance(const std::string& name, const LoadedInstance& instance,
                            const LogWeight& lambda, const VerifyOptions& options);

/// (source, weight) pairs used when `slat verify` gets no instance.
std::vector<std::pair<std::string, std::string>> standard_corpus();

}  // namespace slat::cli
