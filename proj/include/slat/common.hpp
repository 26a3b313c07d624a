#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

namespace slat {

/// Dense index of a semilattice element, in [0, n).
using ElementId = std::uint32_t;

inline constexpr ElementId kNoElement = std::numeric_limits<ElementId>::max();

/// Exact rational used for every log-weight value and threshold.
using Rational = boost::rational<std::int64_t>;

/// A subset of the elements of a semilattice (bit i <=> element i).
using SubsetMask = boost::dynamic_bitset<std::uint64_t>;

enum class ErrorCode {
  Parse,
  Usage,
  KindMismatch,
  PrototypeMissingTop,
  NotClosed,
  SizeLimit,
  EmptySet,
  InsufficientBreadth,
  BudgetExceeded,
  InvalidInstance,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

SubsetMask mask_from_ids(std::size_t n, std::span<const ElementId> ids);
std::vector<ElementId> ids_from_mask(const SubsetMask& mask);

template <typename Fn>
void for_each_bit(const SubsetMask& mask, Fn&& fn) {
  for (auto i = mask.find_first(); i != SubsetMask::npos; i = mask.find_next(i)) {
    fn(static_cast<ElementId>(i));
  }
}

/// Parses "3", "-2", "1/2" or a plain decimal such as "0.25".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace slat
