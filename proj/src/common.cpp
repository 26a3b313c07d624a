#include "slat/common.hpp"

#include <charconv>

namespace slat {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::PrototypeMissingTop: return "PrototypeMissingTop";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::InsufficientBreadth: return "InsufficientBreadth";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
  }
  return "Unknown";
}

SubsetMask mask_from_ids(std::size_t n, std::span<const ElementId> ids) {
  SubsetMask mask(n);
  for (ElementId id : ids) {
    if (id >= n) {
      throw Error(ErrorCode::Usage, "element id " + std::to_string(id) + " out of range (n = " +
                                        std::to_string(n) + ")");
    }
    mask.set(id);
  }
  return mask;
}

std::vector<ElementId> ids_from_mask(const SubsetMask& mask) {
  std::vector<ElementId> ids;
  ids.reserve(mask.count());
  for_each_bit(mask, [&](ElementId id) { ids.push_back(id); });
  return ids;
}

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::Usage, "not a rational number: '" + whole + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string_view view(text);
  if (auto slash = view.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(view.substr(0, slash), text);
    std::int64_t den = parse_int(view.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::Usage, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = view.find('.'); dot != std::string_view::npos) {
    std::string_view frac = view.substr(dot + 1);
    if (frac.size() > 15) throw Error(ErrorCode::Usage, "too many decimals in '" + text + "'");
    std::string_view whole = view.substr(0, dot);
    bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t int_part = (whole.empty() || whole == "-") ? 0 : parse_int(whole, text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t frac_part = frac.empty() ? 0 : parse_int(frac, text);
    std::int64_t magnitude = (int_part < 0 ? -int_part : int_part) * den + frac_part;
    return Rational(negative ? -magnitude : magnitude, den);
  }
  return Rational(parse_int(view, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

}  // namespace slat
