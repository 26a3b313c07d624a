#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "slat/adversarial.hpp"
#include "slat/breadth.hpp"
#include "slat/io.hpp"
#include "slat/metrics.hpp"
#include "slat/propagation.hpp"

namespace slat::cli {

/// {"num", "den", "approx"}.
OrderedJson exact(const Rational& r);

OrderedJson to_json(const LogMagnitude& m);
OrderedJson to_json(const PropagationValue& v);

OrderedJson element(const Semilattice& s, ElementId x);
OrderedJson elements(const Semilattice& s, std::span<const ElementId> ids);
OrderedJson elements(const Semilattice& s, const SubsetMask& mask);

OrderedJson to_json(const Semilattice& s, const PropagationProfile& p);
OrderedJson to_json(const Semilattice& s, const EquivalenceReport& r);
OrderedJson to_json(const Semilattice& s, const BreadthReport& r);
OrderedJson to_json(const Semilattice& s, const ValidationReport& r);
OrderedJson to_json(const Semilattice& s, const WeightReport& r);
OrderedJson to_json(const Semilattice& s, const AdversarialChain& chain);
OrderedJson to_json(const Semilattice& s, const BarrierResult& b);

/// Summary of a log-weight: range, distinct thresholds and level-set sizes.
OrderedJson weight_summary(const LogWeight& lambda);

/// Indented "key: value" rendering of a report for --format text.
void render_text(const OrderedJson& doc, std::ostream& out);

}  // namespace slat::cli
