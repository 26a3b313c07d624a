#include "report.hpp"

#include <algorithm>

namespace slat::cli {

OrderedJson exact(const Rational& r) {
  OrderedJson out = rational_to_json(r);
  out["approx"] = to_double(r);
  return out;
}

OrderedJson to_json(const LogMagnitude& m) {
  if (m.is_zero()) return {{"kind", "zero"}};
  OrderedJson out;
  out["kind"] = "exp";
  out["m"] = rational_to_json(m.m());
  out["approx"] = m.approx();
  return out;
}

OrderedJson to_json(const PropagationValue& v) {
  if (v.infinite) return {{"kind", "infinite"}};
  OrderedJson out;
  out["kind"] = "finite";
  out["c"] = exact(v.c);
  return out;
}

OrderedJson element(const Semilattice& s, ElementId x) {
  OrderedJson out;
  out["id"] = x;
  out["label"] = s.label(x);
  return out;
}

OrderedJson elements(const Semilattice& s, std::span<const ElementId> ids) {
  OrderedJson out = OrderedJson::array();
  for (ElementId x : ids) out.push_back(element(s, x));
  return out;
}

OrderedJson elements(const Semilattice& s, const SubsetMask& mask) {
  auto ids = ids_from_mask(mask);
  return elements(s, std::span<const ElementId>(ids));
}

OrderedJson to_json(const Semilattice& s, const PropagationProfile& p) {
  OrderedJson out;
  out["level"] = exact(p.level);
  out["value"] = to_json(p.value);
  out["witness_e"] = elements(s, std::span<const ElementId>(p.witness_e));
  out["witness_z"] = p.witness_z ? element(s, *p.witness_z) : OrderedJson();
  out["exhaustive"] = p.exhaustive;
  out["closures"] = p.closures;
  out["steps"] = p.steps;
  return out;
}

OrderedJson to_json(const Semilattice& s, const EquivalenceReport& r) {
  OrderedJson out;
  out["level"] = exact(r.level);
  out["c"] = exact(r.c);
  out["closed_sets"] = r.closed_sets;
  out["stable_sets_checked"] = r.stable_sets_checked;
  out["violations"] = r.violations;
  out["exhaustive"] = r.exhaustive;
  if (r.violations > 0) {
    out["witness_g"] = elements(s, std::span<const ElementId>(r.witness_g));
    out["witness_z"] = r.witness_z ? element(s, *r.witness_z) : OrderedJson();
  }
  return out;
}

OrderedJson to_json(const Semilattice& s, const BreadthReport& r) {
  OrderedJson out;
  out["breadth"] = r.breadth;
  out["witness"] = elements(s, std::span<const ElementId>(r.witness));
  out["exhaustive"] = r.exhaustive;
  out["upper_bound"] = r.upper_bound;
  out["nodes"] = r.nodes;
  if (!r.witness.empty()) {
    auto ca = chain_and_antichain(s, std::span<const ElementId>(r.witness));
    out["chain"] = elements(s, std::span<const ElementId>(ca.chain));
    out["antichain"] = elements(s, std::span<const ElementId>(ca.antichain));
  }
  return out;
}

OrderedJson to_json(const Semilattice& s, const ValidationReport& r) {
  OrderedJson out;
  out["ok"] = r.ok();
  out["violations"] = r.total;
  OrderedJson listed = OrderedJson::array();
  for (const auto& v : r.violations) {
    listed.push_back({{"kind", to_string(v.kind)},
                      {"witness", elements(s, std::span<const ElementId>(v.witness))}});
  }
  out["listed"] = std::move(listed);
  return out;
}

OrderedJson to_json(const Semilattice& s, const WeightReport& r) {
  OrderedJson out;
  out["ok"] = r.ok();
  out["exhaustive"] = r.exhaustive;
  out["pairs_checked"] = r.pairs_checked;
  out["violations"] = r.total;
  OrderedJson listed = OrderedJson::array();
  for (const auto& v : r.violations) {
    OrderedJson item;
    item["kind"] = to_string(v.kind);
    if (v.kind != WeightViolationKind::WrongLength) {
      item["witness"] = elements(s, std::span<const ElementId>(v.witness));
    }
    listed.push_back(std::move(item));
  }
  out["listed"] = std::move(listed);
  return out;
}

OrderedJson to_json(const Semilattice& s, const AdversarialChain& chain) {
  auto points = [&](const std::vector<std::uint32_t>& ps) {
    OrderedJson out = OrderedJson::array();
    for (auto p : ps) out.push_back(s.ground_label(p));
    return out;
  };
  OrderedJson out;
  out["requested"] = chain.requested;
  out["depth"] = chain.depth;
  out["truncated"] = chain.truncated;
  if (!chain.notice.empty()) out["notice"] = chain.notice;
  OrderedJson levels = OrderedJson::array();
  for (std::size_t n = 1; n <= chain.depth; ++n) {
    OrderedJson level;
    level["n"] = n;
    level["markers"] = points(chain.markers[n - 1]);
    level["family"] = elements(s, std::span<const ElementId>(chain.families[n - 1]));
    level["cumulative"] = points(chain.cumulative[n]);
    levels.push_back(std::move(level));
  }
  out["levels"] = std::move(levels);
  return out;
}

OrderedJson to_json(const Semilattice& s, const BarrierResult& b) {
  OrderedJson out;
  out["n"] = b.n;
  out["z"] = element(s, b.z);
  out["eta_z"] = exact(b.eta_z);
  out["family_in_w1"] = b.family_in_w1;
  out["evaluated"] = b.evaluated;
  out["value"] = to_json(b.value);
  out["half_n"] = exact(Rational(static_cast<std::int64_t>(b.n), 2));
  out["passed"] = b.passed;
  return out;
}

OrderedJson weight_summary(const LogWeight& lambda) {
  OrderedJson out;
  if (lambda.empty()) return out;
  out["min"] = exact(*std::min_element(lambda.begin(), lambda.end()));
  out["max"] = exact(max_value(lambda));
  auto levels = thresholds(lambda);
  out["distinct_values"] = levels.size();
  OrderedJson sets = OrderedJson::array();
  for (const auto& l : levels) {
    sets.push_back({{"level", exact(l)}, {"size", level_set(lambda, l).count()}});
  }
  out["level_sets"] = std::move(sets);
  return out;
}

namespace {

bool is_scalar(const OrderedJson& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const OrderedJson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// Short forms for the objects that appear everywhere in reports.
bool compact(const OrderedJson& v, std::string& text) {
  if (!v.is_object()) return false;
  if (v.contains("num") && v.contains("den") && v.size() <= 3) {
    auto num = v["num"].get<std::int64_t>();
    auto den = v["den"].get<std::int64_t>();
    text = den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    return true;
  }
  if (v.contains("id") && v.contains("label") && v.size() == 2) {
    text = std::to_string(v["id"].get<ElementId>()) + ":" + v["label"].get<std::string>();
    return true;
  }
  if (v.contains("kind") && v.size() == 1) {
    text = v["kind"] == "zero" ? "0" : v["kind"].get<std::string>();
    return true;
  }
  if (v.contains("kind") && v.contains("c")) {
    return compact(v["c"], text);
  }
  if (v.contains("kind") && v.contains("m") && v["kind"] == "exp") {
    std::string m;
    compact(v["m"], m);
    text = "exp(-" + m + ")";
    return true;
  }
  return false;
}

void render(const OrderedJson& v, const std::string& indent, std::ostream& out);

void render_value(const std::string& key, const OrderedJson& v, const std::string& indent,
                  std::ostream& out) {
  std::string text;
  if (is_scalar(v)) {
    out << indent << key << ": " << scalar_text(v) << "\n";
  } else if (compact(v, text)) {
    out << indent << key << ": " << text << "\n";
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const OrderedJson& item) {
               std::string t;
               return is_scalar(item) || compact(item, t);
             })) {
    out << indent << key << ": [";
    bool first = true;
    for (const auto& item : v) {
      std::string t;
      if (!compact(item, t)) t = scalar_text(item);
      out << (first ? "" : ", ") << t;
      first = false;
    }
    out << "]\n";
  } else {
    out << indent << key << ":\n";
    render(v, indent + "  ", out);
  }
}

void render(const OrderedJson& v, const std::string& indent, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) render_value(key, item, indent, out);
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const auto& item : v) render_value("[" + std::to_string(i++) + "]", item, indent, out);
  } else {
    out << indent << scalar_text(v) << "\n";
  }
}

}  // namespace

void render_text(const OrderedJson& doc, std::ostream& out) { render(doc, "", out); }

}  // namespace slat::cli
