#include "slat/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slat/instances.hpp"

namespace slat {

namespace {

const Json& field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> string_list(const Json& value, const char* what) {
  if (!value.is_array()) throw Error(ErrorCode::Parse, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw Error(ErrorCode::Parse, std::string(what) + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string format_set(const std::vector<std::uint32_t>& set, const std::vector<std::string>& ground) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += set[i] < ground.size() ? ground[set[i]] : std::to_string(set[i]);
  }
  return out + "}";
}

LoadedInstance table_from_json(const Json& doc, const Limits& limits) {
  auto n = field(doc, "n").get<std::size_t>();
  const auto& rows = field(doc, "product");
  if (!rows.is_array() || rows.size() != n) throw Error(ErrorCode::Parse, "product must have n rows");
  std::vector<ElementId> product;
  product.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw Error(ErrorCode::Parse, "product rows must have n entries");
    for (const auto& v : row) product.push_back(v.get<ElementId>());
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = string_list(doc["labels"], "labels");
  LoadedInstance out{Semilattice::table(n, std::move(product), std::move(labels), limits), {}, {}, "zero", false};
  out.input_to_id.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.input_to_id[i] = static_cast<ElementId>(i);
  return out;
}

LoadedInstance sets_from_json(const Json& doc, bool close, const Limits& limits) {
  std::vector<std::string> ground;
  std::size_t ground_size = 0;
  if (doc.contains("ground")) {
    ground = string_list(doc["ground"], "ground");
    ground_size = ground.size();
  } else {
    ground_size = field(doc, "ground_size").get<std::size_t>();
  }
  const auto& elements = field(doc, "elements");
  if (!elements.is_array()) throw Error(ErrorCode::Parse, "elements must be an array");
  std::vector<std::vector<std::uint32_t>> sets;
  for (const auto& e : elements) {
    if (!e.is_array()) throw Error(ErrorCode::Parse, "each element must be an array of universe indices");
    std::vector<std::uint32_t> set;
    for (const auto& p : e) set.push_back(p.get<std::uint32_t>());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    sets.push_back(std::move(set));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = string_list(doc["labels"], "labels");

  std::vector<ElementId> mapping;
  auto s = Semilattice::set_system(ground_size, sets, ground, labels, &mapping, limits);
  auto report = validate(s, 1);
  if (report.ok()) return {std::move(s), std::move(mapping), {}, "zero", false};
  if (!close) {
    const auto& w = report.violations.front().witness;
    throw Error(ErrorCode::NotClosed, "set system is not union-closed: " + s.label(w[0]) + " ∪ " +
                                          s.label(w[1]) + " is missing (use --close to add unions)");
  }
  auto closed = union_closure(ground_size, sets, limits.max_set_system);
  if (!labels.empty()) {
    for (std::size_t i = sets.size(); i < closed.size(); ++i) labels.push_back(format_set(closed[i], ground));
  }
  auto closed_system = Semilattice::set_system(ground_size, closed, ground, labels, &mapping, limits);
  mapping.resize(sets.size());
  return {std::move(closed_system), std::move(mapping), {}, "zero", true};
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::Parse, source_name + ":" + std::to_string(line) + ":" +
                                      std::to_string(column) + ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

LoadedInstance instance_from_json(const Json& doc, bool close, const Limits& limits) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "instance must be a JSON object");
    const auto kind = field(doc, "kind").get<std::string>();
    LoadedInstance out = kind == "table"        ? table_from_json(doc, limits)
                         : kind == "set_system" ? sets_from_json(doc, close, limits)
                                                : throw Error(ErrorCode::Parse, "unknown instance kind '" + kind + "'");
    if (doc.contains("logweight")) out.logweight = doc["logweight"];
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid instance: ") + e.what());
  }
}

LoadedInstance load_instance(const std::string& source, bool close, const Limits& limits) {
  if (source.rfind("gen:", 0) == 0) {
    auto generated = generate_instance(source.substr(4), limits);
    LoadedInstance out{std::move(generated.semilattice), {}, {}, generated.default_weight, false};
    out.input_to_id.resize(out.semilattice.size());
    for (std::size_t i = 0; i < out.input_to_id.size(); ++i) out.input_to_id[i] = static_cast<ElementId>(i);
    return out;
  }
  return instance_from_json(read_json_file(source), close, limits);
}

OrderedJson rational_to_json(const Rational& r) {
  OrderedJson out;
  out["num"] = r.numerator();
  out["den"] = r.denominator();
  return out;
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_object()) {
    auto den = field(value, "den").get<std::int64_t>();
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
    return Rational(field(value, "num").get<std::int64_t>(), den);
  }
  throw Error(ErrorCode::Parse, "rationals must be integers, \"p/q\" strings or {num, den} objects");
}

OrderedJson instance_to_json(const Semilattice& s, const LogWeight* lambda) {
  OrderedJson out;
  if (s.kind() == Kind::Table) {
    out["kind"] = "table";
    out["n"] = s.size();
    OrderedJson rows = OrderedJson::array();
    auto data = s.table_data();
    for (std::size_t x = 0; x < s.size(); ++x) {
      rows.push_back(std::vector<ElementId>(data.begin() + static_cast<std::ptrdiff_t>(x * s.size()),
                                            data.begin() + static_cast<std::ptrdiff_t>((x + 1) * s.size())));
    }
    out["product"] = std::move(rows);
  } else {
    out["kind"] = "set_system";
    if (s.ground_labels().empty()) {
      out["ground_size"] = s.ground_size();
    } else {
      out["ground"] = s.ground_labels();
    }
    OrderedJson elements = OrderedJson::array();
    for (std::size_t x = 0; x < s.size(); ++x) elements.push_back(s.member_set(static_cast<ElementId>(x)));
    out["elements"] = std::move(elements);
  }
  if (!s.labels().empty()) out["labels"] = s.labels();
  if (lambda) {
    OrderedJson values = OrderedJson::array();
    for (const auto& v : *lambda) values.push_back(rational_to_json(v));
    out["logweight"] = {{"kind", "explicit"}, {"values", std::move(values)}};
  }
  return out;
}

LogWeight logweight_from_json(const Json& descriptor, const LoadedInstance& instance) {
  try {
    const auto& s = instance.semilattice;
    const auto kind = field(descriptor, "kind").get<std::string>();
    if (kind == "explicit") {
      const auto& values = field(descriptor, "values");
      if (!values.is_array() || values.size() != instance.input_to_id.size()) {
        throw Error(ErrorCode::Parse, "explicit log-weight needs one value per source element");
      }
      if (instance.input_to_id.size() != s.size()) {
        throw Error(ErrorCode::Usage, "explicit log-weights cannot follow elements added by --close");
      }
      LogWeight lambda(s.size());
      for (std::size_t i = 0; i < values.size(); ++i) lambda[instance.input_to_id[i]] = rational_from_json(values[i]);
      return lambda;
    }
    if (kind == "scaled") return builtin_logweight(s, kind, rational_from_json(field(descriptor, "q")));
    return builtin_logweight(s, kind);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid log-weight: ") + e.what());
  }
}

LogWeight resolve_weight(const std::string& argument, const LoadedInstance& instance) {
  const auto& s = instance.semilattice;
  if (argument.empty()) {
    if (instance.logweight) return logweight_from_json(*instance.logweight, instance);
    return builtin_logweight(s, instance.default_weight);
  }
  if (argument == "zero" || argument == "cardinality" || argument == "prototype") {
    return builtin_logweight(s, argument);
  }
  if (argument.rfind("scaled:", 0) == 0) return builtin_logweight(s, "scaled", parse_rational(argument.substr(7)));
  Json doc = read_json_file(argument);
  if (doc.is_object() && doc.contains("logweight")) return logweight_from_json(doc["logweight"], instance);
  if (doc.is_object() && doc.contains("kind")) return logweight_from_json(doc, instance);
  throw Error(ErrorCode::Parse, "'" + argument + "' holds no log-weight");
}

ComplexFunction psi_from_json(const Json& doc, const LoadedInstance& instance) {
  try {
    const auto& values = doc.is_array() ? doc : field(doc, "psi");
    if (!values.is_array() || values.size() != instance.input_to_id.size()) {
      throw Error(ErrorCode::Parse, "psi needs one value per source element");
    }
    ComplexFunction psi(instance.semilattice.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto& v = values[i];
      Complex c;
      if (v.is_number()) {
        c = Complex(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2) {
        c = Complex(v[0].get<double>(), v[1].get<double>());
      } else if (v.is_object()) {
        c = Complex(field(v, "re").get<double>(), v.value("im", 0.0));
      } else {
        throw Error(ErrorCode::Parse, "psi entries must be numbers, [re, im] or {re, im}");
      }
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error(ErrorCode::Parse, "psi entries must be finite");
      psi[instance.input_to_id[i]] = c;
    }
    return psi;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid psi: ") + e.what());
  }
}

}  // namespace slat
