#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slat/metrics.hpp"
#include "slat/semilattice.hpp"
#include "slat/weights.hpp"

namespace slat {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct LoadedInstance {
  Semilattice semilattice;
  /// Element id assigned to each element of the source, in source order.
  std::vector<ElementId> input_to_id;
  /// Weight descriptor embedded in the source, if any.
  std::optional<Json> logweight;
  /// Built-in weight used when neither the source nor the caller names one.
  std::string default_weight = "zero";
  bool closed_by_loader = false;
};

/// Parses JSON text; syntax errors become Error(Parse) with line and column.
Json parse_json(const std::string& text, const std::string& source_name);
Json read_json_file(const std::string& path);

/// Builds an instance from its JSON form. Set systems that are not
/// union-closed are rejected unless `close` is set.
LoadedInstance instance_from_json(const Json& doc, bool close, const Limits& limits = {});

/// Loads "gen:<family>:<params>" descriptors or JSON files.
LoadedInstance load_instance(const std::string& source, bool close, const Limits& limits = {});

/// JSON form of an instance in canonical element order, optionally with an
/// explicit log-weight attached.
OrderedJson instance_to_json(const Semilattice& s, const LogWeight* lambda = nullptr);

OrderedJson rational_to_json(const Rational& r);
Rational rational_from_json(const Json& value);

/// Reads {"kind": ...} weight descriptors; explicit values follow source order.
LogWeight logweight_from_json(const Json& descriptor, const LoadedInstance& instance);

/// Resolves a --weight argument: "", a built-in name, "scaled:<q>", or a path
/// to a JSON file holding {"logweight": ...}.
LogWeight resolve_weight(const std::string& argument, const LoadedInstance& instance);

/// Reads ψ from {"psi": [...]}; entries are numbers, [re, im] pairs or
/// {"re": .., "im": ..} objects in source order.
ComplexFunction psi_from_json(const Json& doc, const LoadedInstance& instance);

}  // namespace slat
