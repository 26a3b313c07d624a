#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "report.hpp"
#include "slat/adversarial.hpp"
#include "slat/instances.hpp"
#include "slat/io.hpp"
#include "slat/metrics.hpp"
#include "slat/parallel.hpp"
#include "slat/reference.hpp"
#include "verify.hpp"

namespace slat::cli {

namespace {

struct Outcome {
  OrderedJson body;
  int status = 0;
};

struct Context {
  std::optional<LoadedInstance> loaded;
  LogWeight lambda;
  const LoadedInstance& instance() const { return *loaded; }
  const Semilattice& s() const { return loaded->semilattice; }
};

std::string weight_name(const RunConfig& config, const LoadedInstance& instance) {
  if (!config.weight.empty()) return config.weight;
  return instance.logweight ? "embedded" : instance.default_weight;
}

// Loads the instance and weight. A rejected instance or weight is reported
// in the body with status 1.
std::optional<Outcome> load(const RunConfig& config, Context& ctx) {
  if (config.instance.empty()) throw Error(ErrorCode::Usage, config.subcommand + " needs an instance");
  ctx.loaded.emplace(load_instance(config.instance, config.close));
  const auto& s = ctx.s();
  if (config.instance.rfind("gen:", 0) != 0 && s.kind() == Kind::Table) {
    auto report = validate(s);
    if (!report.ok()) {
      OrderedJson body;
      body["error"] = "InvalidInstance";
      body["validation"] = to_json(s, report);
      return Outcome{std::move(body), 1};
    }
  }
  ctx.lambda = resolve_weight(config.weight, ctx.instance());
  auto report = validate_logweight(s, ctx.lambda);
  if (!report.ok()) {
    OrderedJson body;
    body["error"] = "InvalidLogWeight";
    body["weight"] = weight_name(config, ctx.instance());
    body["validation"] = to_json(s, report);
    return Outcome{std::move(body), 1};
  }
  return std::nullopt;
}

std::vector<ElementId> parse_ids(const std::string& text, std::size_t n, const char* what) {
  std::vector<ElementId> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(pos, end - pos);
    token.erase(std::remove_if(token.begin(), token.end(), [](char c) { return c == ' '; }), token.end());
    if (!token.empty()) {
      ElementId id = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::Usage, std::string(what) + ": '" + token + "' is not an element id");
      }
      if (id >= n) {
        throw Error(ErrorCode::Usage, std::string(what) + ": id " + token + " is out of range (n = " + std::to_string(n) + ")");
      }
      out.push_back(id);
    }
    pos = end + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SubsetMask parse_mask(const std::string& text, std::size_t n, const char* what) {
  auto ids = parse_ids(text, n, what);
  return mask_from_ids(n, std::span<const ElementId>(ids));
}

ElementId parse_id(const std::string& text, std::size_t n, const char* what) {
  auto ids = parse_ids(text, n, what);
  if (ids.size() != 1) throw Error(ErrorCode::Usage, std::string(what) + " needs exactly one element id");
  return ids.front();
}

SearchOptions search_options(const RunConfig& config) {
  SearchOptions options;
  options.budget = config.budget;
  options.strict = config.strict;
  options.seed = config.seed;
  return options;
}

BreadthOptions breadth_options(const RunConfig& config) { return {config.cap, resolve_jobs(config.jobs)}; }

OrderedJson header(const RunConfig& config, const Context& ctx) {
  OrderedJson out;
  out["command"] = config.subcommand;
  out["instance"] = config.instance;
  out["n"] = ctx.s().size();
  out["weight"] = weight_name(config, ctx.instance());
  return out;
}

Outcome analyze(const RunConfig& config, Context& ctx) {
  const auto& s = ctx.s();
  OrderedJson out = header(config, ctx);
  out["kind"] = s.kind() == Kind::Table ? "table" : "set_system";
  if (s.kind() == Kind::SetSystem) out["ground_size"] = s.ground_size();
  out["closed_by_loader"] = ctx.instance().closed_by_loader;
  auto identity = s.identity();
  out["identity"] = identity ? element(s, *identity) : OrderedJson();
  out["filters"] = enumerate_filters(s).size();
  out["logweight"] = weight_summary(ctx.lambda);
  out["breadth"] = to_json(s, breadth(s, breadth_options(config)));
  if (s.kind() == Kind::Table && s.size() <= 1024) {
    auto embedding = sch_embed(s);
    out["set_embedding"] = {{"convention", embedding.convention},
                            {"ground_size", embedding.system.ground_size()},
                            {"homomorphism_verified", embedding.homomorphism_verified}};
  }
  if (s.size() <= 64) {
    OrderedJson list = OrderedJson::array();
    for (std::size_t x = 0; x < s.size(); ++x) {
      OrderedJson item = element(s, static_cast<ElementId>(x));
      item["lambda"] = exact(ctx.lambda[x]);
      list.push_back(std::move(item));
    }
    out["elements"] = std::move(list);
  }
  return {std::move(out), 0};
}

ComplexFunction read_psi(const RunConfig& config, const Context& ctx) {
  return psi_from_json(read_json_file(config.psi), ctx.instance());
}

void require_one_input(const RunConfig& config) {
  if (config.set.empty() == config.psi.empty()) {
    throw Error(ErrorCode::Usage, config.subcommand + " needs exactly one of --set or --psi");
  }
}

Outcome defect(const RunConfig& config, Context& ctx) {
  require_one_input(config);
  const auto& s = ctx.s();
  OrderedJson out = header(config, ctx);
  if (!config.set.empty()) {
    auto x = parse_mask(config.set, s.size(), "--set");
    out["set"] = elements(s, x);
    out["defect"] = to_json(defect_set(s, ctx.lambda, x));
  } else {
    auto psi = read_psi(config, ctx);
    auto bound = omega_bound(s, ctx.lambda, psi);
    out["defect"] = bound.bound - 1.0;
    out["omega_bound"] = {{"sup_ratio", bound.sup_ratio},
                          {"bound", bound.bound},
                          {"holds", bound.sup_ratio <= bound.bound + 1e-12}};
  }
  return {std::move(out), 0};
}

Outcome dist(const RunConfig& config, Context& ctx) {
  require_one_input(config);
  const auto& s = ctx.s();
  OrderedJson out = header(config, ctx);
  if (!config.set.empty()) {
    auto x = parse_mask(config.set, s.size(), "--set");
    auto result = dist_set(s, ctx.lambda, x);
    out["set"] = elements(s, x);
    out["dist"] = to_json(result.value);
    out["generator"] = result.generator ? element(s, *result.generator) : OrderedJson();
    out["witness"] = elements(s, result.witness);
  } else {
    auto psi = read_psi(config, ctx);
    auto result = dist_complex(s, ctx.lambda, psi);
    out["dist"] = result.value;
    out["generator"] = result.generator ? element(s, *result.generator) : OrderedJson();
    out["witness"] = elements(s, result.witness);
    out["discretized"] = elements(s, discretize(psi));
  }
  return {std::move(out), 0};
}

Outcome fbp_command(const RunConfig& config, Context& ctx) {
  if (config.c.empty()) throw Error(ErrorCode::Usage, "fbp needs --C");
  const auto& s = ctx.s();
  Rational c = parse_rational(config.c);
  if (c < Rational(0)) throw Error(ErrorCode::Usage, "--C must be >= 0");
  auto x = parse_mask(config.set, s.size(), "--set");
  auto image = fbp(s, ctx.lambda, c, x);
  auto closure = fbp_closure(s, ctx.lambda, c, x);
  OrderedJson out = header(config, ctx);
  out["C"] = exact(c);
  out["set"] = elements(s, x);
  out["image"] = elements(s, image);
  out["stable"] = image.is_subset_of(x);
  out["closure"] = {{"set", elements(s, closure.set)}, {"iterations", closure.iterations}};
  return {std::move(out), 0};
}

Outcome vmap(const RunConfig& config, Context& ctx) {
  const auto& s = ctx.s();
  auto e = parse_ids(config.e, s.size(), "--E");
  auto span = std::span<const ElementId>(e);
  OrderedJson out = header(config, ctx);
  out["E"] = elements(s, span);
  if (!config.z.empty()) {
    ElementId z = parse_id(config.z, s.size(), "--z");
    out["z"] = element(s, z);
    out["value"] = to_json(v_value(s, ctx.lambda, span, z));
    return {std::move(out), 0};
  }
  SubsetMask up(s.size());
  if (!e.empty()) up = s.up_set(s.product_of(span));
  OrderedJson rows = OrderedJson::array();
  for_each_bit(up, [&](ElementId z) {
    OrderedJson row = element(s, z);
    row["value"] = to_json(v_value(s, ctx.lambda, span, z));
    rows.push_back(std::move(row));
  });
  out["values"] = std::move(rows);
  return {std::move(out), 0};
}

Outcome profile(const RunConfig& config, Context& ctx) {
  const auto& s = ctx.s();
  Rational level = parse_rational(config.level);
  auto options = search_options(config);
  auto p = propagation_profile(s, ctx.lambda, level, options);
  OrderedJson out = header(config, ctx);
  out["profile"] = to_json(s, p);
  if (config.check && !p.value.infinite) {
    OrderedJson checks = OrderedJson::array();
    checks.push_back(to_json(s, check_equivalence_iii(s, ctx.lambda, level, p.value.c, options)));
    auto levels = thresholds(ctx.lambda);
    auto below = std::find_if(levels.rbegin(), levels.rend(), [&](const Rational& l) { return l < p.value.c; });
    if (below != levels.rend()) checks.push_back(to_json(s, check_equivalence_iii(s, ctx.lambda, level, *below, options)));
    out["equivalence"] = std::move(checks);
  }
  return {std::move(out), 0};
}

Outcome breadth_command(const RunConfig& config, Context& ctx) {
  OrderedJson out = header(config, ctx);
  out["report"] = to_json(ctx.s(), breadth(ctx.s(), breadth_options(config)));
  return {std::move(out), 0};
}

Outcome adversary(const RunConfig& config, Context& ctx) {
  const auto& s = ctx.s();
  OrderedJson out = header(config, ctx);
  AdversarialChain chain;
  try {
    chain = build_chain(s, config.nmax, config.strict, config.cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientBreadth) throw;
    out["finding"] = "InsufficientBreadth";
    out["message"] = e.what();
    return {std::move(out), 0};
  }
  out["chain"] = to_json(s, chain);
  auto check = check_chain(s, chain);
  out["chain_failures"] = check.failures;

  auto eta = eta_weight(chain, s);
  auto sub = check_eta_subadditivity(chain, s, eta, 4096, config.seed);
  OrderedJson eta_json;
  eta_json["summary"] = weight_summary(eta.values);
  eta_json["subadditive"] = {{"ok", sub.ok}, {"exhaustive", sub.exhaustive}, {"traces", sub.traces}, {"pairs", sub.pairs}};
  if (sub.witness) {
    eta_json["subadditive"]["witness"] = {element(s, sub.witness->first), element(s, sub.witness->second)};
  }
  OrderedJson family_values = OrderedJson::array();
  for (std::size_t n = 1; n <= chain.depth; ++n) {
    for (ElementId x : chain.families[n - 1]) {
      OrderedJson item = element(s, x);
      item["level"] = n;
      item["eta"] = exact(eta.values[x]);
      item["N"] = eta.level[x];
      family_values.push_back(std::move(item));
    }
  }
  eta_json["families"] = std::move(family_values);
  out["eta"] = std::move(eta_json);

  bool passed = check.ok() && sub.ok;
  OrderedJson barriers = OrderedJson::array();
  for (std::size_t n = 2; n <= chain.depth; ++n) {
    auto b = verify_barrier(chain, s, eta, n, config.barrier_cap);
    passed = passed && (!b.evaluated || b.passed);
    barriers.push_back(to_json(s, b));
  }
  out["barriers"] = std::move(barriers);
  out["passed"] = passed;
  return {std::move(out), passed ? 0 : 1};
}

Outcome generate(const RunConfig&, Context& ctx) {
  return {instance_to_json(ctx.s(), &ctx.lambda), 0};
}

Outcome verify(const RunConfig& config, std::ostream& err) {
  VerifyOptions options;
  options.seed = config.seed;
  options.search = search_options(config);
  options.breadth_cap = config.cap;
  options.jobs = resolve_jobs(config.jobs);
  std::vector<std::pair<std::string, std::string>> sources;
  if (config.instance.empty()) {
    sources = standard_corpus();
  } else {
    sources.emplace_back(config.instance, config.weight);
  }
  OrderedJson out;
  out["command"] = "verify";
  out["seed"] = config.seed;
  OrderedJson list = OrderedJson::array();
  bool passed = true;
  for (const auto& [source, weight] : sources) {
    RunConfig one = config;
    one.instance = source;
    one.weight = weight;
    Context ctx;
    if (auto rejected = load(one, ctx)) {
      rejected->body["instance"] = source;
      list.push_back(std::move(rejected->body));
      passed = false;
      continue;
    }
    auto report = verify_instance(source, ctx.instance(), ctx.lambda, options);
    report["weight"] = weight_name(one, ctx.instance());
    passed = passed && report["passed"].get<bool>();
    if (!report["passed"].get<bool>()) err << "slat: verify: " << source << " failed\n";
    list.push_back(std::move(report));
  }
  out["instances"] = std::move(list);
  out["passed"] = passed;
  return {std::move(out), passed ? 0 : 1};
}

// --- sweep ------------------------------------------------------------------

std::string csv_rational(const Rational& r) { return to_string(r); }

std::string csv_value(const PropagationValue& v) { return v.infinite ? "inf" : to_string(v.c); }

struct SweepRow {
  std::string value;
  std::string level;
  std::string exhaustive;
  std::string bound;
  std::string bound_ok;
  std::string oracle;
  std::string status = "ok";
};

SweepRow sweep_vsingletons(const Semilattice& s, const LogWeight& lambda) {
  if (s.kind() != Kind::SetSystem) throw Error(ErrorCode::KindMismatch, "vsingletons needs a set system");
  std::vector<ElementId> singletons;
  ElementId top = 0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    auto id = static_cast<ElementId>(x);
    if (s.cardinality(id) == 1) singletons.push_back(id);
    if (s.cardinality(id) > s.cardinality(top)) top = id;
  }
  SweepRow row;
  auto v = v_value(s, lambda, std::span<const ElementId>(singletons), top);
  row.value = csv_value(v);
  row.exhaustive = "true";
  Rational half(static_cast<std::int64_t>(s.cardinality(top)), 2);
  row.bound = csv_rational(half);
  row.bound_ok = !v.infinite && v.c >= half ? "true" : "false";
  if (s.size() <= 512) {
    auto table = to_table(s);
    auto e = mask_from_ids(s.size(), std::span<const ElementId>(singletons));
    row.oracle = csv_value(reference::v_value_dense(table, lambda, e, top));
  }
  return row;
}

SweepRow sweep_breadth(const Semilattice& s, const RunConfig& config) {
  SweepRow row;
  auto report = breadth(s, breadth_options(config));
  row.value = std::to_string(report.breadth);
  row.exhaustive = report.exhaustive ? "true" : "false";
  if (!report.exhaustive) row.status = "budget";
  if (s.size() <= 16) row.oracle = std::to_string(reference::breadth_bruteforce(s, std::min(s.size(), report.breadth + 1)));
  return row;
}

SweepRow sweep_profile(const Semilattice& s, const LogWeight& lambda, const std::string& family,
                       const RunConfig& config) {
  SweepRow row;
  Rational level = parse_rational(config.level);
  row.level = csv_rational(level);
  auto p = propagation_profile(s, lambda, level, search_options(config));
  row.value = csv_value(p.value);
  row.exhaustive = p.exhaustive ? "true" : "false";
  if (!p.exhaustive) row.status = "budget";
  Rational bound;
  if (family == "fin" || family == "fin_exact") {
    bound = level * level;
  } else {
    auto br = breadth(s, breadth_options(config));
    bound = Rational(static_cast<std::int64_t>(br.breadth)) * level;
  }
  row.bound = csv_rational(bound);
  row.bound_ok = !p.value.infinite && p.value.c <= bound ? "true" : "false";
  if (s.size() <= 64 && level_set(lambda, level).count() <= 11) {
    row.oracle = csv_rational(reference::profile_bruteforce(s, lambda, level));
  }
  return row;
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.family.find('*') == std::string::npos) {
    throw Error(ErrorCode::Usage, "--family needs a '*' placeholder, e.g. prototype:*");
  }
  if (config.op != "vsingletons" && config.op != "breadth" && config.op != "profile") {
    throw Error(ErrorCode::Usage, "--op must be vsingletons, breadth or profile");
  }
  if (config.from > config.to) throw Error(ErrorCode::Usage, "--from must not exceed --to");
  std::string family = config.family.substr(0, config.family.find(':'));
  if (family.rfind("gen", 0) == 0 && config.family.rfind("gen:", 0) == 0) {
    family = config.family.substr(4, config.family.find(':', 4) - 4);
  }
  out << "family,param,n,op,level,value,exhaustive,bound,bound_ok,oracle,status";
  if (config.timing) out << ",seconds";
  out << "\n";
  int status = 0;
  for (std::size_t v = config.from; v <= config.to; ++v) {
    std::string descriptor = config.family;
    descriptor.replace(descriptor.find('*'), 1, std::to_string(v));
    if (descriptor.rfind("gen:", 0) != 0) descriptor = "gen:" + descriptor;
    auto start = std::chrono::steady_clock::now();
    SweepRow row;
    std::string n = "";
    try {
      auto instance = load_instance(descriptor, false);
      const auto& s = instance.semilattice;
      n = std::to_string(s.size());
      auto lambda = resolve_weight(config.weight, instance);
      if (config.op == "vsingletons") {
        row = sweep_vsingletons(s, lambda);
      } else if (config.op == "breadth") {
        row = sweep_breadth(s, config);
      } else {
        row = sweep_profile(s, lambda, family, config);
      }
      if (row.bound_ok == "false" || (!row.oracle.empty() && row.oracle != row.value && row.status == "ok")) {
        status = 1;
      }
    } catch (const Error& e) {
      row.status = e.code() == ErrorCode::BudgetExceeded ? "budget" : std::string("error:") + to_string(e.code());
      err << "slat: sweep: " << descriptor << ": " << e.what() << "\n";
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << config.family << "," << v << "," << n << "," << config.op << "," << row.level << "," << row.value << ","
        << row.exhaustive << "," << row.bound << "," << row.bound_ok << "," << row.oracle << "," << row.status;
    if (config.timing) out << "," << seconds;
    out << "\n";
  }
  return status;
}

void emit(const OrderedJson& body, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << body.dump(2) << "\n";
  } else {
    render_text(body, out);
  }
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotClosed:
    case ErrorCode::InvalidInstance:
      return 1;
    case ErrorCode::BudgetExceeded:
      return 3;
    case ErrorCode::InsufficientBreadth:
      return 0;
    default:
      return 2;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "sweep") return sweep(config, out, err);
    Outcome outcome;
    if (config.subcommand == "verify") {
      outcome = verify(config, err);
    } else {
      Context ctx;
      if (auto rejected = load(config, ctx)) {
        emit(rejected->body, config.format, out);
        return rejected->status;
      }
      static const std::map<std::string, std::function<Outcome(const RunConfig&, Context&)>> handlers = {
          {"analyze", analyze}, {"defect", defect}, {"dist", dist},           {"fbp", fbp_command},
          {"vmap", vmap},       {"profile", profile}, {"breadth", breadth_command}, {"adversary", adversary},
          {"generate", generate}};
      auto it = handlers.find(config.subcommand);
      if (it == handlers.end()) throw Error(ErrorCode::Usage, "unknown subcommand '" + config.subcommand + "'");
      outcome = it->second(config, ctx);
    }
    emit(outcome.body, config.subcommand == "generate" ? Format::Json : config.format, out);
    return outcome.status;
  } catch (const Error& e) {
    err << "slat: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite weighted semilattices: stability functionals, propagation, breadth."};
  app.name("slat");
  app.require_subcommand(1);
  RunConfig config;

  const std::map<std::string, Format> formats{{"json", Format::Json}, {"text", Format::Text}};
  auto common = [&](CLI::App* sub, bool instance_required) {
    auto* inst = sub->add_option("instance", config.instance, "Instance JSON file or gen:<family>:<params>");
    if (instance_required) inst->required();
    sub->add_option("--weight,-w", config.weight,
                    "Log-weight: zero, cardinality, prototype, scaled:<q>, or a JSON file");
    sub->add_option("--format", config.format, "Report format")->transform(CLI::CheckedTransformer(formats));
    sub->add_flag("--close", config.close, "Add missing unions to set systems instead of rejecting them");
    sub->add_option("--jobs,-j", config.jobs, "Worker threads (default: SLAT_JOBS or 1)");
    sub->add_option("--seed", config.seed, "Seed for randomized suites");
    sub->add_option("--budget", config.budget, "Closure budget for profile searches");
    sub->add_option("--cap", config.cap, "Node cap for incompressible-set searches");
    sub->add_flag("--strict", config.strict, "Fail with exit 3 instead of sampling when a budget runs out");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Summarize an instance and its log-weight");
  common(analyze_cmd, true);

  auto* defect_cmd = app.add_subcommand("defect", "Weighted multiplicativity defect of a set or of psi");
  common(defect_cmd, true);
  defect_cmd->add_option("--set", config.set, "Comma-separated element ids");
  defect_cmd->add_option("--psi", config.psi, "JSON file with psi values in source order");

  auto* dist_cmd = app.add_subcommand("dist", "Weighted distance to the nearest filter indicator or zero");
  common(dist_cmd, true);
  dist_cmd->add_option("--set", config.set, "Comma-separated element ids");
  dist_cmd->add_option("--psi", config.psi, "JSON file with psi values in source order");

  auto* fbp_cmd = app.add_subcommand("fbp", "One FBP_C step and its closure");
  common(fbp_cmd, true);
  fbp_cmd->add_option("--C", config.c, "Level C (rational)")->required();
  fbp_cmd->add_option("--set", config.set, "Comma-separated element ids");

  auto* vmap_cmd = app.add_subcommand("vmap", "Propagation values V_E(z)");
  common(vmap_cmd, true);
  vmap_cmd->add_option("--E", config.e, "Comma-separated element ids")->required();
  vmap_cmd->add_option("--z", config.z, "Target element id (default: every z in the generated filter)");

  auto* profile_cmd = app.add_subcommand("profile", "Propagation profile at level L");
  common(profile_cmd, true);
  profile_cmd->add_option("--L", config.level, "Level L (rational)")->required();
  profile_cmd->add_flag("--check", config.check, "Also check stable sets at C = P(L) and the level below");

  auto* breadth_cmd = app.add_subcommand("breadth", "Breadth and a largest incompressible set");
  common(breadth_cmd, true);

  auto* adversary_cmd = app.add_subcommand("adversary", "Build the adversarial chain and check its barriers");
  common(adversary_cmd, true);
  adversary_cmd->add_option("--nmax", config.nmax, "Chain depth to attempt")->check(CLI::PositiveNumber);
  adversary_cmd->add_option("--barrier-cap", config.barrier_cap, "Largest filter evaluated by a barrier check");

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV table over a generated family");
  common(sweep_cmd, false);
  sweep_cmd->add_option("--family", config.family, "Family descriptor with '*', e.g. prototype:* or fin:*:4")->required();
  sweep_cmd->add_option("--from", config.from, "First parameter value");
  sweep_cmd->add_option("--to", config.to, "Last parameter value");
  sweep_cmd->add_option("--op", config.op, "vsingletons, breadth or profile");
  sweep_cmd->add_option("--L", config.level, "Level for --op profile");
  sweep_cmd->add_flag("--timing", config.timing, "Add a seconds column");

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites (standard corpus without an instance)");
  common(verify_cmd, false);

  auto* generate_cmd = app.add_subcommand("generate", "Write a generated instance as JSON");
  common(generate_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
  if (config.subcommand == "generate" && config.instance.rfind("gen:", 0) != 0) {
    config.instance = "gen:" + config.instance;
  }
  return run(config, out, err);
}

}  // namespace slat::cli
