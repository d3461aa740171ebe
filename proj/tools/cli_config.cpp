#include "cli_config.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "fmbound/serialization.hpp"

namespace fmbound::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(context + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("unknown key '" + key + "' in " + context);
  }
}

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key)) throw ConfigError(context + " is missing required key '" + key + "'");
  return j.at(key);
}

double get_number(const json& j, const char* key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) throw ConfigError(context + "." + key + " must be a number");
  return v.get<double>();
}

double optional_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

std::complex<double> parse_complex(const json& v, const std::string& context) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(context + " entries must be numbers or [re, im] pairs");
}

}  // namespace

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    json config;
    in >> config;
    check_keys(config, "config",
               {"model", "symbol", "phi", "exponents", "eigenvalues", "experiment", "output"});
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
}

GroupModel parse_model(const json& spec) {
  check_keys(spec, "model",
             {"kind", "orders", "haar_weight", "name", "path", "dimension", "truncation",
              "grid", "spacing", "extent", "max_level", "max_level_twice"});
  const std::string kind = require(spec, "kind", "model").get<std::string>();
  if (kind == "finite_abelian") {
    auto orders = require(spec, "orders", "model").get<std::vector<int>>();
    return GroupModel::finite_abelian(std::move(orders), optional_number(spec, "haar_weight", 1.0));
  }
  if (kind == "finite_group") {
    if (spec.contains("path")) return load_irrep_table(spec.at("path").get<std::string>());
    return GroupModel::finite_group(builtin_table(require(spec, "name", "model").get<std::string>()));
  }
  if (kind == "torus") {
    const int d = static_cast<int>(get_number(spec, "dimension", "model"));
    const int K = static_cast<int>(get_number(spec, "truncation", "model"));
    const int M = spec.contains("grid") ? spec.at("grid").get<int>() : 4 * (K + 1);
    return GroupModel::torus(d, K, M);
  }
  if (kind == "euclidean_grid") {
    return GroupModel::euclidean_grid(static_cast<int>(get_number(spec, "dimension", "model")),
                                      get_number(spec, "spacing", "model"),
                                      get_number(spec, "extent", "model"));
  }
  if (kind == "su2") {
    if (spec.contains("max_level_twice")) {
      return GroupModel::su2_truncation(spec.at("max_level_twice").get<int>());
    }
    return GroupModel::su2_truncation(2 * static_cast<int>(get_number(spec, "max_level", "model")));
  }
  throw ConfigError("unknown model kind: " + kind);
}

BlockSymbol parse_symbol(const json& spec, const GroupModel& model, std::uint64_t seed) {
  check_keys(spec, "symbol", {"kind", "values", "blocks", "ensemble", "path"});
  const std::string kind = require(spec, "kind", "symbol").get<std::string>();
  if (kind == "identity") return BlockSymbol::identity(model);
  if (kind == "zero") return BlockSymbol::zero(model);
  if (kind == "averaging") return BlockSymbol::averaging(model);
  if (kind == "diagonal") {
    const json& jv = require(spec, "values", "symbol");
    if (!jv.is_array()) throw ConfigError("symbol.values must be an array");
    std::vector<std::complex<double>> values;
    for (const auto& v : jv) values.push_back(parse_complex(v, "symbol.values"));
    return BlockSymbol::scalar_blocks(model, values);
  }
  if (kind == "projection") {
    return BlockSymbol::projection(model,
                                   static_cast<int>(get_number(spec, "blocks", "symbol")));
  }
  if (kind == "random") {
    const EnsembleKind ensemble =
        ensemble_from_string(require(spec, "ensemble", "symbol").get<std::string>());
    Rng rng(seed, 1);
    return make_random_symbol(model, ensemble, rng);
  }
  if (kind == "csv") {
    const std::string path = require(spec, "path", "symbol").get<std::string>();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open symbol CSV: " + path);
    return block_symbol_from_csv(model, in);
  }
  throw ConfigError("unknown symbol kind: " + kind);
}

PhiFunction parse_phi(const json& spec) {
  check_keys(spec, "phi", {"kind", "alpha", "T", "values", "widths"});
  const std::string kind = require(spec, "kind", "phi").get<std::string>();
  if (kind == "power") return PhiFunction::power(get_number(spec, "alpha", "phi"));
  if (kind == "reciprocal") return PhiFunction::reciprocal(get_number(spec, "alpha", "phi"));
  if (kind == "indicator") return PhiFunction::indicator(get_number(spec, "T", "phi"));
  if (kind == "step") {
    const auto values = require(spec, "values", "phi").get<std::vector<double>>();
    const auto widths = require(spec, "widths", "phi").get<std::vector<double>>();
    if (values.size() != widths.size()) {
      throw ConfigError("phi.values and phi.widths must have equal length");
    }
    std::vector<std::pair<double, double>> steps;
    for (std::size_t i = 0; i < values.size(); ++i) steps.emplace_back(values[i], widths[i]);
    return PhiFunction::step(StepFunction::from_steps(steps));
  }
  throw ConfigError("unknown phi kind: " + kind);
}

EigenvalueSequence parse_eigenvalues(const json& spec) {
  check_keys(spec, "eigenvalues", {"kind", "Q", "count", "dimension", "path"});
  const std::string kind = require(spec, "kind", "eigenvalues").get<std::string>();
  if (kind == "synthetic") {
    return EigenvalueSequence::synthetic_power_law(
        get_number(spec, "Q", "eigenvalues"),
        static_cast<std::size_t>(get_number(spec, "count", "eigenvalues")));
  }
  if (kind == "torus_lattice") {
    return EigenvalueSequence::torus_lattice(
        static_cast<int>(get_number(spec, "dimension", "eigenvalues")),
        static_cast<std::size_t>(get_number(spec, "count", "eigenvalues")));
  }
  if (kind == "csv") {
    std::optional<double> Q;
    if (spec.contains("Q")) Q = spec.at("Q").get<double>();
    return EigenvalueSequence::from_csv(require(spec, "path", "eigenvalues").get<std::string>(),
                                        Q);
  }
  throw ConfigError("unknown eigenvalue source kind: " + kind);
}

namespace {

struct OutputTarget {
  std::optional<std::string> path;
  std::string format = "json";
};

OutputTarget parse_output(const json& config, const Overrides& overrides) {
  OutputTarget target;
  if (config.contains("output")) {
    const json& out = config.at("output");
    check_keys(out, "output", {"path", "format"});
    if (out.contains("path")) target.path = out.at("path").get<std::string>();
    if (out.contains("format")) target.format = out.at("format").get<std::string>();
  }
  if (overrides.out) target.path = *overrides.out;
  if (overrides.format) target.format = *overrides.format;
  if (target.format != "json" && target.format != "csv") {
    throw ConfigError("output format must be 'json' or 'csv'");
  }
  return target;
}

std::uint64_t effective_seed(const json& config, const Overrides& overrides) {
  if (overrides.seed) return *overrides.seed;
  if (config.contains("experiment") && config.at("experiment").contains("seed")) {
    return config.at("experiment").at("seed").get<std::uint64_t>();
  }
  return 0;
}

constexpr std::initializer_list<const char*> kExperimentKeys = {
    "name",      "trials",    "seed",       "c_safety", "restarts", "max_iterations",
    "tolerance", "ensemble",  "k_schedule", "jobs"};

RunOptions parse_run_options(const json& config, const Overrides& overrides,
                             std::uint64_t seed) {
  RunOptions opts;
  if (config.contains("experiment")) {
    const json& exp = config.at("experiment");
    check_keys(exp, "experiment", kExperimentKeys);
    opts.c_safety = optional_number(exp, "c_safety", 10.0);
    opts.ascent.restarts = static_cast<int>(optional_number(exp, "restarts", 20));
    opts.ascent.max_iterations = static_cast<int>(optional_number(exp, "max_iterations", 500));
    opts.ascent.tolerance = optional_number(exp, "tolerance", 1e-8);
    opts.jobs = static_cast<int>(optional_number(exp, "jobs", 1));
    if (exp.contains("ensemble")) {
      opts.ensemble = ensemble_from_string(exp.at("ensemble").get<std::string>());
    }
  }
  if (overrides.jobs) opts.jobs = *overrides.jobs;
  opts.ascent.seed = seed;
  return opts;
}

int finish_report(const BoundReport& report, const OutputTarget& target) {
  if (target.path) {
    report.write_file(*target.path, target.format);
    std::cout << (report.pass ? "PASS" : "FAIL") << " " << report.experiment << " ("
              << *target.path << ")\n";
  } else if (target.format == "csv") {
    std::cout << report.to_csv();
  } else {
    std::cout << report.to_json_string();
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int cmd_mu(const json& config, const Overrides& overrides) {
  const GroupModel model = parse_model(require(config, "model", "config"));
  const std::uint64_t seed = effective_seed(config, overrides);
  const BlockSymbol sigma = parse_symbol(require(config, "symbol", "config"), model, seed);
  const StepFunction mu = mu_from_spectrum(spectrum_of_symbol(sigma));
  const OutputTarget target = parse_output(config, overrides);

  std::string body;
  if (target.format == "csv") {
    body = step_function_to_csv(mu);
  } else {
    nlohmann::ordered_json j;
    j["schema"] = "fmbound/1";
    j["model"] = model.describe();
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
      steps.push_back({{"value", mu.values()[i]},
                       {"width", mu.widths()[i]},
                       {"cumulative_width", mu.breakpoints()[i]}});
    }
    j["mu"] = steps;
    body = j.dump(2) + "\n";
  }
  if (target.path) {
    write_file_atomic(*target.path, body);
  } else {
    std::cout << body;
  }
  return 0;
}

int cmd_bound(const json& config, const Overrides& overrides) {
  const GroupModel model = parse_model(require(config, "model", "config"));
  const std::uint64_t seed = effective_seed(config, overrides);
  const BlockSymbol sigma = parse_symbol(require(config, "symbol", "config"), model, seed);
  const json& exps = require(config, "exponents", "config");
  check_keys(exps, "exponents", {"p", "q", "b", "s"});
  const double p = get_number(exps, "p", "exponents");
  const double q = get_number(exps, "q", "exponents");

  const bool compact =
      model.get_if<FiniteGroupTable>() != nullptr || model.get_if<SU2DualTruncation>() != nullptr;
  const double value = compact ? compact_symbol_functional(sigma, p, q)
                               : level_set_functional(scalar_symbol_data(sigma), p, q);

  const OutputTarget target = parse_output(config, overrides);
  std::string body;
  if (target.format == "csv") {
    body = "functional,p,q,value\n";
    body += std::string(compact ? "compact-d2" : "level-set") + "," + format_double(p) + "," +
            format_double(q) + "," + format_double(value) + "\n";
  } else {
    nlohmann::ordered_json j;
    j["schema"] = "fmbound/1";
    j["model"] = model.describe();
    j["functional"] = compact ? "compact-d2" : "level-set";
    j["p"] = p;
    j["q"] = q;
    j["value"] = value;
    body = j.dump(2) + "\n";
  }
  if (target.path) {
    write_file_atomic(*target.path, body);
    std::cout << format_double(value) << "\n";
  } else {
    std::cout << body;
  }
  return 0;
}

int cmd_verify(const json& config, const Overrides& overrides) {
  const json& exp = require(config, "experiment", "config");
  check_keys(exp, "experiment", kExperimentKeys);
  const std::string name = require(exp, "name", "experiment").get<std::string>();
  const std::uint64_t seed = effective_seed(config, overrides);
  const RunOptions opts = parse_run_options(config, overrides, seed);
  int trials = static_cast<int>(optional_number(exp, "trials", 100));
  if (overrides.trials) trials = *overrides.trials;
  const OutputTarget target = parse_output(config, overrides);

  auto exponents = [&]() -> const json& { return require(config, "exponents", "config"); };
  auto exponent = [&](const char* key) {
    check_keys(exponents(), "exponents", {"p", "q", "b", "s"});
    return get_number(exponents(), key, "exponents");
  };

  if (name == "sharpness-l2") {
    const GroupModel model = parse_model(require(config, "model", "config"));
    return finish_report(run_sharpness_l2(model, trials, seed, opts), target);
  }
  if (name == "hausdorff-young") {
    const GroupModel model = parse_model(require(config, "model", "config"));
    return finish_report(run_hausdorff_young(model, exponent("p"), trials, seed, opts), target);
  }
  if (name == "hyp") {
    const GroupModel model = parse_model(require(config, "model", "config"));
    const PhiFunction phi = parse_phi(require(config, "phi", "config"));
    return finish_report(run_hyp(model, phi, exponent("p"), exponent("b"), trials, seed, opts),
                         target);
  }
  if (name == "multiplier") {
    const GroupModel model = parse_model(require(config, "model", "config"));
    return finish_report(run_multiplier_verification(model, opts.ensemble, exponent("p"),
                                                     exponent("q"), trials, seed, opts),
                         target);
  }
  if (name == "comparison") {
    const GroupModel model = parse_model(require(config, "model", "config"));
    return finish_report(run_comparison(model, trials, exponent("p"), exponent("q"), seed, opts),
                         target);
  }
  if (name == "sobolev") {
    const EigenvalueSequence lambda =
        parse_eigenvalues(require(config, "eigenvalues", "config"));
    if (!exp.contains("k_schedule")) {
      throw ConfigError("sobolev experiment needs experiment.k_schedule");
    }
    const auto schedule = exp.at("k_schedule").get<std::vector<std::size_t>>();
    return finish_report(
        run_sobolev_trend(lambda, exponent("s"), exponent("p"), exponent("q"), schedule),
        target);
  }
  throw ConfigError("unknown experiment name: " + name);
}

}  // namespace fmbound::cli
