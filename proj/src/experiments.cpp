#include "fmbound/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fmbound/serialization.hpp"

namespace fmbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Runs fn(0..trials-1); per-trial state must live in preallocated slots so the
// result does not depend on the job count.
void parallel_trials(int trials, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, trials));
  if (jobs == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string trial_message(const char* what, int trial, double value) {
  std::ostringstream out;
  out << what << " at trial " << trial << " (value " << format_double(value) << ")";
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- ensembles

EnsembleKind ensemble_from_string(const std::string& name) {
  if (name == "diagonal-uniform") return EnsembleKind::DiagonalUniform;
  if (name == "dense-gaussian") return EnsembleKind::DenseGaussian;
  if (name == "decaying") return EnsembleKind::Decaying;
  if (name == "indicator") return EnsembleKind::Indicator;
  throw ConfigError("unknown ensemble kind: " + name);
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::DiagonalUniform:
      return "diagonal-uniform";
    case EnsembleKind::DenseGaussian:
      return "dense-gaussian";
    case EnsembleKind::Decaying:
      return "decaying";
    case EnsembleKind::Indicator:
      return "indicator";
  }
  return "?";
}

BlockSymbol make_random_symbol(const GroupModel& model, EnsembleKind kind, Rng& rng) {
  BlockSymbol sigma = BlockSymbol::zero(model);
  const double gamma =
      kind == EnsembleKind::Decaying ? rng.uniform(0.5, 2.0) : 0.0;
  int block_index = 0;
  for (SymbolBlock& block : sigma.blocks()) {
    switch (kind) {
      case EnsembleKind::DiagonalUniform:
        for (int i = 0; i < block.dim; ++i) {
          block.matrix(i, i) = rng.uniform() * rng.unit_phase();
        }
        break;
      case EnsembleKind::DenseGaussian:
        for (int r = 0; r < block.dim; ++r) {
          for (int c = 0; c < block.dim; ++c) block.matrix(r, c) = rng.complex_normal();
        }
        break;
      case EnsembleKind::Decaying: {
        const double mag = std::pow(1.0 + block_index, -gamma);
        for (int i = 0; i < block.dim; ++i) block.matrix(i, i) = mag * rng.unit_phase();
        break;
      }
      case EnsembleKind::Indicator:
        if (rng.coin()) {
          block.matrix = Eigen::MatrixXcd::Identity(block.dim, block.dim);
        }
        break;
    }
    ++block_index;
  }
  return sigma;
}

GroupFunction make_random_function(const GroupModel& model, Rng& rng) {
  Eigen::VectorXcd values(model.domain_size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = rng.complex_normal();
  return GroupFunction(model, std::move(values));
}

// -------------------------------------------------------------- BoundReport

void BoundReport::record(const std::string& name, double tolerance, bool ok,
                         const std::string& message) {
  assertions.push_back({name, tolerance, ok, message});
  pass = pass && ok;
}

nlohmann::ordered_json BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "fmbound/1";
  j["experiment"] = experiment;
  j["model"] = model;
  j["seed"] = seed;
  j["params"] = params.is_null() ? nlohmann::ordered_json::object() : params;
  nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json jr;
    for (const auto& [k, v] : row) jr[k] = v;
    jrows.push_back(std::move(jr));
  }
  j["rows"] = std::move(jrows);
  nlohmann::ordered_json jagg;
  for (const auto& [k, v] : aggregate) jagg[k] = v;
  j["aggregate"] = std::move(jagg);
  nlohmann::ordered_json jassert = nlohmann::ordered_json::array();
  for (const Assertion& a : assertions) {
    nlohmann::ordered_json ja;
    ja["name"] = a.name;
    ja["tolerance"] = a.tolerance;
    ja["pass"] = a.pass;
    ja["message"] = a.message;
    jassert.push_back(std::move(ja));
  }
  j["assertions"] = std::move(jassert);
  j["pass"] = pass;
  return j;
}

std::string BoundReport::to_json_string() const { return to_json().dump(2) + "\n"; }

std::string BoundReport::to_csv() const {
  std::ostringstream out;
  if (rows.empty()) return out.str();
  for (std::size_t i = 0; i < rows.front().size(); ++i) {
    out << (i ? "," : "") << rows.front()[i].first;
  }
  out << "\n";
  for (const ReportRow& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i].second);
    }
    out << "\n";
  }
  return out.str();
}

void BoundReport::write_file(const std::string& path, const std::string& format) const {
  if (format == "csv") {
    write_file_atomic(path, to_csv());
  } else if (format == "json") {
    write_file_atomic(path, to_json_string());
  } else {
    throw ConfigError("unknown report format: " + format);
  }
}

// ------------------------------------------------------------- experiments

BoundReport run_sharpness_l2(const GroupModel& model, int trials, std::uint64_t seed,
                             const RunOptions& opts) {
  if (!model.is_finite_group()) {
    throw InvalidArgument("run_sharpness_l2 needs a finite group model");
  }
  if (trials < 1) throw ConfigError("run_sharpness_l2 needs at least one trial");

  BoundReport rep;
  rep.experiment = "sharpness-l2";
  rep.model = model.describe();
  rep.seed = seed;
  rep.params["p"] = 2.0;
  rep.params["q"] = 2.0;
  rep.params["trials"] = trials;
  rep.params["ensemble"] = to_string(opts.ensemble);
  rep.params["restarts"] = opts.ascent.restarts;
  rep.params["max_iterations"] = opts.ascent.max_iterations;

  struct Slot {
    double exact = 0.0, sup_mu = 0.0, estimate = 0.0;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, opts.jobs, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
    const BlockSymbol sigma = make_random_symbol(model, opts.ensemble, rng);
    Slot& s = slots[t];
    s.exact = exact_l2_norm(sigma);
    s.sup_mu = mu_from_spectrum(spectrum_of_symbol(sigma)).sup();
    AscentOptions ascent = opts.ascent;
    ascent.seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    s.estimate = estimate_pq_norm(sigma, 2.0, 2.0, ascent).value;
  });

  double max_error = 0.0, max_sup_gap = 0.0;
  int bad_trial = -1;
  for (int t = 0; t < trials; ++t) {
    const Slot& s = slots[t];
    const double err = std::abs(s.estimate - s.exact);
    rep.rows.push_back({{"trial", static_cast<double>(t)},
                        {"exact_l2", s.exact},
                        {"sup_mu", s.sup_mu},
                        {"estimate", s.estimate},
                        {"abs_error", err}});
    if (!std::isfinite(s.exact) || !std::isfinite(s.sup_mu) || !std::isfinite(s.estimate)) {
      if (bad_trial < 0) bad_trial = t;
      continue;
    }
    max_error = std::max(max_error, err);
    max_sup_gap = std::max(max_sup_gap, std::abs(s.exact - s.sup_mu) / std::max(1.0, s.exact));
  }
  rep.aggregate = {{"max_abs_error", max_error}, {"max_sup_gap", max_sup_gap}};
  rep.record("finite-values", 0.0, bad_trial < 0,
             bad_trial < 0 ? "" : trial_message("non-finite value", bad_trial, 0.0));
  rep.record("estimate-matches-exact-l2", 1e-6, max_error <= 1e-6,
             "max |estimate - exact| = " + format_double(max_error));
  rep.record("exact-equals-sup-mu", 1e-12, max_sup_gap <= 1e-12,
             "max relative gap = " + format_double(max_sup_gap));
  return rep;
}

BoundReport run_hausdorff_young(const GroupModel& model, double p, int trials,
                                std::uint64_t seed, const RunOptions& opts) {
  if (!model.is_finite_group()) {
    throw InvalidArgument("run_hausdorff_young needs a finite group model");
  }
  if (!(p > 1.0) || !(p <= 2.0)) {
    throw InvalidArgument("run_hausdorff_young needs 1 < p <= 2");
  }
  if (trials < 1) throw ConfigError("run_hausdorff_young needs at least one trial");
  const double pprime = p / (p - 1.0);

  BoundReport rep;
  rep.experiment = "hausdorff-young";
  rep.model = model.describe();
  rep.seed = seed;
  rep.params["p"] = p;
  rep.params["p_prime"] = pprime;
  rep.params["trials"] = trials;

  struct Slot {
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, opts.jobs, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
    const GroupFunction f = make_random_function(model, rng);
    Slot& s = slots[t];
    s.lhs = lorentz_norm(mu_from_spectrum(spectrum_of_symbol(fourier_transform(f))), pprime,
                         pprime);
    s.rhs = lp_norm(f, p);
    s.ratio = s.rhs > 0.0 ? s.lhs / s.rhs : (s.lhs == 0.0 ? 0.0 : kInf);
  });

  double max_ratio = 0.0, sum_ratio = 0.0;
  int bad_trial = -1;
  for (int t = 0; t < trials; ++t) {
    const Slot& s = slots[t];
    rep.rows.push_back({{"trial", static_cast<double>(t)},
                        {"lhs_lorentz", s.lhs},
                        {"f_lp", s.rhs},
                        {"ratio", s.ratio}});
    if (!std::isfinite(s.ratio)) {
      if (bad_trial < 0) bad_trial = t;
      continue;
    }
    max_ratio = std::max(max_ratio, s.ratio);
    sum_ratio += s.ratio;
  }

  // saturation witness: the delta function turns the inequality into equality
  const GroupFunction delta = GroupFunction::delta(model);
  const double delta_lhs = lorentz_norm(
      mu_from_spectrum(spectrum_of_symbol(fourier_transform(delta))), pprime, pprime);
  const double delta_ratio = delta_lhs / lp_norm(delta, p);

  rep.aggregate = {{"max_ratio", max_ratio},
                   {"mean_ratio", sum_ratio / trials},
                   {"delta_ratio", delta_ratio}};
  rep.record("finite-values", 0.0, bad_trial < 0,
             bad_trial < 0 ? "" : trial_message("non-finite ratio", bad_trial, 0.0));
  rep.record("hausdorff-young-constant-one", 1e-10, max_ratio <= 1.0 + 1e-10,
             "max ratio = " + format_double(max_ratio));
  rep.record("delta-saturation", 1e-12, std::abs(delta_ratio - 1.0) <= 1e-12,
             "delta ratio = " + format_double(delta_ratio));
  return rep;
}

BoundReport run_hyp(const GroupModel& model, const PhiFunction& phi, double p, double b,
                    int trials, std::uint64_t seed, const RunOptions& opts) {
  if (!model.is_finite_group()) throw InvalidArgument("run_hyp needs a finite group model");
  if (trials < 1) throw ConfigError("run_hyp needs at least one trial");
  const double M = m_phi(phi);
  if (!std::isfinite(M)) {
    throw ConfigError("M_phi infinite: phi = " + phi.describe() +
                      " does not satisfy the weak-integrability hypothesis");
  }
  if (!(p > 1.0)) throw InvalidArgument("run_hyp needs p > 1");
  const double pprime = p / (p - 1.0);
  if (b < p - 1e-12 || b > pprime + 1e-12) {
    throw InvalidArgument("run_hyp needs p <= b <= p'");
  }
  const bool endpoint = std::abs(b - pprime) <= 1e-12 * pprime;

  BoundReport rep;
  rep.experiment = "hyp";
  rep.model = model.describe();
  rep.seed = seed;
  rep.params["p"] = p;
  rep.params["b"] = b;
  rep.params["p_prime"] = pprime;
  rep.params["phi"] = phi.describe();
  rep.params["m_phi"] = M;
  rep.params["c_safety"] = opts.c_safety;
  rep.params["trials"] = trials;
  rep.params["endpoint_b_eq_p_prime"] = endpoint;

  struct Slot {
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, opts.jobs, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
    const GroupFunction f = make_random_function(model, rng);
    const HypSides sides = hyp_sides(f, phi, p, b);
    Slot& s = slots[t];
    s.lhs = sides.lhs;
    s.rhs = sides.rhs_factor * sides.f_lp_norm;
    s.ratio = s.rhs > 0.0 ? s.lhs / s.rhs : (s.lhs == 0.0 ? 0.0 : kInf);
  });

  double max_ratio = 0.0, sum_ratio = 0.0;
  int bad_trial = -1;
  for (int t = 0; t < trials; ++t) {
    const Slot& s = slots[t];
    rep.rows.push_back({{"trial", static_cast<double>(t)},
                        {"lhs", s.lhs},
                        {"rhs", s.rhs},
                        {"ratio", s.ratio}});
    if (!std::isfinite(s.ratio)) {
      if (bad_trial < 0) bad_trial = t;
      continue;
    }
    max_ratio = std::max(max_ratio, s.ratio);
    sum_ratio += s.ratio;
  }

  const GroupFunction delta = GroupFunction::delta(model);
  const HypSides delta_sides = hyp_sides(delta, phi, p, b);
  const double delta_rhs = delta_sides.rhs_factor * delta_sides.f_lp_norm;
  const double delta_ratio = delta_rhs > 0.0 ? delta_sides.lhs / delta_rhs : 0.0;

  rep.aggregate = {{"max_ratio", max_ratio},
                   {"mean_ratio", sum_ratio / trials},
                   {"delta_ratio", delta_ratio}};
  rep.record("finite-ratios", 0.0, bad_trial < 0,
             bad_trial < 0 ? "" : trial_message("non-finite ratio", bad_trial, 0.0));
  if (endpoint) {
    rep.record("endpoint-constant-one", 1e-10, max_ratio <= 1.0 + 1e-10,
               "max ratio = " + format_double(max_ratio));
    rep.record("endpoint-delta-saturation", 1e-12, std::abs(delta_ratio - 1.0) <= 1e-12,
               "delta ratio = " + format_double(delta_ratio));
  } else {
    rep.record("ratio-within-safety", opts.c_safety, max_ratio <= opts.c_safety,
               "max ratio = " + format_double(max_ratio));
  }
  return rep;
}

BoundReport run_multiplier_verification(const GroupModel& model, EnsembleKind ensemble,
                                        double p, double q, int trials, std::uint64_t seed,
                                        const RunOptions& opts) {
  if (!model.has_domain()) {
    throw InvalidArgument("run_multiplier_verification needs a finite or torus model");
  }
  if (trials < 1) throw ConfigError("run_multiplier_verification needs at least one trial");
  const bool compact_table = model.get_if<FiniteGroupTable>() != nullptr;
  const bool abelian = model.get_if<FiniteAbelianGroup>() != nullptr;

  auto bound_of = [&](const BlockSymbol& sigma) {
    return compact_table ? compact_symbol_functional(sigma, p, q)
                         : level_set_functional(scalar_symbol_data(sigma), p, q);
  };

  BoundReport rep;
  rep.experiment = "multiplier";
  rep.model = model.describe();
  rep.seed = seed;
  rep.params["p"] = p;
  rep.params["q"] = q;
  rep.params["ensemble"] = to_string(ensemble);
  rep.params["c_safety"] = opts.c_safety;
  rep.params["trials"] = trials;
  rep.params["restarts"] = opts.ascent.restarts;
  rep.params["bound_functional"] = compact_table ? "compact-d2" : "level-set";

  struct Slot {
    double bound = 0.0, estimate = 0.0, ratio = 0.0;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, opts.jobs, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
    const BlockSymbol sigma = make_random_symbol(model, ensemble, rng);
    Slot& s = slots[t];
    s.bound = bound_of(sigma);
    AscentOptions ascent = opts.ascent;
    ascent.seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    s.estimate = estimate_pq_norm(sigma, p, q, ascent).value;
    s.ratio = s.bound > 0.0 ? s.estimate / s.bound : (s.estimate == 0.0 ? 0.0 : kInf);
  });

  double max_ratio = 0.0, sum_ratio = 0.0;
  int violation_trial = -1, bad_trial = -1;
  for (int t = 0; t < trials; ++t) {
    const Slot& s = slots[t];
    rep.rows.push_back({{"trial", static_cast<double>(t)},
                        {"bound", s.bound},
                        {"estimate", s.estimate},
                        {"ratio", s.ratio}});
    if (!std::isfinite(s.ratio) || !std::isfinite(s.bound) || !std::isfinite(s.estimate)) {
      if (bad_trial < 0) bad_trial = t;
      continue;
    }
    if (s.estimate > opts.c_safety * s.bound && violation_trial < 0) violation_trial = t;
    max_ratio = std::max(max_ratio, s.ratio);
    sum_ratio += s.ratio;
  }
  rep.aggregate = {{"max_ratio", max_ratio}, {"mean_ratio", sum_ratio / trials}};

  rep.record("finite-values", 0.0, bad_trial < 0,
             bad_trial < 0 ? "" : trial_message("non-finite value", bad_trial, 0.0));
  rep.record("estimate-within-safety", opts.c_safety, violation_trial < 0,
             violation_trial < 0
                 ? "max est/bound = " + format_double(max_ratio)
                 : trial_message("estimate exceeds c_safety * bound", violation_trial,
                                 slots[violation_trial].ratio));

  if (abelian) {
    // bound attainment: the averaging symbol reaches est/bound = 1
    const BlockSymbol avg = BlockSymbol::averaging(model);
    const double avg_bound = bound_of(avg);
    AscentOptions ascent = opts.ascent;
    ascent.seed = mix_seed(seed, static_cast<std::uint64_t>(trials) + 7);
    const double avg_est = estimate_pq_norm(avg, p, q, ascent).value;
    const double att = avg_bound > 0.0 ? avg_est / avg_bound : 0.0;
    rep.aggregate.push_back({"attainment_ratio", att});
    rep.record("averaging-attainment", 1e-4, std::abs(att - 1.0) <= 1e-4,
               "averaging est/bound = " + format_double(att));
  }
  return rep;
}

BoundReport run_comparison(const GroupModel& su2, int trials, double p, double q,
                           std::uint64_t seed, const RunOptions& opts) {
  if (!su2.get_if<SU2DualTruncation>() && !su2.get_if<FiniteGroupTable>()) {
    throw InvalidArgument("run_comparison needs a compact-type model");
  }
  if (trials < 1) throw ConfigError("run_comparison needs at least one trial");

  BoundReport rep;
  rep.experiment = "comparison";
  rep.model = su2.describe();
  rep.seed = seed;
  rep.params["p"] = p;
  rep.params["q"] = q;
  rep.params["r"] = 1.0 / (1.0 / p - 1.0 / q);
  rep.params["ensemble"] = to_string(opts.ensemble);
  rep.params["trials"] = trials;

  struct Slot {
    double lhs = 0.0, rhs = 0.0;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, opts.jobs, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t) + 1);
    const BlockSymbol sigma = make_random_symbol(su2, opts.ensemble, rng);
    const ComparisonPair pair = comparison_pair(sigma, p, q);
    slots[t] = {pair.lhs, pair.rhs};
  });

  double max_excess = -kInf;
  int violation_trial = -1, bad_trial = -1;
  for (int t = 0; t < trials; ++t) {
    const Slot& s = slots[t];
    rep.rows.push_back({{"trial", static_cast<double>(t)},
                        {"lhs_weak_norm", s.lhs},
                        {"rhs_functional", s.rhs},
                        {"slack", s.rhs - s.lhs}});
    if (!std::isfinite(s.lhs) || !std::isfinite(s.rhs)) {
      if (bad_trial < 0) bad_trial = t;
      continue;
    }
    max_excess = std::max(max_excess, s.lhs - s.rhs);
    if (s.lhs > s.rhs + 1e-12 && violation_trial < 0) violation_trial = t;
  }

  const int blocks = static_cast<int>(su2.dual_measure().size());
  const ComparisonPair proj =
      comparison_pair(BlockSymbol::projection(su2, std::min(3, blocks)), p, q);

  rep.aggregate = {{"max_lhs_excess", max_excess},
                   {"projection_lhs", proj.lhs},
                   {"projection_rhs", proj.rhs}};
  rep.record("finite-values", 0.0, bad_trial < 0,
             bad_trial < 0 ? "" : trial_message("non-finite value", bad_trial, 0.0));
  rep.record("lhs-le-rhs", 1e-12, violation_trial < 0,
             violation_trial < 0
                 ? "max lhs - rhs = " + format_double(max_excess)
                 : trial_message("comparison violated", violation_trial,
                                 slots[violation_trial].lhs - slots[violation_trial].rhs));
  rep.record("projection-equality", 1e-12, std::abs(proj.lhs - proj.rhs) <= 1e-12,
             "projection lhs - rhs = " + format_double(proj.lhs - proj.rhs));
  return rep;
}

BoundReport run_sobolev_trend(const EigenvalueSequence& lambda, double s, double p, double q,
                              const std::vector<std::size_t>& k_schedule) {
  if (k_schedule.size() < 2) {
    throw ConfigError("sobolev trend needs a K schedule with at least two entries");
  }
  for (std::size_t i = 1; i < k_schedule.size(); ++i) {
    if (k_schedule[i] <= k_schedule[i - 1]) {
      throw ConfigError("sobolev trend K schedule must be strictly increasing");
    }
  }
  if (k_schedule.back() > lambda.size()) {
    throw ConfigError("insufficient eigenvalues for the requested K schedule");
  }
  if (!(s > 0.0)) throw InvalidArgument("sobolev trend needs s > 0");

  const PhiFunction phi = PhiFunction::reciprocal(s);

  BoundReport rep;
  rep.experiment = "sobolev";
  rep.seed = 0;
  rep.model = "eigenvalue sequence (" + std::to_string(lambda.size()) + " values)";
  rep.params["p"] = p;
  rep.params["q"] = q;
  rep.params["s"] = s;
  rep.params["phi"] = phi.describe();

  std::vector<double> sups;
  for (std::size_t K : k_schedule) {
    const double S = sobolev_sup(lambda, phi, p, q, K);
    sups.push_back(S);
    rep.rows.push_back({{"K", static_cast<double>(K)}, {"sup", S}});
  }
  const double prev = sups[sups.size() - 2];
  const double last = sups.back();
  const double increment = prev > 0.0 ? (last - prev) / prev : kInf;
  const char* label = increment < 0.05 ? "stabilizing" : (increment > 0.2 ? "growing"
                                                                          : "indeterminate");
  rep.params["classification"] = label;
  rep.aggregate = {{"last_increment", increment},
                   {"final_sup", last}};

  bool finite = std::isfinite(increment);
  for (double S : sups) finite = finite && std::isfinite(S);
  rep.record("finite-values", 0.0, finite, finite ? "" : "non-finite sup along the schedule");

  if (lambda.hausdorff_dimension()) {
    const double threshold = *lambda.hausdorff_dimension() * (1.0 / p - 1.0 / q);
    const double margin = 0.1;
    rep.params["threshold"] = threshold;
    rep.params["margin"] = margin;
    if (s >= threshold + margin - 1e-12) {
      rep.record("classified-stabilizing", 0.05, std::string(label) == "stabilizing",
                 "increment = " + format_double(increment));
    } else if (s <= threshold - margin + 1e-12) {
      rep.record("classified-growing", 0.2, std::string(label) == "growing",
                 "increment = " + format_double(increment));
    } else {
      rep.params["boundary_case"] = true;
    }
  }
  return rep;
}

}  // namespace fmbound
