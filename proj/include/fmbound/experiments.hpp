#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fmbound/bound_functionals.hpp"
#include "fmbound/norm_estimation.hpp"
#include "fmbound/rng.hpp"

namespace fmbound {

enum class EnsembleKind { DiagonalUniform, DenseGaussian, Decaying, Indicator };

EnsembleKind ensemble_from_string(const std::string& name);
std::string to_string(EnsembleKind kind);

BlockSymbol make_random_symbol(const GroupModel& model, EnsembleKind kind, Rng& rng);
GroupFunction make_random_function(const GroupModel& model, Rng& rng);

struct Assertion {
  std::string name;
  double tolerance = 0.0;
  bool pass = true;
  std::string message;
};

// One per-trial record: fixed-order named numeric fields.
using ReportRow = std::vector<std::pair<std::string, double>>;

// Results of a verification run. Serializes to JSON (schema "fmbound/1") and
// to per-trial CSV rows; identical (config, seed) pairs produce byte-identical
// serializations.
struct BoundReport {
  std::string experiment;
  std::string model;
  nlohmann::ordered_json params;  // exponents, options, classifier outputs
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  ReportRow aggregate;
  std::vector<Assertion> assertions;
  bool pass = true;

  void record(const std::string& name, double tolerance, bool ok,
              const std::string& message = "");

  nlohmann::ordered_json to_json() const;
  std::string to_json_string() const;
  std::string to_csv() const;
  // Atomic write (temp file + rename). format: "json" or "csv".
  void write_file(const std::string& path, const std::string& format) const;
};

struct RunOptions {
  int jobs = 1;
  double c_safety = 10.0;
  AscentOptions ascent;
  EnsembleKind ensemble = EnsembleKind::DenseGaussian;
};

// p = q = 2 sharpness: the norm estimate must match sup_t mu_t to 1e-6 and
// the exact L^2 norm equals sup mu exactly.
BoundReport run_sharpness_l2(const GroupModel& model, int trials, std::uint64_t seed,
                             const RunOptions& opts = {});

// Constant-1 Hausdorff-Young endpoint: lorentz_norm(mu(L_f), p', p') <= ||f||_p,
// with the delta saturation witness recorded.
BoundReport run_hausdorff_young(const GroupModel& model, double p, int trials,
                                std::uint64_t seed, const RunOptions& opts = {});

// Hausdorff-Young-Paley family: ratios lhs / (M_phi^(1/b-1/p') ||f||_p),
// asserted <= c_safety, and <= 1 + 1e-10 at the b = p' endpoint.
BoundReport run_hyp(const GroupModel& model, const PhiFunction& phi, double p,
                    double b, int trials, std::uint64_t seed,
                    const RunOptions& opts = {});

// Multiplier bound: estimate <= c_safety * level-set (abelian) or compact d^2
// functional; on abelian models also records the averaging-symbol attainment
// case where estimate/bound = 1.
BoundReport run_multiplier_verification(const GroupModel& model, EnsembleKind ensemble,
                                        double p, double q, int trials,
                                        std::uint64_t seed, const RunOptions& opts = {});

// Weak-norm vs d^2 functional comparison on a truncated SU(2) dual, with the
// projection-symbol equality case.
BoundReport run_comparison(const GroupModel& su2, int trials, double p, double q,
                           std::uint64_t seed, const RunOptions& opts = {});

// Sobolev threshold trend: computes sup_k k^(1/p-1/q) lambda_k^(-s) along the
// K schedule and classifies the last-step relative increment as "stabilizing"
// (< 0.05), "growing" (> 0.2) or "indeterminate". When the sequence declares
// a dimension Q, asserts the classification on the margin-0.1 sides of the
// threshold s* = Q (1/p - 1/q).
BoundReport run_sobolev_trend(const EigenvalueSequence& lambda, double s, double p,
                              double q, const std::vector<std::size_t>& k_schedule);

}  // namespace fmbound
