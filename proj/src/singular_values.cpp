#include "fmbound/singular_values.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace fmbound {

// --------------------------------------------------------- WeightedSpectrum

WeightedSpectrum::WeightedSpectrum(std::vector<std::pair<double, double>> entries) {
  entries_.reserve(entries.size());
  for (const auto& [v, w] : entries) add(v, w);
}

void WeightedSpectrum::add(double value, double weight) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("spectrum values must be finite and >= 0");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InvalidArgument("spectrum weights must be finite and > 0");
  }
  entries_.emplace_back(value, weight);
}

double WeightedSpectrum::total_weight() const {
  double total = 0.0;
  for (const auto& [v, w] : entries_) total += w;
  return total;
}

// ------------------------------------------------------------- StepFunction

StepFunction StepFunction::from_steps(const std::vector<std::pair<double, double>>& value_width) {
  StepFunction out;
  double prev = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& [v, w] : value_width) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("step values must be finite and > 0");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("step widths must be finite and > 0");
    }
    if (!(v < prev)) throw InvalidArgument("step values must be strictly decreasing");
    prev = v;
    total += w;
    out.values_.push_back(v);
    out.widths_.push_back(w);
    out.breaks_.push_back(total);
  }
  return out;
}

double StepFunction::value_at(double t) const {
  if (t < 0.0) throw InvalidArgument("step functions live on t >= 0");
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  if (it == breaks_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

StepFunction StepFunction::scaled(double c) const {
  if (!(c > 0.0)) throw InvalidArgument("step scaling factor must be > 0");
  StepFunction out = *this;
  for (double& v : out.values_) v *= c;
  return out;
}

// -------------------------------------------------------------- operations

StepFunction mu_from_spectrum(const WeightedSpectrum& spectrum) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(spectrum.size());
  for (const auto& [v, w] : spectrum.entries()) {
    if (v > 0.0) atoms.emplace_back(v, w);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<std::pair<double, double>> steps;
  for (const auto& [v, w] : atoms) {
    if (!steps.empty() && steps.back().first - v <= kTieMergeRelTol * steps.back().first) {
      steps.back().second += w;  // tie: same spectral atom
    } else {
      steps.emplace_back(v, w);
    }
  }
  return StepFunction::from_steps(steps);
}

double distribution(const WeightedSpectrum& spectrum, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("distribution level must be >= 0");
  double total = 0.0;
  for (const auto& [v, w] : spectrum.entries()) {
    if (v > lambda) total += w;
  }
  return total;
}

WeightedSpectrum spectrum_of_symbol(const BlockSymbol& sigma) {
  const auto dual = sigma.model().dual_measure();
  WeightedSpectrum spectrum;
  for (std::size_t i = 0; i < sigma.blocks().size(); ++i) {
    const SymbolBlock& block = sigma.blocks()[i];
    if (!block.matrix.allFinite()) {
      throw NumericalError("symbol block '" + block.label + "' has non-finite entries");
    }
    const double w = dual[i].weight;
    if (block.dim == 1) {
      spectrum.add(std::abs(block.matrix(0, 0)), w);
      continue;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block.matrix);
    if (svd.info() != Eigen::Success) {
      throw NumericalError("singular value iteration failed on block '" + block.label + "'");
    }
    for (int k = 0; k < svd.singularValues().size(); ++k) {
      spectrum.add(svd.singularValues()(k), w);
    }
  }
  return spectrum;
}

namespace {

// Shared kernel; exponent checks live in the public wrappers.
double lorentz_kernel(const StepFunction& mu, double p, double q) {
  if (mu.empty()) return 0.0;
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      best = std::max(best, mu.values()[i] * std::pow(mu.breakpoints()[i], 1.0 / p));
    }
    return best;
  }
  double sum = 0.0;
  double prev_pow = 0.0;  // T_0 = 0
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double cur_pow = std::pow(mu.breakpoints()[i], q / p);
    sum += std::pow(mu.values()[i], q) * (p / q) * (cur_pow - prev_pow);
    prev_pow = cur_pow;
  }
  return std::pow(sum, 1.0 / q);
}

}  // namespace

double lorentz_norm(const StepFunction& mu, double p, double q) {
  if (!(p >= 1.0)) throw InvalidArgument("lorentz_norm needs p >= 1");
  if (!(q >= 1.0)) throw InvalidArgument("lorentz_norm needs q >= 1 (or infinity)");
  return lorentz_kernel(mu, p, q);
}

double weak_norm(const StepFunction& mu, double r) {
  if (!(r > 0.0)) throw InvalidArgument("weak_norm needs r > 0");
  return lorentz_kernel(mu, r, std::numeric_limits<double>::infinity());
}

}  // namespace fmbound
