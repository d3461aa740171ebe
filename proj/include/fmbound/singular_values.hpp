#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fmbound/fourier.hpp"

namespace fmbound {

// Singular values with positive trace weights. Order-insensitive multiset;
// the input datum for the generalized singular number function.
class WeightedSpectrum {
 public:
  WeightedSpectrum() = default;
  explicit WeightedSpectrum(std::vector<std::pair<double, double>> entries);

  void add(double value, double weight);
  const std::vector<std::pair<double, double>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double total_weight() const;

 private:
  std::vector<std::pair<double, double>> entries_;  // (value >= 0, weight > 0)
};

// A nonincreasing right-continuous step function on [0, inf) with finite
// support: value values()[i] on [T_{i-1}, T_i) with T_i the cumulative
// widths, and 0 beyond T_n. Values are strictly decreasing, widths positive.
class StepFunction {
 public:
  StepFunction() = default;  // identically zero

  static StepFunction from_steps(const std::vector<std::pair<double, double>>& value_width);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& widths() const { return widths_; }
  // breakpoints()[i] = T_{i+1} = w_1 + ... + w_{i+1}
  const std::vector<double>& breakpoints() const { return breaks_; }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double total_width() const { return breaks_.empty() ? 0.0 : breaks_.back(); }

  double value_at(double t) const;  // right-continuous evaluation, 0 beyond
  double sup() const { return values_.empty() ? 0.0 : values_.front(); }

  StepFunction scaled(double c) const;  // c > 0: scales values, keeps widths

 private:
  std::vector<double> values_;
  std::vector<double> widths_;
  std::vector<double> breaks_;
};

// Values closer than this (relatively) after an SVD are treated as one
// spectral atom when building the step function.
inline constexpr double kTieMergeRelTol = 1e-12;

// t -> inf{ lambda >= 0 : distribution(sp, lambda) <= t }, realized exactly:
// sort descending, merge ties, drop zeros (they coincide with the tail).
StepFunction mu_from_spectrum(const WeightedSpectrum& spectrum);

// Total weight of spectrum entries strictly greater than lambda.
double distribution(const WeightedSpectrum& spectrum, double lambda);

// Per-block singular values; each of a block's d singular values carries that
// block's trace weight.
WeightedSpectrum spectrum_of_symbol(const BlockSymbol& sigma);

// ( integral (t^{1/p} mu_t)^q dt/t )^{1/q}, closed-form piecewise evaluation;
// for q = infinity, max_i values[i] * T_i^{1/p}. Empty step function -> 0.
double lorentz_norm(const StepFunction& mu, double p, double q);

// lorentz_norm(mu, r, infinity); accepts any r > 0.
double weak_norm(const StepFunction& mu, double r);

}  // namespace fmbound
