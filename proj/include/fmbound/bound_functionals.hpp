#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmbound/singular_values.hpp"

namespace fmbound {

// |sigma| values with positive measure weights: the scalar-symbol datum for
// abelian duals and the Euclidean dual grid.
struct ScalarSymbolData {
  std::vector<std::pair<double, double>> entries;  // (value >= 0, weight > 0)
};

// Extracts (|sigma(xi)|, dual weight) from a symbol whose blocks are all
// scalar (abelian, torus, Euclidean grid models).
ScalarSymbolData scalar_symbol_data(const BlockSymbol& sigma);

// A positive weight function on [0, inf): closed forms (power decay,
// reciprocal power, indicator of [0, T]) or an explicit nonincreasing step
// function.
class PhiFunction {
 public:
  enum class Kind { Power, Reciprocal, Indicator, Step };

  static PhiFunction power(double alpha);       // (1+t)^(-alpha)
  static PhiFunction reciprocal(double alpha);  // t^(-alpha)
  static PhiFunction indicator(double T);       // 1 on [0, T], 0 beyond
  static PhiFunction step(StepFunction phi);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double upper() const { return upper_; }
  const StepFunction& steps() const { return steps_; }

  double operator()(double t) const;  // pointwise evaluation, t >= 0

  // Exact integral of phi(t)^beta over [x, y], 0 <= x <= y, beta >= 0.
  // May return +infinity (non-integrable reciprocal powers at 0).
  double integral_power(double x, double y, double beta) const;

  std::string describe() const;

 private:
  PhiFunction(Kind kind, double alpha, double upper, StepFunction steps);

  Kind kind_;
  double alpha_ = 0.0;
  double upper_ = 0.0;
  StepFunction steps_;
};

// M_phi = sup_{s>0} s * |{t : phi(t) >= s}| as an exact closed form;
// +infinity is an explicit sentinel value, never an exception.
double m_phi(const PhiFunction& phi);

// sup over the distinct positive values s of
//   s * ( sum of weights of entries with value >= s )^(1/p - 1/q),
// for 1 < p <= 2 <= q < inf. At p = q the exponent-0 convention on nonempty
// level sets degenerates the functional to the sup of the values.
double level_set_functional(const ScalarSymbolData& data, double p, double q);

// Same shape with block operator norms as values and d_xi^2 as weights;
// requires a compact-type model (finite nonabelian table or SU(2) dual).
double compact_symbol_functional(const BlockSymbol& sigma, double p, double q);

struct HypSides {
  double lhs = 0.0;         // ( integral (mu_t(L_f) phi(t)^(1/b-1/p'))^b dt )^(1/b)
  double rhs_factor = 0.0;  // M_phi^(1/b - 1/p')
  double f_lp_norm = 0.0;   // ||f||_p; the full right side is rhs_factor * f_lp_norm
};

// Both sides of the Hausdorff-Young-Paley inequality for 1 < p <= b <= p'.
// At b = p' the exponent-0 factors are eliminated and the left side is
// exactly lorentz_norm(mu, p', p').
HypSides hyp_sides(const GroupFunction& f, const PhiFunction& phi, double p, double b);

// Nondecreasing positive eigenvalues lambda_1 <= lambda_2 <= ..., optionally
// carrying a declared growth dimension Q (counting function N(l) ~ l^Q).
class EigenvalueSequence {
 public:
  explicit EigenvalueSequence(std::vector<double> values,
                              std::optional<double> hausdorff_dimension = {});

  const std::vector<double>& values() const { return values_; }
  std::optional<double> hausdorff_dimension() const { return dimension_; }
  std::size_t size() const { return values_.size(); }

  // lambda_k = k^(1/Q), k = 1..count.
  static EigenvalueSequence synthetic_power_law(double Q, std::size_t count);
  // Sorted values of sqrt(1 + |m|^2) over the integer lattice Z^d
  // (the lattice spectrum of sqrt(1 - Laplacian) on the torus).
  static EigenvalueSequence torus_lattice(int dimension, std::size_t count);
  // One value per line.
  static EigenvalueSequence from_csv(const std::string& path,
                                     std::optional<double> hausdorff_dimension = {});

 private:
  std::vector<double> values_;
  std::optional<double> dimension_;
};

// max_{1 <= k <= K} k^(1/p - 1/q) * phi(lambda_k)
double sobolev_sup(const EigenvalueSequence& lambda, const PhiFunction& phi,
                   double p, double q, std::size_t K);

// #{ k <= K_max : lambda_k <= level }
std::size_t counting_function(const EigenvalueSequence& lambda, double level);

struct ComparisonPair {
  double lhs = 0.0;  // weak Lorentz norm of mu at 1/r = 1/p - 1/q
  double rhs = 0.0;  // compact d^2 level-set functional
};

// The weak-norm vs d^2-functional comparison on a compact-type model;
// requires p != q.
ComparisonPair comparison_pair(const BlockSymbol& sigma, double p, double q);

}  // namespace fmbound
