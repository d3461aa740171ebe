#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fmbound/group_models.hpp"

namespace fmbound {

// A complex-valued function on the model's domain: one value per group
// element (finite groups) or per grid point (torus).
class GroupFunction {
 public:
  GroupFunction(GroupModel model, Eigen::VectorXcd values);

  static GroupFunction zero(const GroupModel& model);
  // Point mass at the identity element / the grid origin. On the torus the
  // grid delta has unit value at x = 0 (a quadrature delta of mass M^-d).
  static GroupFunction delta(const GroupModel& model);

  const GroupModel& model() const { return model_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }

 private:
  GroupModel model_;
  Eigen::VectorXcd values_;
};

struct SymbolBlock {
  std::string label;
  int dim = 1;
  Eigen::MatrixXcd matrix;
};

// The multiplier datum sigma(xi): one square d_xi x d_xi block per dual
// block, in the model's dual order.
class BlockSymbol {
 public:
  BlockSymbol(GroupModel model, std::vector<SymbolBlock> blocks);

  static BlockSymbol identity(const GroupModel& model);
  static BlockSymbol zero(const GroupModel& model);
  // One scalar per block, placed as value * I_d.
  static BlockSymbol scalar_blocks(const GroupModel& model,
                                   const std::vector<std::complex<double>>& values);
  // Identity on the first `leading_blocks` dual blocks, zero beyond.
  static BlockSymbol projection(const GroupModel& model, int leading_blocks);
  // Indicator of the trivial block (averaging operator).
  static BlockSymbol averaging(const GroupModel& model);

  const GroupModel& model() const { return model_; }
  const std::vector<SymbolBlock>& blocks() const { return blocks_; }
  std::vector<SymbolBlock>& blocks() { return blocks_; }

  BlockSymbol scaled(std::complex<double> factor) const;

 private:
  GroupModel model_;
  std::vector<SymbolBlock> blocks_;
};

// Transform convention: sigma_f(pi) = sum_g f(g) pi(g) on finite groups and
// f_hat(m) = integral f(x) exp(+2 pi i m.x) dx on the torus, so that the
// transform of f*h is the blockwise product f_hat * h_hat and left
// convolution operators act by left block multiplication on the transform.
BlockSymbol fourier_transform(const GroupFunction& f);
GroupFunction inverse_transform(const BlockSymbol& sigma);

// The matrix of h -> f*h in the delta basis of a finite group:
// entry (x, y) = f(x y^-1).
Eigen::MatrixXcd convolution_matrix(const GroupFunction& f);

// inverse_transform of the blockwise product sigma(pi) * f_hat(pi).
GroupFunction apply_multiplier(const BlockSymbol& sigma, const GroupFunction& f);

// (f*h)(x) = sum_g f(g) h(g^-1 x) (finite groups; quadrature sum on the torus
// via the transform side, exact for band-limited data).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& h);

// Right translation x -> f(x a). On the torus `a` is a flat grid index.
GroupFunction translate_right(const GroupFunction& f, int a);

}  // namespace fmbound
