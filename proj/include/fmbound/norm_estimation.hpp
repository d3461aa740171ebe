#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "fmbound/fourier.hpp"

namespace fmbound {

struct AscentOptions {
  int restarts = 20;
  int max_iterations = 500;
  double tolerance = 1e-8;  // relative stall tolerance on the ratio
  std::uint64_t seed = 0;
};

struct PqNormEstimate {
  double value = 0.0;  // best achieved ratio; a lower bound of the true norm
  bool converged = false;
  int iterations = 0;  // total iterations across restarts
  int best_restart = -1;
  Eigen::VectorXcd argmax;  // maximizing input, normalized in L^p
};

// (sum |f|^p * haar weight)^(1/p); weight is 1 per point on finite groups
// and M^-d per sample on the torus grid.
double lp_norm(const GroupFunction& f, double p);

// ||A||_{2->2} = the largest singular value over all blocks; equals the sup
// of the singular number function.
double exact_l2_norm(const BlockSymbol& sigma);

// Blockwise conjugate transpose; the adjoint multiplier for the L^2 pairing.
BlockSymbol adjoint_symbol(const BlockSymbol& sigma);

// Lower-bound estimate of ||A||_{L^p -> L^q}, 1 < p <= 2 <= q < inf, by a
// Boyd-type nonlinear power iteration: alternately apply the q-duality map to
// Af, pull back through the adjoint, and renormalize through the p-duality
// map. Seeded random restarts; deterministic for a fixed seed. At p = q = 2
// the iteration is linear and the achieved ratio is additionally maximized
// over the accumulated Krylov subspace, which is exact on desk-scale models.
// The returned value is always an achieved Rayleigh ratio, hence a valid
// lower bound.
PqNormEstimate estimate_pq_norm(const BlockSymbol& sigma, double p, double q,
                                const AscentOptions& opts = {});

}  // namespace fmbound
