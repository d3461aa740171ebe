#include "fmbound/norm_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "fmbound/rng.hpp"

namespace fmbound {

namespace {

double weighted_lp(const Eigen::VectorXcd& v, double p, double w) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v(i)), p);
  return std::pow(w * sum, 1.0 / p);
}

// Duality map J_r: z -> |z|^(r-1) * phase(z), 0 -> 0. The input is rescaled
// by its max modulus first; the overall positive factor is irrelevant because
// every iterate gets renormalized.
Eigen::VectorXcd duality_map(const Eigen::VectorXcd& v, double r) {
  const double m = v.cwiseAbs().maxCoeff();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  if (m <= 0.0) return out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > 0.0) out(i) = std::pow(a / m, r - 1.0) * (v(i) / a);
  }
  return out;
}

Eigen::VectorXcd random_start(Eigen::Index n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

struct RestartResult {
  double ratio = 0.0;
  bool converged = false;
  int iterations = 0;
  Eigen::VectorXcd argmax;
};

}  // namespace

double lp_norm(const GroupFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("lp_norm needs 1 <= p < inf");
  return weighted_lp(f.values(), p, f.model().haar_point_weight());
}

double exact_l2_norm(const BlockSymbol& sigma) {
  double best = 0.0;
  for (const SymbolBlock& block : sigma.blocks()) {
    if (!block.matrix.allFinite()) {
      throw NumericalError("symbol block '" + block.label + "' has non-finite entries");
    }
    if (block.dim == 1) {
      best = std::max(best, std::abs(block.matrix(0, 0)));
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block.matrix);
      best = std::max(best, svd.singularValues()(0));
    }
  }
  return best;
}

BlockSymbol adjoint_symbol(const BlockSymbol& sigma) {
  std::vector<SymbolBlock> blocks = sigma.blocks();
  for (SymbolBlock& b : blocks) b.matrix = b.matrix.adjoint().eval();
  return BlockSymbol(sigma.model(), std::move(blocks));
}

PqNormEstimate estimate_pq_norm(const BlockSymbol& sigma, double p, double q,
                                const AscentOptions& opts) {
  if (!(p > 1.0) || !(p <= 2.0) || !(q >= 2.0) || !std::isfinite(q)) {
    throw InvalidArgument("estimate_pq_norm needs 1 < p <= 2 <= q < inf");
  }
  if (opts.restarts < 1 || opts.max_iterations < 1 || !(opts.tolerance > 0.0)) {
    throw InvalidArgument("ascent options need positive counts and tolerance");
  }
  const GroupModel& model = sigma.model();
  const Eigen::Index n = static_cast<Eigen::Index>(model.domain_size());
  const double w = model.haar_point_weight();
  const double pprime = p / (p - 1.0);
  const BlockSymbol adj = adjoint_symbol(sigma);

  auto apply = [&](const BlockSymbol& s, const Eigen::VectorXcd& x) {
    return apply_multiplier(s, GroupFunction(model, x)).values();
  };

  const bool is_l2 = p == 2.0 && q == 2.0;

  auto run_boyd = [&](Rng& rng) {
    RestartResult res;
    Eigen::VectorXcd f = random_start(n, rng);
    double nf = weighted_lp(f, p, w);
    if (nf <= 0.0) return res;
    f /= nf;
    double prev = -1.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
      res.iterations = it + 1;
      const Eigen::VectorXcd g = apply(sigma, f);
      const double ratio = weighted_lp(g, q, w);
      if (ratio > res.ratio) {
        res.ratio = ratio;
        res.argmax = f;
      }
      if (ratio <= 0.0) break;  // f is in the kernel
      if (prev >= 0.0 && std::abs(ratio - prev) <= opts.tolerance * std::max(1.0, ratio)) {
        res.converged = true;
        break;
      }
      prev = ratio;
      const Eigen::VectorXcd u = duality_map(g, q);
      const Eigen::VectorXcd v = apply(adj, u);
      f = duality_map(v, pprime);
      nf = weighted_lp(f, p, w);
      if (nf <= 0.0) break;
      f /= nf;
    }
    return res;
  };

  // p = q = 2: the iteration is the linear power method on A*A. Accumulate
  // the (orthonormalized) Krylov iterates and take the best ratio over their
  // span, which resolves near-tied leading singular values far beyond what
  // plain iteration reaches within the budget.
  auto run_krylov = [&](Rng& rng) {
    RestartResult res;
    const int cap = static_cast<int>(std::min<Eigen::Index>(n, 128));
    std::vector<Eigen::VectorXcd> basis;
    Eigen::VectorXcd x = random_start(n, rng);
    bool saturated = false;
    while (static_cast<int>(basis.size()) < cap &&
           static_cast<int>(basis.size()) < opts.max_iterations) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) x -= b.dot(x) * b;
      }
      const double nrm = x.norm();
      if (nrm <= 1e-13) {
        saturated = true;
        break;
      }
      basis.push_back(x / nrm);
      x = apply(adj, apply(sigma, basis.back()));
    }
    res.iterations = static_cast<int>(basis.size());
    res.converged = saturated || static_cast<Eigen::Index>(basis.size()) >= n;
    if (basis.empty()) return res;

    Eigen::MatrixXcd image(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      image.col(static_cast<Eigen::Index>(j)) = apply(sigma, basis[j]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(image, Eigen::ComputeThinV);
    const Eigen::VectorXcd c = svd.matrixV().col(0);
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(n);
    for (std::size_t j = 0; j < basis.size(); ++j) f += c(static_cast<Eigen::Index>(j)) * basis[j];
    const double nf = weighted_lp(f, 2.0, w);
    if (nf <= 0.0) return res;
    f /= nf;
    res.ratio = weighted_lp(apply(sigma, f), 2.0, w);
    res.argmax = f;
    return res;
  };

  PqNormEstimate best;
  best.argmax = Eigen::VectorXcd::Zero(n);
  for (int k = 0; k < opts.restarts; ++k) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(k) + 1);
    const RestartResult res = is_l2 ? run_krylov(rng) : run_boyd(rng);
    best.iterations += res.iterations;
    if (res.ratio > best.value) {
      best.value = res.ratio;
      best.converged = res.converged;
      best.best_restart = k;
      best.argmax = res.argmax;
    }
  }
  if (best.best_restart < 0) best.converged = true;  // zero operator
  return best;
}

}  // namespace fmbound
