#include "fmbound/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace fmbound {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Unnormalized d-dimensional DFT of an M^d row-major array.
// sign = FFTW_FORWARD sums exp(-2 pi i m.j/M), FFTW_BACKWARD exp(+2 pi i m.j/M).
Eigen::VectorXcd dft(const TorusModel& torus, const Eigen::VectorXcd& in, int sign) {
  Eigen::VectorXcd work = in;
  Eigen::VectorXcd out(in.size());
  std::vector<int> dims(torus.dimension(), torus.grid_size());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft(torus.dimension(), dims.data(),
                         reinterpret_cast<fftw_complex*>(work.data()),
                         reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int torus_bin(const TorusModel& torus, const std::vector<int>& m) {
  std::vector<int> coords(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    coords[i] = (m[i] % torus.grid_size() + torus.grid_size()) % torus.grid_size();
  }
  return torus.grid_index(coords);
}

void require_same_model(const GroupModel& a, const GroupModel& b, const char* what) {
  if (!a.same_structure(b)) {
    throw InvalidArgument(std::string(what) + ": model mismatch (" + a.describe() + " vs " +
                          b.describe() + ")");
  }
}

int trivial_block_index(const GroupModel& model) {
  if (model.get_if<FiniteAbelianGroup>()) return 0;
  if (const auto* torus = model.get_if<TorusModel>()) {
    return torus->frequency_index(std::vector<int>(torus->dimension(), 0));
  }
  if (const auto* table = model.get_if<FiniteGroupTable>()) {
    const auto& irreps = table->irreps();
    for (std::size_t i = 0; i < irreps.size(); ++i) {
      if (irreps[i].dim != 1) continue;
      bool all_one = true;
      for (const auto& m : irreps[i].matrices) {
        if (std::abs(m(0, 0) - std::complex<double>(1.0, 0.0)) > 1e-12) {
          all_one = false;
          break;
        }
      }
      if (all_one) return static_cast<int>(i);
    }
    throw InvalidArgument("group table has no trivial irrep");
  }
  if (model.get_if<SU2DualTruncation>()) return 0;
  const auto* grid = model.get_if<EuclideanGridDual>();
  // the origin cell
  int index = 0;
  const int kmax = (grid->points_per_axis() - 1) / 2;
  for (int i = 0; i < grid->dimension(); ++i) index = index * grid->points_per_axis() + kmax;
  return index;
}

}  // namespace

// ---------------------------------------------------------- GroupFunction

GroupFunction::GroupFunction(GroupModel model, Eigen::VectorXcd values)
    : model_(std::move(model)), values_(std::move(values)) {
  if (!model_.has_domain()) {
    throw InvalidArgument("unsupported model for pointwise functions: " + model_.describe());
  }
  if (static_cast<std::size_t>(values_.size()) != model_.domain_size()) {
    throw InvalidArgument("function length does not match the model domain size");
  }
}

GroupFunction GroupFunction::zero(const GroupModel& model) {
  return GroupFunction(model, Eigen::VectorXcd::Zero(model.domain_size()));
}

GroupFunction GroupFunction::delta(const GroupModel& model) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(model.domain_size());
  int at = 0;
  if (const auto* table = model.get_if<FiniteGroupTable>()) at = table->identity();
  v(at) = 1.0;
  return GroupFunction(model, std::move(v));
}

// ------------------------------------------------------------ BlockSymbol

BlockSymbol::BlockSymbol(GroupModel model, std::vector<SymbolBlock> blocks)
    : model_(std::move(model)), blocks_(std::move(blocks)) {
  const auto dual = model_.dual_measure();
  if (blocks_.size() != dual.size()) {
    throw InvalidArgument("symbol block count does not match the model dual");
  }
  for (std::size_t i = 0; i < dual.size(); ++i) {
    if (blocks_[i].label != dual[i].label || blocks_[i].dim != dual[i].dim) {
      throw InvalidArgument("symbol block '" + blocks_[i].label +
                            "' does not match dual block '" + dual[i].label + "'");
    }
    if (blocks_[i].matrix.rows() != blocks_[i].dim ||
        blocks_[i].matrix.cols() != blocks_[i].dim) {
      throw InvalidArgument("symbol block '" + blocks_[i].label + "' matrix is mis-sized");
    }
  }
}

BlockSymbol BlockSymbol::identity(const GroupModel& model) {
  std::vector<SymbolBlock> blocks;
  for (const DualBlock& b : model.dual_measure()) {
    blocks.push_back({b.label, b.dim, Eigen::MatrixXcd::Identity(b.dim, b.dim)});
  }
  return BlockSymbol(model, std::move(blocks));
}

BlockSymbol BlockSymbol::zero(const GroupModel& model) {
  std::vector<SymbolBlock> blocks;
  for (const DualBlock& b : model.dual_measure()) {
    blocks.push_back({b.label, b.dim, Eigen::MatrixXcd::Zero(b.dim, b.dim)});
  }
  return BlockSymbol(model, std::move(blocks));
}

BlockSymbol BlockSymbol::scalar_blocks(const GroupModel& model,
                                       const std::vector<std::complex<double>>& values) {
  const auto dual = model.dual_measure();
  if (values.size() != dual.size()) {
    throw InvalidArgument("scalar symbol needs one value per dual block");
  }
  std::vector<SymbolBlock> blocks;
  for (std::size_t i = 0; i < dual.size(); ++i) {
    blocks.push_back({dual[i].label, dual[i].dim,
                      values[i] * Eigen::MatrixXcd::Identity(dual[i].dim, dual[i].dim)});
  }
  return BlockSymbol(model, std::move(blocks));
}

BlockSymbol BlockSymbol::projection(const GroupModel& model, int leading_blocks) {
  const auto dual = model.dual_measure();
  std::vector<SymbolBlock> blocks;
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const bool on = static_cast<int>(i) < leading_blocks;
    blocks.push_back({dual[i].label, dual[i].dim,
                      on ? Eigen::MatrixXcd::Identity(dual[i].dim, dual[i].dim).eval()
                         : Eigen::MatrixXcd::Zero(dual[i].dim, dual[i].dim).eval()});
  }
  return BlockSymbol(model, std::move(blocks));
}

BlockSymbol BlockSymbol::averaging(const GroupModel& model) {
  const int trivial = trivial_block_index(model);
  const auto dual = model.dual_measure();
  std::vector<SymbolBlock> blocks;
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const bool on = static_cast<int>(i) == trivial;
    blocks.push_back({dual[i].label, dual[i].dim,
                      on ? Eigen::MatrixXcd::Identity(dual[i].dim, dual[i].dim).eval()
                         : Eigen::MatrixXcd::Zero(dual[i].dim, dual[i].dim).eval()});
  }
  return BlockSymbol(model, std::move(blocks));
}

BlockSymbol BlockSymbol::scaled(std::complex<double> factor) const {
  std::vector<SymbolBlock> blocks = blocks_;
  for (SymbolBlock& b : blocks) b.matrix *= factor;
  return BlockSymbol(model_, std::move(blocks));
}

// ------------------------------------------------------------- transforms

BlockSymbol fourier_transform(const GroupFunction& f) {
  const GroupModel& model = f.model();
  const auto dual = model.dual_measure();
  std::vector<SymbolBlock> blocks;
  blocks.reserve(dual.size());

  if (const auto* g = model.get_if<FiniteAbelianGroup>()) {
    for (int chi = 0; chi < g->order(); ++chi) {
      std::complex<double> sum = 0.0;
      for (int x = 0; x < g->order(); ++x) sum += f.values()(x) * g->character(chi, x);
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = sum;
      blocks.push_back({dual[chi].label, 1, std::move(m)});
    }
    return BlockSymbol(model, std::move(blocks));
  }
  if (const auto* g = model.get_if<FiniteGroupTable>()) {
    for (std::size_t i = 0; i < g->irreps().size(); ++i) {
      const Irrep& pi = g->irreps()[i];
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(pi.dim, pi.dim);
      for (int x = 0; x < g->order(); ++x) m += f.values()(x) * pi.matrices[x];
      blocks.push_back({dual[i].label, pi.dim, std::move(m)});
    }
    return BlockSymbol(model, std::move(blocks));
  }
  if (const auto* g = model.get_if<TorusModel>()) {
    // f_hat(m) = (1/M^d) sum_j f(j/M) exp(+2 pi i m.j/M); frequencies beyond
    // the truncation are discarded (band-limitation enforced).
    const Eigen::VectorXcd coeffs =
        dft(*g, f.values(), FFTW_BACKWARD) / static_cast<double>(g->grid_count());
    for (int i = 0; i < g->frequency_count(); ++i) {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = coeffs(torus_bin(*g, g->frequency(i)));
      blocks.push_back({dual[i].label, 1, std::move(m)});
    }
    return BlockSymbol(model, std::move(blocks));
  }
  throw InvalidArgument("unsupported model for fourier_transform: " + model.describe());
}

GroupFunction inverse_transform(const BlockSymbol& sigma) {
  const GroupModel& model = sigma.model();

  if (const auto* g = model.get_if<FiniteAbelianGroup>()) {
    const double w = 1.0 / static_cast<double>(g->order());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g->order());
    for (int x = 0; x < g->order(); ++x) {
      std::complex<double> sum = 0.0;
      for (int chi = 0; chi < g->order(); ++chi) {
        sum += sigma.blocks()[chi].matrix(0, 0) * std::conj(g->character(chi, x));
      }
      out(x) = sum * w;
    }
    return GroupFunction(model, std::move(out));
  }
  if (const auto* g = model.get_if<FiniteGroupTable>()) {
    const int n = g->order();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int x = 0; x < n; ++x) {
      std::complex<double> sum = 0.0;
      for (std::size_t i = 0; i < g->irreps().size(); ++i) {
        const Irrep& pi = g->irreps()[i];
        const double w = static_cast<double>(pi.dim) / n;
        sum += w * (sigma.blocks()[i].matrix * pi.matrices[x].adjoint()).trace();
      }
      out(x) = sum;
    }
    return GroupFunction(model, std::move(out));
  }
  if (const auto* g = model.get_if<TorusModel>()) {
    // f(j/M) = sum_m f_hat(m) exp(-2 pi i m.j/M)
    Eigen::VectorXcd bins = Eigen::VectorXcd::Zero(g->grid_count());
    for (int i = 0; i < g->frequency_count(); ++i) {
      bins(torus_bin(*g, g->frequency(i))) = sigma.blocks()[i].matrix(0, 0);
    }
    return GroupFunction(model, dft(*g, bins, FFTW_FORWARD));
  }
  throw InvalidArgument("unsupported model for inverse_transform: " + model.describe());
}

Eigen::MatrixXcd convolution_matrix(const GroupFunction& f) {
  const GroupModel& model = f.model();
  if (const auto* g = model.get_if<FiniteAbelianGroup>()) {
    const int n = g->order();
    Eigen::MatrixXcd m(n, n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) m(x, y) = f.values()(g->add(x, g->negate(y)));
    }
    return m;
  }
  if (const auto* g = model.get_if<FiniteGroupTable>()) {
    const int n = g->order();
    Eigen::MatrixXcd m(n, n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) m(x, y) = f.values()(g->multiply(x, g->inverse(y)));
    }
    return m;
  }
  throw InvalidArgument("unsupported model for convolution_matrix (finite groups only): " +
                        model.describe());
}

GroupFunction apply_multiplier(const BlockSymbol& sigma, const GroupFunction& f) {
  require_same_model(sigma.model(), f.model(), "apply_multiplier");
  BlockSymbol fhat = fourier_transform(f);
  for (std::size_t i = 0; i < fhat.blocks().size(); ++i) {
    fhat.blocks()[i].matrix = sigma.blocks()[i].matrix * fhat.blocks()[i].matrix;
  }
  return inverse_transform(fhat);
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& h) {
  require_same_model(f.model(), h.model(), "convolve");
  const GroupModel& model = f.model();
  if (const auto* g = model.get_if<FiniteAbelianGroup>()) {
    const int n = g->order();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int x = 0; x < n; ++x) {
      std::complex<double> sum = 0.0;
      for (int y = 0; y < n; ++y) sum += f.values()(y) * h.values()(g->add(g->negate(y), x));
      out(x) = sum;
    }
    return GroupFunction(model, std::move(out));
  }
  if (const auto* g = model.get_if<FiniteGroupTable>()) {
    const int n = g->order();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int x = 0; x < n; ++x) {
      std::complex<double> sum = 0.0;
      for (int y = 0; y < n; ++y) {
        sum += f.values()(y) * h.values()(g->multiply(g->inverse(y), x));
      }
      out(x) = sum;
    }
    return GroupFunction(model, std::move(out));
  }
  if (model.get_if<TorusModel>()) {
    BlockSymbol fh = fourier_transform(f);
    const BlockSymbol hh = fourier_transform(h);
    for (std::size_t i = 0; i < fh.blocks().size(); ++i) {
      fh.blocks()[i].matrix = fh.blocks()[i].matrix * hh.blocks()[i].matrix;
    }
    return inverse_transform(fh);
  }
  throw InvalidArgument("unsupported model for convolve: " + model.describe());
}

GroupFunction translate_right(const GroupFunction& f, int a) {
  const GroupModel& model = f.model();
  const int n = static_cast<int>(model.domain_size());
  if (a < 0 || a >= n) throw InvalidArgument("translation element index out of range");
  Eigen::VectorXcd out(n);
  if (const auto* g = model.get_if<FiniteAbelianGroup>()) {
    for (int x = 0; x < n; ++x) out(x) = f.values()(g->add(x, a));
    return GroupFunction(model, std::move(out));
  }
  if (const auto* g = model.get_if<FiniteGroupTable>()) {
    for (int x = 0; x < n; ++x) out(x) = f.values()(g->multiply(x, a));
    return GroupFunction(model, std::move(out));
  }
  if (const auto* g = model.get_if<TorusModel>()) {
    const auto shift = g->grid_coords(a);
    for (int x = 0; x < n; ++x) {
      auto coords = g->grid_coords(x);
      for (int i = 0; i < g->dimension(); ++i) coords[i] += shift[i];
      out(x) = f.values()(g->grid_index(coords));
    }
    return GroupFunction(model, std::move(out));
  }
  throw InvalidArgument("unsupported model for translate_right: " + model.describe());
}

}  // namespace fmbound
