#include "fmbound/bound_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "fmbound/norm_estimation.hpp"

namespace fmbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_pq_range(double p, double q, const char* what) {
  if (!(p > 1.0) || !(p <= 2.0) || !(q >= 2.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << what << " needs 1 < p <= 2 <= q < inf (got p=" << p << ", q=" << q << ")";
    throw InvalidArgument(msg.str());
  }
}

bool exponent_is_zero(double p, double q) { return std::abs(1.0 / p - 1.0 / q) < 1e-15; }

// sup over the distinct positive values s of s * (cumulative weight)^eta;
// the sup over continuous s is attained on this candidate set because the
// cumulative weight is constant between consecutive values.
double level_set_sup(std::vector<std::pair<double, double>> entries, double eta) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    cum += entries[i].second;
    if (entries[i].first <= 0.0) break;
    const bool value_run_ends = i + 1 == entries.size() || entries[i + 1].first < entries[i].first;
    if (value_run_ends) {
      best = std::max(best, entries[i].first * std::pow(cum, eta));
    }
  }
  return best;
}

double max_positive_value(const std::vector<std::pair<double, double>>& entries) {
  double best = 0.0;
  for (const auto& [v, w] : entries) best = std::max(best, v);
  return best;
}

}  // namespace

// ---------------------------------------------------------- scalar symbols

ScalarSymbolData scalar_symbol_data(const BlockSymbol& sigma) {
  const auto dual = sigma.model().dual_measure();
  ScalarSymbolData data;
  data.entries.reserve(sigma.blocks().size());
  for (std::size_t i = 0; i < sigma.blocks().size(); ++i) {
    const SymbolBlock& block = sigma.blocks()[i];
    if (block.dim != 1) {
      throw InvalidArgument("scalar symbol data needs scalar blocks; block '" + block.label +
                            "' has dimension " + std::to_string(block.dim));
    }
    data.entries.emplace_back(std::abs(block.matrix(0, 0)), dual[i].weight);
  }
  return data;
}

// ------------------------------------------------------------- PhiFunction

PhiFunction::PhiFunction(Kind kind, double alpha, double upper, StepFunction steps)
    : kind_(kind), alpha_(alpha), upper_(upper), steps_(std::move(steps)) {}

PhiFunction PhiFunction::power(double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("power phi needs a finite exponent");
  return PhiFunction(Kind::Power, alpha, 0.0, {});
}

PhiFunction PhiFunction::reciprocal(double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("reciprocal phi needs a finite exponent");
  return PhiFunction(Kind::Reciprocal, alpha, 0.0, {});
}

PhiFunction PhiFunction::indicator(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("indicator phi needs T > 0");
  return PhiFunction(Kind::Indicator, 0.0, T, {});
}

PhiFunction PhiFunction::step(StepFunction phi) {
  return PhiFunction(Kind::Step, 0.0, 0.0, std::move(phi));
}

double PhiFunction::operator()(double t) const {
  if (t < 0.0) throw InvalidArgument("phi is defined on t >= 0");
  switch (kind_) {
    case Kind::Power:
      return std::pow(1.0 + t, -alpha_);
    case Kind::Reciprocal:
      if (t == 0.0) return alpha_ > 0.0 ? kInf : (alpha_ == 0.0 ? 1.0 : 0.0);
      return std::pow(t, -alpha_);
    case Kind::Indicator:
      return t <= upper_ ? 1.0 : 0.0;
    case Kind::Step:
      return steps_.value_at(t);
  }
  return 0.0;
}

double PhiFunction::integral_power(double x, double y, double beta) const {
  if (!(x >= 0.0) || !(y >= x)) throw InvalidArgument("integral_power needs 0 <= x <= y");
  if (!(beta >= 0.0)) throw InvalidArgument("integral_power needs beta >= 0");
  if (y == x) return 0.0;
  if (beta == 0.0) return y - x;

  switch (kind_) {
    case Kind::Power: {
      const double c = alpha_ * beta;
      if (c == 1.0) return std::log1p(y) - std::log1p(x);
      return (std::pow(1.0 + y, 1.0 - c) - std::pow(1.0 + x, 1.0 - c)) / (1.0 - c);
    }
    case Kind::Reciprocal: {
      const double c = alpha_ * beta;
      if (x == 0.0 && c >= 1.0) return kInf;
      if (c == 1.0) return std::log(y / x);
      const double lower = x == 0.0 ? 0.0 : std::pow(x, 1.0 - c);
      return (std::pow(y, 1.0 - c) - lower) / (1.0 - c);
    }
    case Kind::Indicator: {
      const double hi = std::min(y, upper_);
      return hi > x ? hi - x : 0.0;
    }
    case Kind::Step: {
      double acc = 0.0;
      double lo = 0.0;
      for (std::size_t i = 0; i < steps_.size(); ++i) {
        const double hi = steps_.breakpoints()[i];
        const double a = std::max(lo, x);
        const double b = std::min(hi, y);
        if (b > a) acc += std::pow(steps_.values()[i], beta) * (b - a);
        lo = hi;
        if (lo >= y) break;
      }
      return acc;
    }
  }
  return 0.0;
}

std::string PhiFunction::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Power:
      out << "(1+t)^(-" << alpha_ << ")";
      break;
    case Kind::Reciprocal:
      out << "t^(-" << alpha_ << ")";
      break;
    case Kind::Indicator:
      out << "indicator[0," << upper_ << "]";
      break;
    case Kind::Step:
      out << "step(" << steps_.size() << " pieces)";
      break;
  }
  return out.str();
}

double m_phi(const PhiFunction& phi) {
  switch (phi.kind()) {
    case PhiFunction::Kind::Power: {
      const double a = phi.alpha();
      // level set {(1+t)^-a >= s} = [0, s^(-1/a) - 1] for s <= 1; the sup of
      // s^(1-1/a) - s is attained at s = (1 - 1/a)^a for a > 1
      if (a > 1.0) return std::pow(1.0 - 1.0 / a, a - 1.0) / a;
      if (a == 1.0) return 1.0;
      return kInf;
    }
    case PhiFunction::Kind::Reciprocal:
      // s * s^(-1/a) is constant only at a = 1
      return phi.alpha() == 1.0 ? 1.0 : kInf;
    case PhiFunction::Kind::Indicator:
      return phi.upper();
    case PhiFunction::Kind::Step: {
      double best = 0.0;
      for (std::size_t i = 0; i < phi.steps().size(); ++i) {
        best = std::max(best, phi.steps().values()[i] * phi.steps().breakpoints()[i]);
      }
      return best;
    }
  }
  return kInf;
}

// -------------------------------------------------------- bound functionals

double level_set_functional(const ScalarSymbolData& data, double p, double q) {
  validate_pq_range(p, q, "level_set_functional");
  for (const auto& [v, w] : data.entries) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("scalar symbol values must be finite and >= 0");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("scalar symbol weights must be finite and > 0");
    }
  }
  if (exponent_is_zero(p, q)) return max_positive_value(data.entries);
  return level_set_sup(data.entries, 1.0 / p - 1.0 / q);
}

double compact_symbol_functional(const BlockSymbol& sigma, double p, double q) {
  validate_pq_range(p, q, "compact_symbol_functional");
  const GroupModel& model = sigma.model();
  if (!model.get_if<FiniteGroupTable>() && !model.get_if<SU2DualTruncation>()) {
    throw InvalidArgument("compact_symbol_functional needs a compact-type model, got " +
                          model.describe());
  }
  std::vector<std::pair<double, double>> entries;
  entries.reserve(sigma.blocks().size());
  for (const SymbolBlock& block : sigma.blocks()) {
    if (!block.matrix.allFinite()) {
      throw NumericalError("symbol block '" + block.label + "' has non-finite entries");
    }
    double opnorm = 0.0;
    if (block.dim == 1) {
      opnorm = std::abs(block.matrix(0, 0));
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block.matrix);
      opnorm = svd.singularValues()(0);
    }
    entries.emplace_back(opnorm, static_cast<double>(block.dim) * block.dim);
  }
  if (exponent_is_zero(p, q)) return max_positive_value(entries);
  return level_set_sup(std::move(entries), 1.0 / p - 1.0 / q);
}

HypSides hyp_sides(const GroupFunction& f, const PhiFunction& phi, double p, double b) {
  if (!f.model().is_finite_group()) {
    throw InvalidArgument("hyp_sides needs a finite group model, got " + f.model().describe());
  }
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("hyp_sides needs p > 1");
  const double pprime = p / (p - 1.0);
  if (b < p - 1e-12 || b > pprime + 1e-12) {
    std::ostringstream msg;
    msg << "hyp_sides needs p <= b <= p' (p=" << p << ", b=" << b << ", p'=" << pprime << ")";
    throw InvalidArgument(msg.str());
  }

  const StepFunction mu = mu_from_spectrum(spectrum_of_symbol(fourier_transform(f)));
  HypSides out;
  out.f_lp_norm = lp_norm(f, p);

  const double e = 1.0 / b - 1.0 / pprime;
  if (e < 1e-14) {
    // b = p': the phi factor carries exponent 0 and drops out
    out.lhs = lorentz_norm(mu, pprime, pprime);
    out.rhs_factor = 1.0;
    return out;
  }

  const double beta = e * b;
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double hi = mu.breakpoints()[i];
    acc += std::pow(mu.values()[i], b) * phi.integral_power(lo, hi, beta);
    lo = hi;
  }
  out.lhs = std::isinf(acc) ? kInf : std::pow(acc, 1.0 / b);
  const double M = m_phi(phi);
  out.rhs_factor = std::isinf(M) ? kInf : std::pow(M, e);
  return out;
}

// ------------------------------------------------------ eigenvalue sequences

EigenvalueSequence::EigenvalueSequence(std::vector<double> values,
                                       std::optional<double> hausdorff_dimension)
    : values_(std::move(values)), dimension_(hausdorff_dimension) {
  double prev = 0.0;
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("eigenvalues must be finite and positive");
    }
    if (v < prev) throw InvalidArgument("eigenvalues must be nondecreasing");
    prev = v;
  }
  if (dimension_ && !(*dimension_ > 0.0)) {
    throw InvalidArgument("declared Hausdorff dimension must be positive");
  }
}

EigenvalueSequence EigenvalueSequence::synthetic_power_law(double Q, std::size_t count) {
  if (!(Q > 0.0)) throw InvalidArgument("synthetic power law needs Q > 0");
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = std::pow(static_cast<double>(k + 1), 1.0 / Q);
  }
  return EigenvalueSequence(std::move(values), Q);
}

EigenvalueSequence EigenvalueSequence::torus_lattice(int dimension, std::size_t count) {
  if (dimension < 1 || dimension > 3) {
    throw InvalidArgument("torus lattice spectra are built for dimensions 1..3");
  }
  std::vector<double> values;
  if (dimension == 1) {
    values.reserve(count + 2);
    values.push_back(1.0);  // m = 0
    for (long long m = 1; values.size() < count; ++m) {
      const double v = std::sqrt(1.0 + static_cast<double>(m) * m);
      values.push_back(v);
      values.push_back(v);
    }
    values.resize(count);
    return EigenvalueSequence(std::move(values), 1.0);
  }
  // Choose a Euclidean radius whose closed ball certainly holds `count`
  // lattice points, enumerate the enclosing box, and keep the sorted prefix
  // (correct up to that radius).
  double radius = 1.0;
  const double ball_volume = dimension == 2 ? M_PI : 4.0 * M_PI / 3.0;
  while (ball_volume * std::pow(radius, dimension) < 1.5 * static_cast<double>(count) + 16.0) {
    radius *= 1.25;
  }
  const long long box = static_cast<long long>(std::ceil(radius));
  const double r2 = radius * radius;
  std::vector<long long> coords(dimension, -box);
  values.reserve(static_cast<std::size_t>(ball_volume * std::pow(radius, dimension) * 1.1));
  while (true) {
    double norm2 = 0.0;
    for (long long c : coords) norm2 += static_cast<double>(c) * c;
    if (norm2 <= r2) values.push_back(std::sqrt(1.0 + norm2));
    int axis = dimension - 1;
    while (axis >= 0 && coords[axis] == box) {
      coords[axis] = -box;
      --axis;
    }
    if (axis < 0) break;
    ++coords[axis];
  }
  std::sort(values.begin(), values.end());
  if (values.size() < count) {
    throw NumericalError("torus lattice enumeration produced too few eigenvalues");
  }
  values.resize(count);
  return EigenvalueSequence(std::move(values), static_cast<double>(dimension));
}

EigenvalueSequence EigenvalueSequence::from_csv(const std::string& path,
                                                std::optional<double> hausdorff_dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open eigenvalue file: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t pos = 0;
    const double v = std::stod(line, &pos);
    values.push_back(v);
  }
  return EigenvalueSequence(std::move(values), hausdorff_dimension);
}

double sobolev_sup(const EigenvalueSequence& lambda, const PhiFunction& phi, double p, double q,
                   std::size_t K) {
  if (K < 1 || K > lambda.size()) {
    throw InvalidArgument("sobolev_sup needs 1 <= K <= the stored eigenvalue count");
  }
  const double exponent = 1.0 / p - 1.0 / q;
  double best = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double term = std::pow(static_cast<double>(k), exponent) * phi(lambda.values()[k - 1]);
    best = std::max(best, term);
  }
  return best;
}

std::size_t counting_function(const EigenvalueSequence& lambda, double level) {
  const auto& v = lambda.values();
  return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), level) - v.begin());
}

ComparisonPair comparison_pair(const BlockSymbol& sigma, double p, double q) {
  validate_pq_range(p, q, "comparison_pair");
  if (exponent_is_zero(p, q)) {
    throw InvalidArgument("comparison_pair needs p != q (the weak space is undefined at p = q)");
  }
  const double r = 1.0 / (1.0 / p - 1.0 / q);
  ComparisonPair out;
  out.lhs = weak_norm(mu_from_spectrum(spectrum_of_symbol(sigma)), r);
  out.rhs = compact_symbol_functional(sigma, p, q);
  return out;
}

}  // namespace fmbound
