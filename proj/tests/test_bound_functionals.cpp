#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fmbound/bound_functionals.hpp"
#include "fmbound/norm_estimation.hpp"
#include "fmbound/rng.hpp"

using namespace fmbound;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("level set functional basics") {
  // one value 1 with weight 4 at exponent 1/p - 1/q = 1/2
  const double p = 4.0 / 3.0, q = 4.0;
  ScalarSymbolData one;
  one.entries = {{1.0, 4.0}};
  CHECK(level_set_functional(one, p, q) == doctest::Approx(2.0).epsilon(1e-14));

  ScalarSymbolData zero;
  zero.entries = {{0.0, 1.0}, {0.0, 2.5}};
  CHECK(level_set_functional(zero, p, q) == 0.0);
  CHECK(level_set_functional(ScalarSymbolData{}, p, q) == 0.0);

  // values 2^-|k|, k = -10..10, unit weights: the sup is at the top value
  ScalarSymbolData dyadic;
  for (int k = -10; k <= 10; ++k) dyadic.entries.emplace_back(std::pow(2.0, -std::abs(k)), 1.0);
  CHECK(level_set_functional(dyadic, p, q) == doctest::Approx(1.0).epsilon(1e-14));
  // brute-force check over the candidate levels
  double brute = 0.0;
  for (int m = 0; m <= 10; ++m) {
    brute = std::max(brute, std::pow(2.0, -m) * std::sqrt(2.0 * m + 1.0));
  }
  CHECK(brute == doctest::Approx(1.0));

  CHECK_THROWS_AS(level_set_functional(one, 1.0, 4.0), InvalidArgument);
  CHECK_THROWS_AS(level_set_functional(one, 2.5, 4.0), InvalidArgument);
  CHECK_THROWS_AS(level_set_functional(one, 1.5, 1.9), InvalidArgument);

  // p = q degenerates to the sup of the values
  ScalarSymbolData mixed;
  mixed.entries = {{0.4, 1.0}, {2.2, 0.1}, {1.0, 9.0}};
  CHECK(level_set_functional(mixed, 2.0, 2.0) == doctest::Approx(2.2));
}

TEST_CASE("level set functional equals the rearrangement weak norm on atoms") {
  Rng rng(12, 1);
  for (int rep = 0; rep < 300; ++rep) {
    ScalarSymbolData data;
    const int n = 1 + static_cast<int>(rng.uniform() * 12);
    for (int i = 0; i < n; ++i) data.entries.emplace_back(rng.uniform(0.0, 3.0), rng.uniform(0.1, 2.0));
    if (rng.uniform() < 0.4) data.entries.push_back(data.entries.front());  // force a tie
    const double p = rng.uniform(1.0 + 1e-6, 2.0);
    const double q = rng.uniform(2.0, 6.0);
    if (1.0 / p - 1.0 / q < 1e-3) continue;
    const double r = 1.0 / (1.0 / p - 1.0 / q);

    WeightedSpectrum sp;
    for (const auto& [v, w] : data.entries) {
      if (v > 0.0) sp.add(v, w);
    }
    const double lhs = level_set_functional(data, p, q);
    const double rhs = weak_norm(mu_from_spectrum(sp), r);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("compact d^2 functional") {
  const GroupModel su2 = GroupModel::su2_truncation(2);
  const double p = 1.5, q = 3.0;
  const double r = 1.0 / (1.0 / p - 1.0 / q);
  CHECK(compact_symbol_functional(BlockSymbol::identity(su2), p, q) ==
        doctest::Approx(std::pow(14.0, 1.0 / r)).epsilon(1e-14));
  CHECK(compact_symbol_functional(BlockSymbol::zero(su2), p, q) == 0.0);

  // single active block: c * d^(2/r)
  const GroupModel su2b = GroupModel::su2_truncation(4);
  BlockSymbol single = BlockSymbol::zero(su2b);
  single.blocks()[3].matrix = 0.7 * Eigen::MatrixXcd::Identity(4, 4);
  CHECK(compact_symbol_functional(single, p, q) ==
        doctest::Approx(0.7 * std::pow(16.0, 1.0 / r)).epsilon(1e-14));

  const GroupModel z4 = make_finite_abelian({4});
  CHECK_THROWS_AS(compact_symbol_functional(BlockSymbol::identity(z4), p, q), InvalidArgument);
}

TEST_CASE("functionals are positively homogeneous") {
  Rng rng(77, 1);
  const GroupModel su2 = GroupModel::su2_truncation(6);
  BlockSymbol sigma = BlockSymbol::zero(su2);
  for (SymbolBlock& b : sigma.blocks()) {
    for (int i = 0; i < b.dim; ++i) {
      for (int j = 0; j < b.dim; ++j) b.matrix(i, j) = rng.complex_normal();
    }
  }
  const double c = 3.7;
  const double base = compact_symbol_functional(sigma, 1.25, 4.0);
  const double scaled = compact_symbol_functional(sigma.scaled(c), 1.25, 4.0);
  CHECK(scaled == doctest::Approx(c * base).epsilon(1e-13));

  ScalarSymbolData data;
  for (int i = 0; i < 9; ++i) data.entries.emplace_back(rng.uniform(0.0, 2.0), rng.uniform(0.1, 1.0));
  ScalarSymbolData scaled_data = data;
  for (auto& [v, w] : scaled_data.entries) v *= c;
  CHECK(level_set_functional(scaled_data, 1.5, 3.0) ==
        doctest::Approx(c * level_set_functional(data, 1.5, 3.0)).epsilon(1e-13));
}

TEST_CASE("M_phi closed forms") {
  CHECK(m_phi(PhiFunction::reciprocal(1.0)) == doctest::Approx(1.0));
  CHECK(m_phi(PhiFunction::reciprocal(2.0)) == kInf);
  CHECK(m_phi(PhiFunction::reciprocal(0.5)) == kInf);
  CHECK(m_phi(PhiFunction::indicator(2.25)) == doctest::Approx(2.25));
  CHECK(m_phi(PhiFunction::power(1.0)) == doctest::Approx(1.0));
  CHECK(m_phi(PhiFunction::power(0.5)) == kInf);
  // alpha = 2: sup of s^(1/2) - s is 1/4 at s = 1/4
  CHECK(m_phi(PhiFunction::power(2.0)) == doctest::Approx(0.25).epsilon(1e-14));

  const PhiFunction steps =
      PhiFunction::step(StepFunction::from_steps({{3.0, 0.5}, {1.0, 4.0}}));
  // candidates: 3 * 0.5 and 1 * 4.5
  CHECK(m_phi(steps) == doctest::Approx(4.5).epsilon(1e-14));
}

TEST_CASE("phi pointwise evaluation and exact integrals") {
  const PhiFunction rec = PhiFunction::reciprocal(1.0);
  CHECK(rec(2.0) == doctest::Approx(0.5));
  CHECK(rec(0.0) == kInf);
  const PhiFunction ind = PhiFunction::indicator(1.5);
  CHECK(ind(1.5) == 1.0);
  CHECK(ind(1.6) == 0.0);
  const PhiFunction pow2 = PhiFunction::power(2.0);
  CHECK(pow2(1.0) == doctest::Approx(0.25));

  // integral of (t^-1)^(1/2) over [0, 4] = 2 sqrt(4) = 4
  CHECK(rec.integral_power(0.0, 4.0, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
  // non-integrable at zero
  CHECK(PhiFunction::reciprocal(2.0).integral_power(0.0, 1.0, 0.6) == kInf);
  // indicator truncates the window
  CHECK(ind.integral_power(1.0, 3.0, 2.0) == doctest::Approx(0.5));
  // step: piecewise sums
  const PhiFunction steps =
      PhiFunction::step(StepFunction::from_steps({{2.0, 1.0}, {1.0, 1.0}}));
  CHECK(steps.integral_power(0.5, 1.5, 1.0) == doctest::Approx(0.5 * 2.0 + 0.5 * 1.0));
  CHECK(steps.integral_power(1.5, 10.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("hyp sides: endpoint reduction and the delta witness") {
  const GroupModel z8 = make_finite_abelian({8});
  const double p = 1.5;
  const double pprime = 3.0;
  const PhiFunction phi = PhiFunction::reciprocal(1.0);

  const GroupFunction delta = GroupFunction::delta(z8);
  const HypSides at_end = hyp_sides(delta, phi, p, pprime);
  CHECK(at_end.lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_end.rhs_factor == doctest::Approx(1.0));
  CHECK(at_end.f_lp_norm == doctest::Approx(1.0));

  Rng rng(3, 1);
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v(i) = rng.complex_normal();
  const GroupFunction f(z8, v);
  const HypSides sides = hyp_sides(f, phi, p, pprime);
  const StepFunction mu = mu_from_spectrum(spectrum_of_symbol(fourier_transform(f)));
  CHECK(sides.lhs == doctest::Approx(lorentz_norm(mu, pprime, pprime)).epsilon(1e-15));
  CHECK(sides.lhs <= sides.f_lp_norm * (1.0 + 1e-10));

  const HypSides none = hyp_sides(GroupFunction::zero(z8), phi, p, 2.0);
  CHECK(none.lhs == 0.0);

  CHECK_THROWS_AS(hyp_sides(f, phi, p, 1.2), InvalidArgument);
  CHECK_THROWS_AS(hyp_sides(f, phi, p, 3.5), InvalidArgument);
}

TEST_CASE("hyp sides: Paley endpoint closed form on the delta") {
  // mu = [(1,1)], phi = 1/t, b = p: lhs^b = integral_0^1 t^(b/p'-1) dt
  const GroupModel z2 = make_finite_abelian({2});
  const double p = 1.5, b = 1.5;
  const double pprime = 3.0;
  const HypSides sides = hyp_sides(GroupFunction::delta(z2), PhiFunction::reciprocal(1.0), p, b);
  const double beta = (1.0 / b - 1.0 / pprime) * b;  // = 1 - b/p'
  const double expected = std::pow(1.0 / (1.0 - beta), 1.0 / b);
  CHECK(sides.lhs == doctest::Approx(expected).epsilon(1e-14));
  CHECK(sides.rhs_factor == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvalue sequences") {
  CHECK_THROWS_AS(EigenvalueSequence({1.0, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(EigenvalueSequence({-1.0, 0.5}), InvalidArgument);

  const EigenvalueSequence syn = EigenvalueSequence::synthetic_power_law(2.0, 100);
  CHECK(syn.size() == 100);
  CHECK(syn.values()[0] == doctest::Approx(1.0));
  CHECK(syn.values()[3] == doctest::Approx(2.0));
  CHECK(syn.hausdorff_dimension().value() == 2.0);

  const EigenvalueSequence lat1 = EigenvalueSequence::torus_lattice(1, 7);
  CHECK(lat1.values()[0] == doctest::Approx(1.0));
  CHECK(lat1.values()[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(lat1.values()[2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(lat1.values()[3] == doctest::Approx(std::sqrt(5.0)));
  CHECK(lat1.values()[5] == doctest::Approx(std::sqrt(10.0)));

  const EigenvalueSequence lat2 = EigenvalueSequence::torus_lattice(2, 25);
  CHECK(lat2.values()[0] == doctest::Approx(1.0));
  CHECK(lat2.values()[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(lat2.values()[4] == doctest::Approx(std::sqrt(2.0)));
  CHECK(lat2.values()[5] == doctest::Approx(std::sqrt(3.0)));
  CHECK(counting_function(lat2, std::sqrt(2.0)) == 5);
}

TEST_CASE("eigenvalue CSV loading") {
  const auto path = std::filesystem::temp_directory_path() / "fmbound_eigs.csv";
  {
    std::ofstream out(path);
    out << "# lattice prefix\n1.0\n1.5\n\n2.25\n";
  }
  const EigenvalueSequence seq = EigenvalueSequence::from_csv(path.string(), 2.0);
  REQUIRE(seq.size() == 3);
  CHECK(seq.values()[1] == 1.5);
  CHECK(seq.hausdorff_dimension().value() == 2.0);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(EigenvalueSequence::from_csv("/nonexistent.csv"), ConfigError);
}

TEST_CASE("sobolev sup and counting function") {
  const EigenvalueSequence syn = EigenvalueSequence::synthetic_power_law(3.0, 1000);
  // p = q: the exponent vanishes and the sup of a decreasing phi sits at k=1
  const PhiFunction phi = PhiFunction::reciprocal(0.7);
  CHECK(sobolev_sup(syn, phi, 2.0, 2.0, 1000) == doctest::Approx(phi(syn.values()[0])));

  // at the exact threshold the synthetic law gives a constant sup = 1
  const double p = 1.5, q = 3.0;
  const double s_star = 3.0 * (1.0 / p - 1.0 / q);
  const double sup_half = sobolev_sup(syn, PhiFunction::reciprocal(s_star), p, q, 500);
  const double sup_full = sobolev_sup(syn, PhiFunction::reciprocal(s_star), p, q, 1000);
  CHECK(sup_half == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sup_full == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(sobolev_sup(syn, phi, 2.0, 2.0, 1001), InvalidArgument);

  // counting function inverts the synthetic law
  const EigenvalueSequence q4 = EigenvalueSequence::synthetic_power_law(4.0, 5000);
  CHECK(counting_function(q4, 0.5) == 0);
  CHECK(counting_function(q4, 2.5) == static_cast<std::size_t>(std::pow(2.5, 4.0)));
  CHECK(counting_function(q4, q4.values().back() + 1.0) == 5000);
}

TEST_CASE("comparison pair on the truncated SU(2) dual") {
  const double p = 1.5, q = 3.0;
  const double r = 1.0 / (1.0 / p - 1.0 / q);

  const GroupModel su2_l1 = GroupModel::su2_truncation(2);
  const ComparisonPair proj = comparison_pair(BlockSymbol::projection(su2_l1, 3), p, q);
  CHECK(proj.lhs == doctest::Approx(std::pow(14.0, 1.0 / r)).epsilon(1e-14));
  CHECK(proj.rhs == doctest::Approx(proj.lhs).epsilon(1e-15));

  const ComparisonPair zero = comparison_pair(BlockSymbol::zero(su2_l1), p, q);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  const GroupModel su2_l5 = GroupModel::su2_truncation(10);
  Rng rng(2718, 1);
  for (int rep = 0; rep < 200; ++rep) {
    BlockSymbol sigma = BlockSymbol::zero(su2_l5);
    for (SymbolBlock& b : sigma.blocks()) {
      for (int i = 0; i < b.dim; ++i) b.matrix(i, i) = rng.complex_normal();
    }
    const ComparisonPair pair = comparison_pair(sigma, p, q);
    CHECK(pair.lhs <= pair.rhs + 1e-12);
  }

  CHECK_THROWS_AS(comparison_pair(BlockSymbol::identity(su2_l1), 2.0, 2.0), InvalidArgument);
}
