#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "fmbound/norm_estimation.hpp"
#include "fmbound/rng.hpp"
#include "fmbound/singular_values.hpp"

using namespace fmbound;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Brute-force realization of the defining infimum: the smallest candidate
// level (a spectrum value or 0) whose exceedance mass is at most t.
double mu_bruteforce(const WeightedSpectrum& sp, double t) {
  std::vector<double> candidates{0.0};
  for (const auto& [v, w] : sp.entries()) candidates.push_back(v);
  std::sort(candidates.begin(), candidates.end());
  for (double lambda : candidates) {
    if (distribution(sp, lambda) <= t) return lambda;
  }
  return candidates.back();
}

WeightedSpectrum random_spectrum(Rng& rng) {
  WeightedSpectrum sp;
  const int n = 1 + static_cast<int>(rng.uniform() * 10);
  for (int i = 0; i < n; ++i) {
    sp.add(rng.uniform(0.0, 4.0), rng.uniform(0.05, 2.0));
  }
  // occasionally insert an exact tie
  if (rng.uniform() < 0.4 && !sp.entries().empty()) {
    sp.add(sp.entries().front().first, rng.uniform(0.05, 2.0));
  }
  return sp;
}

}  // namespace

TEST_CASE("mu from spectrum: sorting, tie merge, zero drop") {
  const StepFunction a = mu_from_spectrum(WeightedSpectrum({{3, 1}, {1, 1}}));
  REQUIRE(a.size() == 2);
  CHECK(a.values()[0] == 3.0);
  CHECK(a.values()[1] == 1.0);
  CHECK(a.widths()[0] == 1.0);
  CHECK(a.widths()[1] == 1.0);

  const StepFunction b = mu_from_spectrum(WeightedSpectrum({{2, 0.5}, {2, 0.5}, {1, 1}}));
  REQUIRE(b.size() == 2);
  CHECK(b.values()[0] == 2.0);
  CHECK(b.widths()[0] == doctest::Approx(1.0).epsilon(1e-15));

  const StepFunction c = mu_from_spectrum(WeightedSpectrum({{0, 1}, {2, 1}}));
  REQUIRE(c.size() == 1);
  CHECK(c.total_width() == 1.0);

  CHECK(mu_from_spectrum(WeightedSpectrum{}).empty());
}

TEST_CASE("identity multiplier on S3 has mu = indicator of [0,1)") {
  const GroupModel s3 = GroupModel::finite_group(builtin_s3_table());
  const StepFunction mu = mu_from_spectrum(spectrum_of_symbol(BlockSymbol::identity(s3)));
  REQUIRE(mu.size() == 1);
  CHECK(mu.values()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu.total_width() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distribution function") {
  const WeightedSpectrum sp({{3, 1}, {1, 1}});
  CHECK(distribution(sp, 2.0) == 1.0);
  CHECK(distribution(sp, 3.0) == 0.0);
  CHECK(distribution(sp, 5.0) == 0.0);
  CHECK(distribution(sp, 0.0) == 2.0);
  CHECK_THROWS_AS(distribution(sp, -1.0), InvalidArgument);
}

TEST_CASE("mu matches the brute-force infimum on random spectra") {
  Rng rng(4242, 1);
  for (int rep = 0; rep < 200; ++rep) {
    const WeightedSpectrum sp = random_spectrum(rng);
    const StepFunction mu = mu_from_spectrum(sp);
    const double total = sp.total_weight();
    for (int k = 0; k < 50; ++k) {
      const double t = rng.uniform(0.0, 1.25 * total);
      const double brute = mu_bruteforce(sp, t);
      const double fast = mu.value_at(t);
      CHECK(std::abs(fast - brute) <= 1e-12 * std::max(1.0, brute));
    }
  }
}

TEST_CASE("mu right-continuity at breakpoints") {
  const WeightedSpectrum sp({{3, 1}, {1, 1}});
  const StepFunction mu = mu_from_spectrum(sp);
  CHECK(mu.value_at(0.0) == 3.0);
  CHECK(mu.value_at(1.0) == 1.0);  // value on [T_1, T_2)
  CHECK(mu.value_at(2.0) == 0.0);  // beyond the support
  CHECK(mu_bruteforce(sp, 1.0) == 1.0);
  CHECK(mu_bruteforce(sp, 2.0) == 0.0);
  CHECK_THROWS_AS(mu.value_at(-0.5), InvalidArgument);
}

TEST_CASE("spectrum of scalar and block symbols") {
  const GroupModel z4 = make_finite_abelian({4});
  const BlockSymbol sigma = BlockSymbol::scalar_blocks(z4, {{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  const WeightedSpectrum sp = spectrum_of_symbol(sigma);
  REQUIRE(sp.size() == 4);
  for (const auto& [v, w] : sp.entries()) CHECK(w == doctest::Approx(0.25));

  const GroupModel su2 = GroupModel::su2_truncation(2);
  const WeightedSpectrum su2sp = spectrum_of_symbol(BlockSymbol::identity(su2));
  CHECK(su2sp.total_weight() == doctest::Approx(14.0).epsilon(1e-15));
  const StepFunction mu = mu_from_spectrum(su2sp);
  REQUIRE(mu.size() == 1);
  CHECK(mu.values()[0] == doctest::Approx(1.0));
  CHECK(mu.total_width() == doctest::Approx(14.0));
}

TEST_CASE("central oracle: block spectrum equals convolution-matrix SVD") {
  Rng rng(808, 1);
  for (const char* name : {"Z6", "S3", "D4", "Q8"}) {
    const GroupModel model = GroupModel::finite_group(builtin_table(name));
    const int n = static_cast<int>(model.domain_size());
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXcd v(n);
      for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
      const GroupFunction f(model, v);

      const StepFunction fast = mu_from_spectrum(spectrum_of_symbol(fourier_transform(f)));

      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(convolution_matrix(f));
      WeightedSpectrum brute;
      for (int i = 0; i < svd.singularValues().size(); ++i) {
        brute.add(svd.singularValues()(i), 1.0 / n);
      }
      const StepFunction slow = mu_from_spectrum(brute);

      CHECK(std::abs(fast.total_width() - slow.total_width()) < 1e-12);
      // compare as functions at midpoints of the merged breakpoint grid
      std::vector<double> breaks;
      breaks.insert(breaks.end(), fast.breakpoints().begin(), fast.breakpoints().end());
      breaks.insert(breaks.end(), slow.breakpoints().begin(), slow.breakpoints().end());
      breaks.push_back(0.0);
      std::sort(breaks.begin(), breaks.end());
      for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] - breaks[i] < 1e-13) continue;
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        CHECK(std::abs(fast.value_at(mid) - slow.value_at(mid)) < 1e-10);
      }
    }
  }
}

TEST_CASE("lorentz norm closed forms") {
  const StepFunction one_block = StepFunction::from_steps({{2.5, 1.7}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(lorentz_norm(one_block, p, p) ==
          doctest::Approx(2.5 * std::pow(1.7, 1.0 / p)).epsilon(1e-14));
  }

  const StepFunction unit = StepFunction::from_steps({{1.0, 1.0}});
  for (double p : {1.0, 2.0, 7.5}) CHECK(lorentz_norm(unit, p, kInf) == doctest::Approx(1.0));

  const StepFunction two = StepFunction::from_steps({{2.0, 1.0}, {1.0, 3.0}});
  CHECK(lorentz_norm(two, 2.0, kInf) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(weak_norm(two, 2.0) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(lorentz_norm(StepFunction{}, 2.0, 2.0) == 0.0);
  CHECK(weak_norm(StepFunction{}, 0.5) == 0.0);
  CHECK_THROWS_AS(lorentz_norm(two, 0.5, 2.0), InvalidArgument);
  CHECK_THROWS_AS(weak_norm(two, 0.0), InvalidArgument);
}

TEST_CASE("lorentz p=q recovers the weighted power sum") {
  // L^p(M) norm: (sum |s_i|^p w_i)^(1/p)
  const WeightedSpectrum sp({{2.0, 0.25}, {1.0, 0.5}, {0.5, 0.25}});
  const StepFunction mu = mu_from_spectrum(sp);
  const double p = 3.0;
  double expect = 0.0;
  for (const auto& [v, w] : sp.entries()) expect += std::pow(v, p) * w;
  expect = std::pow(expect, 1.0 / p);
  CHECK(lorentz_norm(mu, p, p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("homogeneity of mu under scaling") {
  Rng rng(55, 1);
  for (int rep = 0; rep < 50; ++rep) {
    const WeightedSpectrum sp = random_spectrum(rng);
    const double c = rng.uniform(0.1, 5.0);
    WeightedSpectrum scaled;
    for (const auto& [v, w] : sp.entries()) scaled.add(c * v, w);
    const StepFunction a = mu_from_spectrum(scaled);
    const StepFunction b = mu_from_spectrum(sp).scaled(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-15));
      CHECK(a.widths()[i] == b.widths()[i]);
    }
  }
}

TEST_CASE("monotone coupling: raising singular values cannot lower the weak norm") {
  Rng rng(66, 1);
  for (int rep = 0; rep < 50; ++rep) {
    const WeightedSpectrum sp = random_spectrum(rng);
    WeightedSpectrum raised;
    Rng bump(66, 1000 + rep);
    for (const auto& [v, w] : sp.entries()) raised.add(v + bump.uniform(0.0, 0.5), w);
    const double r = bump.uniform(0.5, 4.0);
    CHECK(weak_norm(mu_from_spectrum(raised), r) >=
          weak_norm(mu_from_spectrum(sp), r) - 1e-12);
  }
}

TEST_CASE("step function validation") {
  CHECK_THROWS_AS(StepFunction::from_steps({{1.0, 1.0}, {2.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(StepFunction::from_steps({{1.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(StepFunction::from_steps({{0.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(StepFunction::from_steps({{2.0, 1.0}, {2.0, 1.0}}), InvalidArgument);
}

TEST_CASE("non-finite symbols raise a numerical error naming the block") {
  const GroupModel z2 = make_finite_abelian({2});
  BlockSymbol sigma = BlockSymbol::identity(z2);
  sigma.blocks()[1].matrix(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(spectrum_of_symbol(sigma), NumericalError);
  try {
    spectrum_of_symbol(sigma);
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("chi(1)") != std::string::npos);
  }
}
