#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fmbound/experiments.hpp"
#include "fmbound/serialization.hpp"

using namespace fmbound;

TEST_CASE("sharpness run passes on builtin models") {
  const RunOptions opts;
  const BoundReport rep =
      run_sharpness_l2(GroupModel::finite_group(builtin_s3_table()), 10, 11, opts);
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 10);
  CHECK(rep.experiment == "sharpness-l2");
}

TEST_CASE("hausdorff-young run: constant one, Plancherel equality at p = 2") {
  const GroupModel q8 = GroupModel::finite_group(builtin_q8_table());
  const BoundReport at2 = run_hausdorff_young(q8, 2.0, 50, 5);
  CHECK(at2.pass);
  for (const ReportRow& row : at2.rows) {
    for (const auto& [k, v] : row) {
      if (k == "ratio") CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  const GroupModel z6 = make_finite_abelian({6});
  const BoundReport mid = run_hausdorff_young(z6, 1.5, 100, 6);
  CHECK(mid.pass);

  CHECK_THROWS_AS(run_hausdorff_young(z6, 2.5, 10, 0), InvalidArgument);
  CHECK_THROWS_AS(run_hausdorff_young(z6, 1.0, 10, 0), InvalidArgument);
}

TEST_CASE("hyp run: family assertions and the infinite-M_phi rejection") {
  const GroupModel z12 = make_finite_abelian({12});
  const BoundReport paley =
      run_hyp(z12, PhiFunction::reciprocal(1.0), 1.5, 1.5, 50, 17);
  CHECK(paley.pass);

  const BoundReport endpoint =
      run_hyp(z12, PhiFunction::indicator(1.0), 1.5, 3.0, 50, 17);
  CHECK(endpoint.pass);
  CHECK(endpoint.params.at("endpoint_b_eq_p_prime").get<bool>());

  CHECK_THROWS_AS(run_hyp(z12, PhiFunction::reciprocal(2.0), 1.5, 1.5, 10, 1), ConfigError);
  CHECK_THROWS_AS(run_hyp(z12, PhiFunction::reciprocal(1.0), 1.5, 5.0, 10, 1),
                  InvalidArgument);
}

TEST_CASE("multiplier run: safety margin and averaging attainment") {
  const GroupModel z8 = make_finite_abelian({8});
  const BoundReport rep =
      run_multiplier_verification(z8, EnsembleKind::DiagonalUniform, 1.5, 3.0, 25, 23);
  CHECK(rep.pass);
  bool saw_attainment = false;
  for (const auto& [k, v] : rep.aggregate) {
    if (k == "attainment_ratio") {
      saw_attainment = true;
      CHECK(v == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
  CHECK(saw_attainment);

  const GroupModel s3 = GroupModel::finite_group(builtin_s3_table());
  const BoundReport compact =
      run_multiplier_verification(s3, EnsembleKind::DenseGaussian, 1.5, 3.0, 15, 29);
  CHECK(compact.pass);
  CHECK(compact.params.at("bound_functional") == "compact-d2");
}

TEST_CASE("comparison run with projection equality") {
  const GroupModel su2 = GroupModel::su2_truncation(10);
  const BoundReport rep = run_comparison(su2, 25, 1.5, 3.0, 31);
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 25);
}

TEST_CASE("sobolev trend classification") {
  const EigenvalueSequence q3 = EigenvalueSequence::synthetic_power_law(3.0, 20000);
  // p = q = 2: the threshold is 0 and any positive s stabilizes
  const BoundReport trivial = run_sobolev_trend(q3, 0.5, 2.0, 2.0, {100, 10000});
  CHECK(trivial.pass);
  CHECK(trivial.params.at("classification") == "stabilizing");

  // exactly at the threshold: a constant sup, stabilizing, boundary-flagged
  const EigenvalueSequence q4 = EigenvalueSequence::synthetic_power_law(4.0, 20000);
  const double thr = 4.0 * (1.0 / 1.5 - 1.0 / 3.0);
  const BoundReport boundary = run_sobolev_trend(q4, thr, 1.5, 3.0, {100, 10000});
  CHECK(boundary.params.at("classification") == "stabilizing");
  CHECK(boundary.params.contains("boundary_case"));

  const BoundReport growing = run_sobolev_trend(q4, thr - 0.1, 1.5, 3.0, {10, 20000});
  CHECK(growing.pass);
  CHECK(growing.params.at("classification") == "growing");

  CHECK_THROWS_AS(run_sobolev_trend(q3, 0.5, 1.5, 3.0, {100, 50000}), ConfigError);
  CHECK_THROWS_AS(run_sobolev_trend(q3, 0.5, 1.5, 3.0, {100}), ConfigError);
  CHECK_THROWS_AS(run_sobolev_trend(q3, 0.5, 1.5, 3.0, {100, 100}), ConfigError);
}

TEST_CASE("reports are byte-identical for identical configs and seeds") {
  const GroupModel z6 = make_finite_abelian({6});
  const BoundReport a = run_hausdorff_young(z6, 1.5, 40, 123);
  const BoundReport b = run_hausdorff_young(z6, 1.5, 40, 123);
  CHECK(a.to_json_string() == b.to_json_string());
  CHECK(a.to_csv() == b.to_csv());

  RunOptions serial;
  serial.jobs = 1;
  RunOptions parallel;
  parallel.jobs = 4;
  const GroupModel z8 = make_finite_abelian({8});
  const BoundReport s =
      run_multiplier_verification(z8, EnsembleKind::DenseGaussian, 1.5, 3.0, 12, 99, serial);
  const BoundReport p =
      run_multiplier_verification(z8, EnsembleKind::DenseGaussian, 1.5, 3.0, 12, 99, parallel);
  CHECK(s.to_json_string() == p.to_json_string());

  const BoundReport c = run_hausdorff_young(z6, 1.5, 40, 124);
  CHECK(a.to_json_string() != c.to_json_string());
}

TEST_CASE("report serialization shape and atomic write") {
  const GroupModel z4 = make_finite_abelian({4});
  const BoundReport rep = run_sharpness_l2(z4, 5, 7);
  const auto j = rep.to_json();
  CHECK(j.at("schema") == "fmbound/1");
  CHECK(j.at("rows").size() == 5);
  CHECK(j.at("assertions").size() >= 2);
  CHECK(j.contains("pass"));

  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("trial,", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 6);  // header + 5 rows

  const auto path = std::filesystem::temp_directory_path() / "fmbound_report_test.json";
  rep.write_file(path.string(), "json");
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == rep.to_json_string());
  std::filesystem::remove(path);
}

TEST_CASE("random symbol ensembles respect their shapes") {
  const GroupModel s3 = GroupModel::finite_group(builtin_s3_table());
  Rng rng(1, 1);
  const BlockSymbol diag = make_random_symbol(s3, EnsembleKind::DiagonalUniform, rng);
  const Eigen::MatrixXcd& m = diag.blocks()[2].matrix;
  CHECK(std::abs(m(0, 1)) == 0.0);
  CHECK(std::abs(m(1, 0)) == 0.0);

  const BlockSymbol ind = make_random_symbol(s3, EnsembleKind::Indicator, rng);
  for (const SymbolBlock& b : ind.blocks()) {
    const double top = b.matrix.cwiseAbs().maxCoeff();
    CHECK((top == 0.0 || top == 1.0));
  }

  const BlockSymbol dec = make_random_symbol(s3, EnsembleKind::Decaying, rng);
  CHECK(std::abs(dec.blocks()[0].matrix(0, 0)) >= std::abs(dec.blocks()[2].matrix(0, 0)));

  CHECK(to_string(ensemble_from_string("dense-gaussian")) == "dense-gaussian");
  CHECK_THROWS_AS(ensemble_from_string("bogus"), ConfigError);
}
