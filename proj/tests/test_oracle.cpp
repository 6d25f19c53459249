#include "fracclique/oracle.hpp"
#include "fracclique/spectral.hpp"
#include "fracclique/xval.hpp"

#include "doctest.h"

using namespace fracclique;

TEST_CASE("size cap") {
  CHECK_THROWS_AS(oracle::brute_mgamma(5, 3, 16, 1000), std::length_error);
  CHECK_NOTHROW(oracle::check_cap(PartiteStructure{5, 8, 3}, 2560));
  CHECK_THROWS_AS(oracle::dense_solve(make_complete(5, 3, 32)), std::length_error);
}

TEST_CASE("dense idempotents") {
  for (auto [r, n] : {std::pair{4, 2}, std::pair{5, 2}}) {
    std::vector<oracle::DenseMatrix> e;
    for (int i = 0; i < 6; ++i) e.push_back(oracle::dense_idempotent(i, r, n));
    const long long size = e[0].rows();
    oracle::DenseMatrix sum = oracle::DenseMatrix::Zero(size, size);
    for (int i = 0; i < 6; ++i) {
      sum += e[i];
      CHECK(oracle::max_abs_entry(e[i] * e[i] - e[i]) < 1e-10);
      CHECK(oracle::max_abs_entry(e[i] - e[i].transpose()) < 1e-12);
      for (int j = i + 1; j < 6; ++j) CHECK(oracle::max_abs_entry(e[i] * e[j]) < 1e-10);
      CHECK(std::abs(e[i].trace() - to_double(Rational(spectrum(r, 3, n).multiplicities[i]))) < 1e-9);
    }
    CHECK(oracle::max_abs_entry(sum - oracle::DenseMatrix::Identity(size, size)) < 1e-10);
  }
}

TEST_CASE("dense solves and norms") {
  const auto dense = oracle::dense_solve(make_complete(4, 3, 2), 1.2);
  for (double x : dense) CHECK(x == doctest::Approx(1.0 / 12).epsilon(1e-12));
  const auto spec = oracle::numeric_spectrum(oracle::brute_mgamma(5, 3, 2));
  const auto groups = oracle::group_eigenvalues(spec, 1e-6 * 18);
  const std::vector<std::pair<double, long long>> expected{{2, 5}, {4, 15}, {6, 10}, {8, 4}, {12, 5}, {18, 1}};
  REQUIRE(groups.size() == expected.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(std::abs(groups[i].first - expected[i].first) < 1e-8);
    CHECK(groups[i].second == expected[i].second);
  }
  CHECK(std::abs(oracle::dense_inf_norm(oracle::brute_mgamma(5, 3, 2).inverse()) - 8.0 / 9) < 1e-8);
  oracle::DenseMatrix m(2, 2);
  m << 1, -3, 2, 0.5;
  CHECK(oracle::dense_inf_norm(m) == 4.0);
  CHECK(oracle::max_abs_entry(m) == 3.0);
  CHECK_THROWS_AS(oracle::dense_solve(make_complete(4, 3, 2)), std::runtime_error);
}

TEST_CASE("dense host and defect blocks") {
  const auto g = generate_admissible_instance(5, 3, 3, DefectSpec{4, 1}, 2);
  const long long ge = g.edge_count();
  const auto host = oracle::dense_host(g);
  const auto delta = oracle::dense_delta(g);
  const auto mg = oracle::brute_mg(g);
  REQUIRE(mg.rows() == ge);
  const oracle::DenseMatrix full = host + delta;
  CHECK(oracle::max_abs_entry(full.topLeftCorner(ge, ge) - mg) == 0);
  CHECK(oracle::max_abs_entry(full.topRightCorner(ge, full.cols() - ge)) == 0);
  CHECK(oracle::max_abs_entry(delta.bottomRows(full.rows() - ge)) == 0);
}

TEST_CASE("cross-validation grid") {
  for (auto [r, s, n] : {std::tuple{4, 3, 2}, std::tuple{5, 3, 2}, std::tuple{5, 4, 2}, std::tuple{6, 4, 2}}) {
    const auto checks = oracle::cross_validate(r, s, n);
    CHECK(checks.size() >= 8);
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CAPTURE(c.deviation);
      CHECK(c.passed);
    }
  }
}
