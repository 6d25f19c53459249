#include "fracclique/oracle.hpp"
#include "fracclique/scheme.hpp"

#include "doctest.h"

#include <random>

using namespace fracclique;

namespace {

EdgeKey edge(int p1, int i1, int p2, int i2) { return EdgeKey::make({p1, i1}, {p2, i2}); }

EdgeVector random_vector(const PartiteStructure& ps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(ps.num_edges());
  for (auto& x : v) x = dist(rng);
  EdgeVector out(ps, std::move(v));
  out.refresh();
  return out;
}

EdgeVector refreshed(EdgeVector v) {
  v.refresh();
  return v;
}

EdgeVector combine(const PartiteStructure& ps, const std::vector<std::pair<double, const EdgeVector*>>& terms) {
  std::vector<double> out(ps.num_edges(), 0.0);
  for (const auto& [w, v] : terms)
    for (long long e = 0; e < ps.num_edges(); ++e) out[e] += w * (*v)[e];
  return EdgeVector(ps, std::move(out));
}

}  // namespace

TEST_CASE("classification") {
  CHECK(classify(edge(0, 0, 1, 0), edge(0, 0, 1, 0)) == 0);
  CHECK(classify(edge(0, 0, 1, 0), edge(0, 0, 1, 1)) == 1);
  CHECK(classify(edge(0, 0, 1, 0), edge(0, 1, 1, 1)) == 2);
  CHECK(classify(edge(0, 0, 1, 0), edge(0, 0, 2, 1)) == 3);
  CHECK(classify(edge(0, 0, 1, 0), edge(0, 1, 2, 1)) == 4);
  CHECK(classify(edge(0, 0, 1, 0), edge(2, 0, 3, 0)) == 5);
  CHECK(classify(edge(0, 0, 2, 1), edge(0, 0, 1, 0)) == 3);
}

TEST_CASE("intersection numbers") {
  CHECK(intersection_number(3, 3, 0, 4, 2) == 8);
  CHECK(intersection_number(3, 5, 4, 5, 3) == 6);
  long long total = 0;
  for (int j = 0; j < kNumClasses; ++j) {
    CHECK(valency(j, 4, 2) == intersection_number(j, j, 0, 4, 2));
    total += valency(j, 4, 2);
  }
  CHECK(total == 24);
  CHECK(valency(1, 4, 2) == 2);
  CHECK(valency(5, 4, 2) == 4);
  for (int r = 4; r <= 7; ++r)
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i < kNumClasses; ++i)
        for (int j = 0; j < kNumClasses; ++j)
          for (int k = 0; k < kNumClasses; ++k)
            REQUIRE(intersection_number(i, j, k, r, n) == intersection_number(j, i, k, r, n));
  CHECK_THROWS_AS(intersection_number(0, 0, 0, 3, 2), std::invalid_argument);
}

TEST_CASE("intersection numbers against full enumeration") {
  for (auto [r, n] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{4, 3}, std::pair{4, 1}}) {
    CAPTURE(r);
    CAPTURE(n);
    const auto census = oracle::brute_relation_census(r, n);
    CHECK(census.ok());
    for (const auto& m : census.mismatches) FAIL_CHECK(m.describe(r, n));
    const long long edges = PartiteStructure{r, n, 3}.num_edges();
    for (int j = 0; j < kNumClasses; ++j) CHECK(census.class_pairs[j] == edges * valency(j, r, n));
  }
  const auto k4 = oracle::brute_relation_census(4, 1);
  CHECK(k4.class_pairs[1] == 0);
  CHECK(k4.class_pairs[2] == 0);
  CHECK(k4.class_pairs[4] == 0);
  CHECK(oracle::brute_relation_census(5, 2).class_pairs[5] == 480);
}

TEST_CASE("eigenmatrices") {
  for (int r = 4; r <= 6; ++r)
    for (int n = 1; n <= 4; ++n) {
      const auto eig = eigenmatrices(r, n);
      CHECK(multiply(eig.C, eig.D) == identity6());
      CHECK(multiply(eig.D, eig.C) == identity6());
      for (int j = 0; j < kNumClasses; ++j) {
        CHECK(eig.C[0][j] == 1);
        CHECK(eig.D[0][j] == Rational(1, r * (r - 1) / 2 * n * n));
        // First column of C holds the valencies.
        CHECK(eig.C[j][0] == valency(j, r, n));
      }
    }
  CHECK(eigenmatrices(5, 2).C[3][0] == 12);
}

TEST_CASE("basis conversion round-trips exactly") {
  const auto eig = eigenmatrices(5, 3);
  SchemeElement a;
  a.coeff = {Rational(3, 7), Rational(-2), Rational(0), Rational(5, 11), Rational(1, 13), Rational(-9, 4)};
  const auto e = a.in_basis(Basis::idempotent, eig);
  CHECK(e.basis == Basis::idempotent);
  const auto back = e.in_basis(Basis::adjacency, eig);
  CHECK(back.coeff == a.coeff);
  const auto e0 = SchemeElement::idempotent(0).in_basis(Basis::adjacency, eig);
  for (int j = 0; j < kNumClasses; ++j) CHECK(e0.coeff[j] == eig.D[0][j]);
}

TEST_CASE("matrix-free adjacency application") {
  std::mt19937_64 rng(1);
  for (auto [r, n] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{4, 3}, std::pair{6, 1}}) {
    const PartiteStructure ps{r, n, 3};
    const EdgeVector ones = refreshed(EdgeVector(ps, 1.0));
    const EdgeVector v = random_vector(ps, rng);
    const Eigen::VectorXd vd = Eigen::Map<const Eigen::VectorXd>(v.values().data(), v.size());
    for (int i = 0; i < kNumClasses; ++i) {
      const auto a1 = apply_adjacency(i, ones);
      for (long long e = 0; e < ps.num_edges(); ++e)
        REQUIRE(a1[e] == static_cast<double>(valency(i, r, n)));
      const Eigen::VectorXd dense = oracle::dense_adjacency(i, r, n) * vd;
      CHECK(max_abs_diff(apply_adjacency(i, v).values(), {dense.data(), (std::size_t)dense.size()}) < 1e-12);
    }
    CHECK(max_abs_diff(apply_adjacency(0, v).values(), v.values()) == 0);
  }
}

TEST_CASE("stale aggregates are rejected") {
  EdgeVector v(PartiteStructure{4, 2, 3}, 1.0);
  CHECK_THROWS_AS(apply_adjacency(1, v), std::logic_error);
  v.refresh();
  v.mutable_values()[0] = 2.0;
  CHECK_THROWS_AS(v.aggregates(), std::logic_error);
}

TEST_CASE("adjacency products follow the intersection numbers") {
  const int r = 4, n = 2;
  const PartiteStructure ps{r, n, 3};
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const EdgeVector v = random_vector(ps, rng);
    std::vector<EdgeVector> av;
    for (int k = 0; k < kNumClasses; ++k) av.push_back(apply_adjacency(k, v));
    for (int i = 0; i < kNumClasses; ++i)
      for (int j = 0; j < kNumClasses; ++j) {
        const EdgeVector lhs = apply_adjacency(i, refreshed(av[j]));
        std::vector<std::pair<double, const EdgeVector*>> terms;
        for (int k = 0; k < kNumClasses; ++k)
          terms.push_back({static_cast<double>(intersection_number(i, j, k, r, n)), &av[k]});
        worst = std::max(worst, max_abs_diff(lhs.values(), combine(ps, terms).values()));
      }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("idempotents") {
  for (auto [r, n] : {std::pair{4, 2}, std::pair{5, 3}}) {
    const PartiteStructure ps{r, n, 3};
    const auto eig = eigenmatrices(r, n);
    std::mt19937_64 rng(3);
    const EdgeVector ones = refreshed(EdgeVector(ps, 1.0));
    CHECK(max_abs(apply_idempotent(2, ones, eig).values()) < 1e-12);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const EdgeVector v = random_vector(ps, rng);
      std::vector<EdgeVector> ev;
      for (int i = 0; i < kNumClasses; ++i) ev.push_back(apply_idempotent(i, v, eig));
      std::vector<std::pair<double, const EdgeVector*>> terms;
      for (int i = 0; i < kNumClasses; ++i) terms.push_back({1.0, &ev[i]});
      worst = std::max(worst, max_abs_diff(combine(ps, terms).values(), v.values()));
      for (int i = 0; i < kNumClasses; ++i) {
        const EdgeVector fresh_ei = refreshed(ev[i]);
        for (int j = 0; j < kNumClasses; ++j) {
          const EdgeVector prod = apply_idempotent(j, fresh_ei, eig);
          if (i == j)
            worst = std::max(worst, max_abs_diff(prod.values(), ev[i].values()));
          else
            worst = std::max(worst, max_abs(prod.values()));
        }
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("scheme element application is linear in the coefficients") {
  const PartiteStructure ps{5, 2, 3};
  const auto eig = eigenmatrices(5, 2);
  std::mt19937_64 rng(4);
  const EdgeVector v = random_vector(ps, rng);
  SchemeElement e;
  e.basis = Basis::idempotent;
  e.coeff = {Rational(2), Rational(1, 3), Rational(0), Rational(-1), Rational(5), Rational(1, 2)};
  std::vector<EdgeVector> ev;
  std::vector<std::pair<double, const EdgeVector*>> terms;
  for (int i = 0; i < kNumClasses; ++i) ev.push_back(apply_idempotent(i, v, eig));
  for (int i = 0; i < kNumClasses; ++i) terms.push_back({to_double(e.coeff[i]), &ev[i]});
  CHECK(max_abs_diff(apply_scheme_element(e, v, eig).values(), combine(ps, terms).values()) < 1e-10);
}

TEST_CASE("six distinct eigenvalues of 2r^2 A0 + r^2 A1 + A3") {
  const int r = 4, n = 2;
  const oracle::DenseMatrix m = 2.0 * r * r * oracle::dense_adjacency(0, r, n) +
                                1.0 * r * r * oracle::dense_adjacency(1, r, n) +
                                oracle::dense_adjacency(3, r, n);
  const auto groups = oracle::group_eigenvalues(oracle::numeric_spectrum(m), 1e-6);
  std::vector<double> expected{2.0 * n * (r * r + r - 2), 1.0 * n * (2 * r * r + r - 4),
                               2.0 * n * (r * r - 1),    1.0 * n * (r * r + r - 2),
                               1.0 * n * (r * r - 1),    0.0};
  std::sort(expected.begin(), expected.end());
  REQUIRE(groups.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(groups[i].first - expected[i]) < 1e-8);
}
