#include "fracclique/oracle.hpp"
#include "fracclique/spectral.hpp"

#include "doctest.h"

#include <random>

using namespace fracclique;

namespace {

EdgeVector random_vector(const PartiteStructure& ps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(ps.num_edges());
  for (auto& x : v) x = dist(rng);
  EdgeVector out(ps, std::move(v));
  out.refresh();
  return out;
}

std::vector<double> expanded(const SpectrumTable& t) {
  std::vector<double> out;
  for (int i = 0; i < kNumClasses; ++i)
    for (Integer k = 0; k < t.multiplicities[i]; ++k) out.push_back(to_double(t.eigenvalues[i]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("M_Gamma expansion coefficients") {
  const auto m = mgamma_element(5, 3, 2);
  CHECK(m.coeff[0] == 6);
  CHECK(m.coeff[3] == 1);
  CHECK(m.coeff[5] == 0);
  CHECK(m.coeff[1] == 0);
  CHECK(mgamma_element(6, 4, 2).coeff[5] == 1);
  CHECK(mgamma_element(6, 4, 2).coeff[3] == 6);
  CHECK(mgamma_element(6, 4, 2).coeff[0] == 24);
}

TEST_CASE("dense M_Gamma equals its scheme expansion") {
  for (auto [r, s, n] : {std::tuple{4, 3, 2}, std::tuple{5, 3, 2}, std::tuple{6, 4, 2}, std::tuple{5, 5, 1}}) {
    const auto elem = mgamma_element(r, s, n);
    oracle::DenseMatrix sum = oracle::DenseMatrix::Zero(PartiteStructure{r, n, s}.num_edges(),
                                                        PartiteStructure{r, n, s}.num_edges());
    for (int i = 0; i < kNumClasses; ++i) sum += to_double(elem.coeff[i]) * oracle::dense_adjacency(i, r, n);
    CHECK(oracle::max_abs_entry(sum - oracle::brute_mgamma(r, s, n)) == 0);
  }
  const auto m432 = oracle::brute_mgamma(4, 3, 2);
  CHECK(m432.diagonal().minCoeff() == 4);
  CHECK(m432.diagonal().maxCoeff() == 4);
  // Edges {(0,0),(1,0)} and {(2,0),(3,0)} share no part.
  const PartiteStructure p4{4, 2, 3};
  const long long a = natural_index(p4, EdgeKey::make({0, 0}, {1, 0}));
  const long long b = natural_index(p4, EdgeKey::make({2, 0}, {3, 0}));
  CHECK(m432(a, b) == 0);
  const PartiteStructure p6{6, 2, 4};
  CHECK(oracle::brute_mgamma(6, 4, 2)(natural_index(p6, EdgeKey::make({0, 0}, {1, 0})),
                                      natural_index(p6, EdgeKey::make({2, 0}, {3, 0}))) == 1);
}

TEST_CASE("closed-form spectrum") {
  const auto t = spectrum(5, 3, 2);
  const std::array<Rational, 6> lam{18, 8, 2, 12, 4, 6};
  const std::array<int, 6> mult{1, 4, 5, 5, 15, 10};
  for (int i = 0; i < 6; ++i) {
    CHECK(t.eigenvalues[i] == lam[i]);
    CHECK(t.multiplicities[i] == mult[i]);
  }
  CHECK(t.all_positive());
  for (int n = 1; n <= 5; ++n) CHECK(spectrum(4, 3, n).eigenvalues[2] == 0);
  CHECK_FALSE(spectrum(4, 3, 2).all_positive());
  const auto shifted = spectrum(4, 3, 2, eta_star(3, 2));
  CHECK(eta_star(3, 2) == Rational(6, 5));
  CHECK(shifted.eigenvalues[2] == Rational(6, 5));
  CHECK(shifted.all_positive());
  CHECK_THROWS_AS(spectrum(5, 3, 2, Rational(1)), std::invalid_argument);
  for (int r = 4; r <= 6; ++r)
    for (int n = 1; n <= 4; ++n) {
      Integer total = 0;
      for (const auto& m : spectrum(r, 3, n).multiplicities) total += m;
      CHECK(total == r * (r - 1) / 2 * n * n);
    }
}

TEST_CASE("closed-form spectrum matches dense eigenvalues") {
  for (auto [r, s, n] : {std::tuple{4, 3, 2}, std::tuple{5, 3, 2}, std::tuple{5, 4, 2}, std::tuple{6, 4, 2}}) {
    CAPTURE(r);
    CAPTURE(s);
    const auto numeric = oracle::numeric_spectrum(oracle::brute_mgamma(r, s, n));
    const auto expected = expanded(spectrum(r, s, n));
    REQUIRE(numeric.size() == expected.size());
    for (std::size_t i = 0; i < numeric.size(); ++i) REQUIRE(std::abs(numeric[i] - expected[i]) < 1e-8);
  }
  // The shifted operator replaces exactly the zero block.
  const auto eta = eta_star(3, 2);
  const oracle::DenseMatrix shifted =
      oracle::brute_mgamma(4, 3, 2) + to_double(eta) * oracle::dense_idempotent(2, 4, 2);
  const auto numeric = oracle::numeric_spectrum(shifted);
  const auto expected = expanded(spectrum(4, 3, 2, eta));
  for (std::size_t i = 0; i < numeric.size(); ++i) CHECK(std::abs(numeric[i] - expected[i]) < 1e-8);
}

TEST_CASE("matrix-free M_Gamma and its inverse") {
  const PartiteStructure ps{5, 2, 3};
  EdgeVector ones(ps, 1.0);
  ones.refresh();
  const auto m1 = apply_mgamma(ones);
  for (long long e = 0; e < ps.num_edges(); ++e) REQUIRE(std::abs(m1[e] - 18.0) < 1e-12);
  const auto inv1 = apply_mgamma_inverse(ones);
  for (long long e = 0; e < ps.num_edges(); ++e) REQUIRE(std::abs(inv1[e] - 1.0 / 18) < 1e-14);

  std::mt19937_64 rng(9);
  const EdgeVector v = random_vector(ps, rng);
  EdgeVector w = apply_mgamma_inverse(v);
  w.refresh();
  CHECK(max_abs_diff(apply_mgamma(w).values(), v.values()) < 1e-9);

  const oracle::DenseMatrix inv = oracle::brute_mgamma(5, 3, 2).inverse();
  const Eigen::VectorXd vd = Eigen::Map<const Eigen::VectorXd>(v.values().data(), v.size());
  const Eigen::VectorXd dense = inv * vd;
  CHECK(max_abs_diff(apply_mgamma_inverse(v).values(), {dense.data(), (std::size_t)dense.size()}) < 1e-8);

  const PartiteStructure p4{4, 2, 3};
  CHECK_THROWS_AS(mgamma_inverse_operator(p4), std::domain_error);
  const EdgeVector v4 = random_vector(p4, rng);
  const Eigen::VectorXd v4d = Eigen::Map<const Eigen::VectorXd>(v4.values().data(), v4.size());
  const oracle::DenseMatrix shifted =
      oracle::brute_mgamma(4, 3, 2) + 1.2 * oracle::dense_idempotent(2, 4, 2);
  const Eigen::VectorXd d4 = shifted.inverse() * v4d;
  CHECK(max_abs_diff(apply_mgamma_eta_inverse(v4, Rational(6, 5)).values(),
                     {d4.data(), (std::size_t)d4.size()}) < 1e-8);
}

TEST_CASE("inverse norms") {
  CHECK(norm_mgamma_inverse(5, 3, 2) == Rational(8, 9));
  CHECK(norm_mgamma_eta_inverse(3, 2) == Rational(9, 8));

  for (auto [r, s, n] : {std::tuple{5, 3, 2}, std::tuple{6, 4, 2}, std::tuple{6, 3, 2}, std::tuple{5, 3, 1}}) {
    const double dense = oracle::dense_inf_norm(oracle::brute_mgamma(r, s, n).inverse());
    CHECK(std::abs(to_double(norm_mgamma_inverse(r, s, n)) - dense) < 1e-8);
    CHECK(inverse_inf_norm_via_scheme(r, n, spectrum(r, s, n)) == norm_mgamma_inverse(r, s, n));
  }
  for (auto [s, n] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
    const int r = s + 1;
    const auto eta = eta_star(s, n);
    const oracle::DenseMatrix m =
        oracle::brute_mgamma(r, s, n) + to_double(eta) * oracle::dense_idempotent(2, r, n);
    CHECK(std::abs(to_double(norm_mgamma_eta_inverse(s, n)) - oracle::dense_inf_norm(m.inverse())) < 1e-8);
    CHECK(inverse_inf_norm_via_scheme(r, n, spectrum(r, s, n, eta)) == norm_mgamma_eta_inverse(s, n));
  }
  for (int s = 3; s <= 20; ++s)
    for (int r = s + 2; r <= 30; ++r)
      for (int n : {1, 2, 4}) REQUIRE(norm_mgamma_inverse(r, s, n) > 0);
}

TEST_CASE("defect bounds") {
  CHECK(norm_delta_bound(5, 3, 2, Rational(1, 64)) == Rational(9, 16));
  CHECK(norm_e2_block_bound(3, Rational(1, 64)) == Rational(1, 48));
  for (int n : {2, 4, 8}) {
    const Rational c = threshold_c(5, 3).exact;
    CHECK(contraction_bound(5, 3, n, c) == Rational(1, 2));
    CHECK(contraction_bound(5, 3, n, c + Rational(1, 100000)) > Rational(1, 2));
    CHECK(contraction_bound(5, 3, n, c - Rational(1, 100000)) < Rational(1, 2));
  }
  for (int s = 3; s <= 10; ++s)
    for (int n : {2, 4, 8}) CHECK(contraction_bound(s + 1, s, n, threshold_c(s + 1, s).exact) <= Rational(1, 2));
}
