#include "fracclique/xval.hpp"

#include "fracclique/scheme.hpp"
#include "fracclique/solver.hpp"
#include "fracclique/spectral.hpp"

#include <cmath>
#include <random>

namespace fracclique::oracle {

namespace {

XvalCheck make_check(std::string name, double deviation, double tol, std::string detail = {}) {
  return XvalCheck{std::move(name), deviation <= tol, deviation, tol, std::move(detail)};
}

std::vector<double> random_vector(long long size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(size);
  for (auto& x : v) x = dist(rng);
  return v;
}

double spectrum_deviation(const DenseMatrix& m, const SpectrumTable& t) {
  // Expected multiset from the table, compared entrywise after sorting.
  std::vector<double> expected;
  for (int i = 0; i < kNumClasses; ++i)
    for (Integer k = 0; k < t.multiplicities[i]; ++k) expected.push_back(to_double(t.eigenvalues[i]));
  std::sort(expected.begin(), expected.end());
  const auto numeric = numeric_spectrum(m);
  if (numeric.size() != expected.size()) return INFINITY;
  double dev = 0;
  for (std::size_t i = 0; i < numeric.size(); ++i) dev = std::max(dev, std::abs(numeric[i] - expected[i]));
  return dev;
}

}  // namespace

std::vector<XvalCheck> cross_validate(int r, int s, int n, long long cap, std::uint64_t seed) {
  const PartiteStructure ps{r, n, s};
  ps.validate();
  check_cap(ps, cap);
  std::vector<XvalCheck> out;
  std::mt19937_64 rng(seed);

  if (r >= 4) {
    const auto census = brute_relation_census(r, n, cap);
    out.push_back(make_check("intersection_numbers", static_cast<double>(census.mismatches.size()), 0,
                             census.ok() ? "" : census.mismatches.front().describe(r, n)));

    const Eigenmatrices eig = eigenmatrices(r, n);
    out.push_back(make_check("eigenmatrices_CD_identity",
                             multiply(eig.C, eig.D) == identity6() ? 0.0 : 1.0, 0));

    std::vector<DenseMatrix> e;
    for (int i = 0; i < kNumClasses; ++i) e.push_back(dense_idempotent(i, r, n, cap));
    double idem = 0;
    DenseMatrix sum = DenseMatrix::Zero(ps.num_edges(), ps.num_edges());
    for (int i = 0; i < kNumClasses; ++i) {
      sum += e[i];
      for (int j = 0; j < kNumClasses; ++j) {
        const DenseMatrix target = i == j ? e[i] : DenseMatrix::Zero(e[i].rows(), e[i].cols());
        idem = std::max(idem, max_abs_entry(e[i] * e[j] - target));
      }
    }
    idem = std::max(idem, max_abs_entry(sum - DenseMatrix::Identity(sum.rows(), sum.cols())));
    out.push_back(make_check("idempotents_orthogonal", idem, 1e-10));

    EdgeVector v(ps, random_vector(ps.num_edges(), rng));
    v.refresh();
    const Eigen::VectorXd vd = Eigen::Map<const Eigen::VectorXd>(v.values().data(), v.size());
    double adj = 0;
    for (int i = 0; i < kNumClasses; ++i) {
      const EdgeVector mf = apply_adjacency(i, v);
      const Eigen::VectorXd dense = dense_adjacency(i, r, n, cap) * vd;
      adj = std::max(adj, max_abs_diff(mf.values(), std::span<const double>(dense.data(), dense.size())));
    }
    out.push_back(make_check("matrix_free_adjacency", adj, 1e-12 * std::max(1.0, (double)ps.num_edges())));

    if (s < r) {
      const DenseMatrix mg = brute_mgamma(r, s, n, cap);
      const SpectrumTable spec = spectrum(r, s, n);
      const double scale = std::max(1.0, to_double(spec.eigenvalues[0]));
      out.push_back(make_check("mgamma_spectrum", spectrum_deviation(mg, spec), 1e-8 * scale));

      std::optional<Rational> eta;
      if (r == s + 1) eta = eta_star(s, n);
      const DenseMatrix shifted =
          eta ? DenseMatrix(mg + to_double(*eta) * e[2]) : mg;
      const DenseMatrix inv = shifted.inverse();
      const double dense_norm = dense_inf_norm(inv);
      const double closed =
          to_double(eta ? norm_mgamma_eta_inverse(s, n) : norm_mgamma_inverse(r, s, n));
      out.push_back(make_check(eta ? "eta_inverse_norm" : "inverse_norm",
                               std::abs(dense_norm - closed), 1e-8,
                               "closed " + std::to_string(closed) + ", dense " + std::to_string(dense_norm)));

      const EdgeVector mf_inv = mgamma_inverse_operator(ps, eta).apply(v);
      const Eigen::VectorXd dense_inv = inv * vd;
      out.push_back(make_check(
          "matrix_free_inverse",
          max_abs_diff(mf_inv.values(), std::span<const double>(dense_inv.data(), dense_inv.size())),
          1e-8));

      for (const bool defected : {false, true}) {
        MultipartiteGraph g = make_complete(r, s, n);
        if (defected && n >= 2) {
          try {
            g = generate_admissible_instance(r, s, n, DefectSpec{r == s + 1 ? 1 : 2, 1}, seed);
          } catch (const std::invalid_argument&) {
            continue;
          }
        } else if (defected) {
          continue;
        }
        const CliqueList cliques = enumerate_cliques(g);
        SolveOptions opts;
        const NeumannResult sol = neumann_solve(g, cliques, opts);
        if (!sol.converged) {
          out.push_back(make_check(defected ? "solve_defected" : "solve_complete", INFINITY, 1e-8,
                                   "matrix-free iteration did not converge"));
          continue;
        }
        const auto dense = dense_solve(g, eta ? std::optional<double>(to_double(*eta)) : std::nullopt, cap);
        out.push_back(make_check(defected ? "solve_defected" : "solve_complete",
                                 max_abs_diff(sol.z.values(), dense), 1e-8,
                                 std::to_string(sol.iterations) + " iterations"));
      }
    }
  }
  return out;
}

}  // namespace fracclique::oracle
