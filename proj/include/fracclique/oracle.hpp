#pragma once

// Dense brute-force ground truth for desk-scale instances. Everything here is
// built by direct enumeration and never calls the matrix-free operators.

#include "fracclique/graph.hpp"
#include "fracclique/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracclique::oracle {

using DenseMatrix = Eigen::MatrixXd;

inline constexpr long long kDefaultCap = 2000;

/// Throws std::length_error when |E(Gamma)| exceeds the cap.
void check_cap(const PartiteStructure& ps, long long cap);

/// Dense A_i in natural edge order.
DenseMatrix dense_adjacency(int i, int r, int n, long long cap = kDefaultCap);
/// Dense E_i = sum_j D(i,j) A_j in natural edge order.
DenseMatrix dense_idempotent(int i, int r, int n, long long cap = kDefaultCap);

/// Every K_s of the graph, found by scanning all s-subsets of vertices.
std::vector<std::vector<Vertex>> brute_cliques(const MultipartiteGraph& g);

/// M_Gamma in natural order: entry counts K_s copies containing both edges.
DenseMatrix brute_mgamma(int r, int s, int n, long long cap = kDefaultCap);
/// M_G on E(G) in graph-first order.
DenseMatrix brute_mg(const MultipartiteGraph& g, long long cap = kDefaultCap);

/// Delta M (or Delta M^eta) in graph-first order.
DenseMatrix dense_delta(const MultipartiteGraph& g, std::optional<double> eta = std::nullopt,
                        long long cap = kDefaultCap);
/// M_Gamma (+ eta E_2) in graph-first order.
DenseMatrix dense_host(const MultipartiteGraph& g, std::optional<double> eta = std::nullopt,
                       long long cap = kDefaultCap);

/// Solves (M + Delta M) z = 1 by LU with partial pivoting; z in natural order.
/// Throws std::runtime_error if the system is numerically singular.
std::vector<double> dense_solve(const MultipartiteGraph& g, std::optional<double> eta = std::nullopt,
                                long long cap = kDefaultCap);

/// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> numeric_spectrum(const DenseMatrix& m);
/// Groups sorted eigenvalues lying within tol of the running cluster start.
std::vector<std::pair<double, long long>> group_eigenvalues(const std::vector<double>& sorted,
                                                            double tol);
double dense_inf_norm(const DenseMatrix& m);
double max_abs_entry(const DenseMatrix& m);

struct CensusMismatch {
  int i = 0, j = 0, k = 0;
  long long expected = 0;
  long long found = 0;
  std::string describe(int r, int n) const;
};

struct CensusResult {
  std::array<long long, 6> class_pairs{};  ///< ordered pairs per relation
  long long anchor_pairs = 0;
  std::vector<CensusMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Classifies every ordered edge pair and, for each anchor pair in R_k,
/// counts intermediates z with (x,z) in R_i and (z,y) in R_j against p_ij^k.
/// Each (i,j,k) mismatch is reported once.
CensusResult brute_relation_census(int r, int n, long long cap = kDefaultCap);

/// Reorders a natural-order vector into graph-first positions and back.
Eigen::VectorXd to_positions(const EdgeIndexing& idx, std::span<const double> natural);
std::vector<double> to_natural(const EdgeIndexing& idx, const Eigen::VectorXd& positions);

}  // namespace fracclique::oracle
