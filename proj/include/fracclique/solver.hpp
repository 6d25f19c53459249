#pragma once

#include "fracclique/graph.hpp"
#include "fracclique/spectral.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracclique {

/// Every K_s copy of G, one vertex per part, with its edge incidence.
class CliqueList {
 public:
  CliqueList() = default;
  CliqueList(const PartiteStructure& ps, std::vector<Vertex> vertices);

  const PartiteStructure& structure() const { return ps_; }
  long long size() const { return count_; }
  int clique_order() const { return ps_.s; }
  int edges_per_clique() const { return ps_.s * (ps_.s - 1) / 2; }

  /// Vertices of clique k in increasing part order.
  std::span<const Vertex> vertices(long long k) const {
    return {vertices_.data() + k * ps_.s, static_cast<std::size_t>(ps_.s)};
  }
  /// Natural indices of the edges of clique k.
  std::span<const long long> edges(long long k) const {
    return {edges_.data() + k * edges_per_clique(), static_cast<std::size_t>(edges_per_clique())};
  }
  /// Number of listed cliques through each host edge (zero on missing edges).
  std::vector<long long> cliques_per_edge() const;

 private:
  PartiteStructure ps_;
  long long count_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<long long> edges_;
};

/// Backtracking over s-subsets of parts, one vertex per part, pruning on any
/// missing edge. Output order is deterministic.
CliqueList enumerate_cliques(const MultipartiteGraph& g);

/// M_G v: for each clique add the sum of v over its edges back onto every
/// edge. Entries of v on missing edges are ignored; the output is zero there.
EdgeVector apply_mg(const CliqueList& cliques, const EdgeVector& v, int workers = 1);

/// Delta M z: zero on missing rows, M_G z - M_Gamma z on rows of E(G).
EdgeVector apply_delta(const MultipartiteGraph& g, const CliqueList& cliques, const EdgeVector& z,
                       int workers = 1);
/// Delta M^eta z = Delta M z - eta (E_2 zhat) on E(G), zhat = z on missing edges, 0 on E(G).
EdgeVector apply_delta_eta(const MultipartiteGraph& g, const CliqueList& cliques,
                           const EdgeVector& z, const Rational& eta, int workers = 1);

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// Shift used when r = s + 1; defaults to eta*.
  std::optional<Rational> eta;
  int workers = 1;
  double clip_tol = 1e-12;
  /// Run the r = s + 1 path on graphs that fail the admissibility check.
  bool allow_inadmissible = false;
};

struct NeumannResult {
  EdgeVector z;
  int iterations = 0;
  double residual_inf = 0;
  /// Largest ratio of successive update norms observed.
  double contraction = 0;
  bool converged = false;
  std::optional<Rational> eta;
};

/// Fixed-point iteration z <- M^{-1}(1 - Delta M z) starting from M^{-1} 1,
/// with M = M_Gamma (r >= s + 2) or M_Gamma + eta E_2 (r = s + 1).
NeumannResult neumann_solve(const MultipartiteGraph& g, const CliqueList& cliques,
                            const SolveOptions& options = {});

struct FractionalDecomposition {
  std::vector<double> weights;  ///< aligned with the clique list
  double min_weight = 0;
};

class NegativeWeightError : public std::runtime_error {
 public:
  NegativeWeightError(long long natural_edge, double value);
  long long edge() const { return edge_; }
  double value() const { return value_; }

 private:
  long long edge_;
  double value_;
};

/// w(K) = sum of y over the edges of K. y entries in [-clip_tol, 0) are
/// treated as zero; anything more negative throws NegativeWeightError.
FractionalDecomposition extract_weights(const EdgeVector& y, const CliqueList& cliques,
                                        double clip_tol = 1e-12);

struct CoverageReport {
  double max_error = 0;
  long long worst_edge = -1;  ///< natural index
  double worst_sum = 0;
  double min_weight = 0;
  long long negative_weights = 0;

  bool ok(double tol) const { return max_error <= tol && negative_weights == 0; }
};

/// Recomputes every per-edge weight sum from the clique vertices and weights.
CoverageReport verify_coverage(const MultipartiteGraph& g, const CliqueList& cliques,
                               std::span<const double> weights);

enum class Guarantee { certified, attempted };

struct SolveReport {
  int r = 0, s = 0, n = 0;
  long long edges = 0;
  long long missing_edges = 0;
  long long cliques = 0;
  int min_partite_degree = 0;
  bool admissible = true;
  Guarantee guarantee = Guarantee::attempted;
  Rational c_actual;
  Rational c_bound;
  std::optional<Rational> eta;
  int iterations = 0;
  double final_residual_inf = 0;
  double measured_contraction = 0;
  bool converged = false;
  double min_weight = 0;
  double max_edge_sum_error = 0;
  long long worst_edge = -1;
  bool verified = false;
  double verify_tol = 1e-8;
  double enumerate_seconds = 0;
  double solve_seconds = 0;
  double verify_seconds = 0;
};

struct Decomposition {
  CliqueList cliques;
  FractionalDecomposition weights;
  EdgeVector z;
  SolveReport report;
};

class DecompositionError : public std::runtime_error {
 public:
  enum class Kind { inadmissible, negative_weight, nonconvergence, out_of_scope };
  DecompositionError(Kind kind, const std::string& what, SolveReport report);
  Kind kind() const { return kind_; }
  const SolveReport& report() const { return report_; }

 private:
  Kind kind_;
  SolveReport report_;
};

/// Admissibility check, threshold comparison, Neumann solve, weight
/// extraction and independent coverage verification.
Decomposition decompose(const MultipartiteGraph& g, const SolveOptions& options = {},
                        double verify_tol = 1e-8);

}  // namespace fracclique
