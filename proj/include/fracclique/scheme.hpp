#pragma once

// The 5-class association scheme on the edge set of the balanced complete
// r-partite graph, with O(|E|) matrix-free application of its Bose-Mesner
// algebra.

#include "fracclique/graph.hpp"
#include "fracclique/rational.hpp"

#include <array>
#include <span>
#include <vector>

namespace fracclique {

inline constexpr int kNumClasses = 6;

/// Relation between two host edges:
///   0 identical
///   1 same two parts, one shared vertex
///   2 same two parts, disjoint
///   3 one shared part, shared vertex
///   4 one shared part, disjoint
///   5 no shared part
int classify(const EdgeKey& e1, const EdgeKey& e2);

/// p_ij^k. Requires r >= 4 and n >= 1.
long long intersection_number(int i, int j, int k, int r, int n);
long long valency(int j, int r, int n);

using Matrix6Q = std::array<std::array<Rational, kNumClasses>, kNumClasses>;

Matrix6Q multiply(const Matrix6Q& a, const Matrix6Q& b);
Matrix6Q identity6();

/// First (C) and second (D) eigenmatrices: A_i = sum_j C(i,j) E_j and
/// E_i = sum_j D(i,j) A_j.
struct Eigenmatrices {
  Matrix6Q C;
  Matrix6Q D;
};

Eigenmatrices eigenmatrices(int r, int n);

enum class Basis { adjacency, idempotent };

/// Element of the Bose-Mesner algebra in either basis.
struct SchemeElement {
  Basis basis = Basis::adjacency;
  std::array<Rational, kNumClasses> coeff{};

  static SchemeElement adjacency(int i);
  static SchemeElement idempotent(int i);

  SchemeElement in_basis(Basis target, const Eigenmatrices& eig) const;
  /// A-basis coefficients as doubles, ready for application.
  std::array<double, kNumClasses> adjacency_coefficients(const Eigenmatrices& eig) const;
};

/// Per-vector sums the adjacency operators are assembled from.
struct EdgeAggregates {
  double total = 0;                ///< T
  std::vector<double> pair_sum;    ///< P(i,j), r x r, zero diagonal
  std::vector<double> part_sum;    ///< sum_k P(i,k)
  std::vector<double> vertex_sum;  ///< Q(v,k), vertex x part
  std::vector<double> vertex_tot;  ///< sum_k Q(v,k)
};

/// Real vector on E(Gamma) in natural edge order, with cached aggregates.
class EdgeVector {
 public:
  EdgeVector() = default;
  explicit EdgeVector(const PartiteStructure& ps, double fill = 0.0);
  EdgeVector(const PartiteStructure& ps, std::vector<double> values);

  const PartiteStructure& structure() const { return ps_; }
  long long size() const { return static_cast<long long>(values_.size()); }
  std::span<const double> values() const { return values_; }
  /// Invalidates the aggregates.
  std::span<double> mutable_values() {
    fresh_ = false;
    return values_;
  }
  double operator[](long long e) const { return values_[e]; }

  bool fresh() const { return fresh_; }
  /// Recomputes T, P and Q in O(|E|).
  EdgeVector& refresh(int workers = 1);
  /// Throws std::logic_error when the values changed since the last refresh.
  const EdgeAggregates& aggregates() const;

 private:
  PartiteStructure ps_;
  std::vector<double> values_;
  EdgeAggregates agg_;
  bool fresh_ = false;
};

double max_abs(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// A_i v. Requires fresh aggregates on v.
EdgeVector apply_adjacency(int i, const EdgeVector& v, int workers = 1);
/// sum_j coeff[j] A_j v in a single pass.
EdgeVector apply_adjacency_combination(const std::array<double, kNumClasses>& coeff,
                                       const EdgeVector& v, int workers = 1);
/// E_i v.
EdgeVector apply_idempotent(int i, const EdgeVector& v, const Eigenmatrices& eig, int workers = 1);
EdgeVector apply_scheme_element(const SchemeElement& elem, const EdgeVector& v,
                                const Eigenmatrices& eig, int workers = 1);

}  // namespace fracclique
