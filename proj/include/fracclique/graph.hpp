#pragma once

#include "fracclique/rational.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace fracclique {

/// Shape of the balanced complete r-partite host: r parts of n vertices, with
/// s the order of the cliques being packed.
struct PartiteStructure {
  int r = 0;
  int n = 0;
  int s = 0;

  /// Throws std::invalid_argument unless r >= s >= 3 and n >= 1.
  void validate() const;

  int num_vertices() const { return r * n; }
  int num_part_pairs() const { return r * (r - 1) / 2; }
  long long num_edges() const { return static_cast<long long>(num_part_pairs()) * n * n; }

  /// Lexicographic rank of the part pair (p1, p2), p1 < p2.
  int pair_index(int p1, int p2) const;

  friend bool operator==(const PartiteStructure&, const PartiteStructure&) = default;
};

struct Vertex {
  int part = 0;
  int index = 0;

  int id(int n) const { return part * n + index; }
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// An edge of the host, stored with a.part < b.part.
struct EdgeKey {
  Vertex a;
  Vertex b;

  /// Orders the endpoints; throws if both lie in the same part.
  static EdgeKey make(Vertex u, Vertex w);

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Natural index: part pairs in lexicographic order, then (i1, i2).
long long natural_index(const PartiteStructure& ps, const EdgeKey& e);
EdgeKey edge_at(const PartiteStructure& ps, long long natural);

/// Bijection between natural indices and the graph-first ordering in which
/// every edge of G precedes every missing edge (stable within each block).
class EdgeIndexing {
 public:
  EdgeIndexing() = default;
  EdgeIndexing(std::span<const std::uint8_t> missing_mask);

  long long size() const { return static_cast<long long>(to_natural_.size()); }
  long long graph_edge_count() const { return graph_edges_; }
  long long position(long long natural) const { return to_position_[natural]; }
  long long natural(long long position) const { return to_natural_[position]; }
  std::span<const long long> graph_first_order() const { return to_natural_; }

 private:
  std::vector<long long> to_natural_;
  std::vector<long long> to_position_;
  long long graph_edges_ = 0;
};

/// Balanced r-partite graph G stored as the host minus a set of missing edges.
class MultipartiteGraph {
 public:
  explicit MultipartiteGraph(PartiteStructure ps);

  const PartiteStructure& structure() const { return ps_; }

  bool has_edge(const EdgeKey& e) const { return !missing_[natural_index(ps_, e)]; }
  bool is_missing(long long natural) const { return missing_[natural] != 0; }
  std::span<const std::uint8_t> missing_mask() const { return missing_; }
  long long missing_count() const { return missing_count_; }
  long long edge_count() const { return ps_.num_edges() - missing_count_; }

  /// Missing edges in natural order.
  std::vector<EdgeKey> missing_edges() const;

  /// d(v, V_k); zero when k is v's own part.
  int degree(Vertex v, int part) const { return degree_[v.id(ps_.n) * ps_.r + part]; }
  int degree(Vertex v) const;
  /// Partite minimum degree.
  int min_partite_degree() const;
  /// |E(V_i, V_j)|.
  long long pair_count(int i, int j) const;

  /// (n - min partite degree) / n: the smallest c with min degree >= (1 - c) n.
  Rational defect_ratio() const;

  EdgeIndexing indexing() const { return EdgeIndexing(missing_); }

  /// Throws std::invalid_argument if the edge is already missing.
  void remove_edge(const EdgeKey& e);

 private:
  PartiteStructure ps_;
  std::vector<std::uint8_t> missing_;
  long long missing_count_ = 0;
  std::vector<int> degree_;
  std::vector<long long> pair_counts_;
};

MultipartiteGraph make_complete(int r, int s, int n);
MultipartiteGraph delete_edges(MultipartiteGraph g, std::span<const EdgeKey> edges);
/// Removes the clique on one vertex per part; `indices[p]` selects the vertex
/// of part p. Throws if the selection has the wrong length or an edge is gone.
MultipartiteGraph delete_transversal_clique(MultipartiteGraph g, std::span<const int> indices);

struct PairViolation {
  int i = 0;
  int j = 0;
  long long count = 0;  ///< |E(V_i, V_j)|
  Rational required;    ///< (d_i + d_j)/(s-1) - |E(G)|/C(s,2)
};

struct AdmissibilityReport {
  bool nec1_ok = true;
  std::vector<std::pair<Vertex, int>> nec1_violations;
  bool nec2_checked = false;  ///< only when r = s + 1
  bool nec2_ok = true;
  std::vector<PairViolation> nec2_violations;
  std::vector<Rational> x_values;   ///< x_l, r = s + 1 only
  std::vector<long long> d_values;  ///< d_l for every part
  std::vector<std::vector<long long>> pair_counts;

  bool admissible() const { return nec1_ok && nec2_ok; }
};

AdmissibilityReport check_admissible(const MultipartiteGraph& g);

struct ThresholdBounds {
  Rational exact;       ///< depends on (r, s)
  Rational simplified;  ///< depends on s only
};

/// Sufficient partite-degree defect bounds. Requires s >= 3 and r >= s + 1.
ThresholdBounds threshold_c(int r, int s);

struct DefectSpec {
  int count = 0;  ///< transversal cliques (r = s + 1) or single edges (r >= s + 2)
  int cap = 1;    ///< max missing edges per vertex per foreign part
};

/// Random s-admissible instance. For r = s + 1 removes `count` random
/// transversal cliques, otherwise `count` random edges; never lets a vertex
/// lose more than `cap` neighbours in any part. Throws std::invalid_argument
/// if the cap can violate the degree condition or the count cannot be placed.
MultipartiteGraph generate_admissible_instance(int r, int s, int n, DefectSpec defects,
                                               std::uint64_t seed);

}  // namespace fracclique
