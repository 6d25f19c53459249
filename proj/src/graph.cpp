#include "fracclique/graph.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace fracclique {

void PartiteStructure::validate() const {
  if (s < 3) throw std::invalid_argument("clique order s must be at least 3");
  if (r < s) throw std::invalid_argument("part count r must be at least s");
  if (n < 1) throw std::invalid_argument("part size n must be at least 1");
}

int PartiteStructure::pair_index(int p1, int p2) const {
  // pairs (0,1),(0,2),...,(0,r-1),(1,2),...
  return p1 * (2 * r - p1 - 1) / 2 + (p2 - p1 - 1);
}

EdgeKey EdgeKey::make(Vertex u, Vertex w) {
  if (u.part == w.part) throw std::invalid_argument("edge endpoints lie in the same part");
  if (u.part > w.part) std::swap(u, w);
  return EdgeKey{u, w};
}

long long natural_index(const PartiteStructure& ps, const EdgeKey& e) {
  const long long nn = static_cast<long long>(ps.n) * ps.n;
  return ps.pair_index(e.a.part, e.b.part) * nn + static_cast<long long>(e.a.index) * ps.n +
         e.b.index;
}

EdgeKey edge_at(const PartiteStructure& ps, long long natural) {
  const long long nn = static_cast<long long>(ps.n) * ps.n;
  int pair = static_cast<int>(natural / nn);
  const long long within = natural % nn;
  int p1 = 0;
  while (pair >= ps.r - 1 - p1) {
    pair -= ps.r - 1 - p1;
    ++p1;
  }
  const int p2 = p1 + 1 + pair;
  return EdgeKey{{p1, static_cast<int>(within / ps.n)}, {p2, static_cast<int>(within % ps.n)}};
}

EdgeIndexing::EdgeIndexing(std::span<const std::uint8_t> missing_mask) {
  const auto total = static_cast<long long>(missing_mask.size());
  to_natural_.reserve(missing_mask.size());
  for (long long e = 0; e < total; ++e)
    if (!missing_mask[e]) to_natural_.push_back(e);
  graph_edges_ = static_cast<long long>(to_natural_.size());
  for (long long e = 0; e < total; ++e)
    if (missing_mask[e]) to_natural_.push_back(e);
  to_position_.assign(missing_mask.size(), 0);
  for (long long p = 0; p < total; ++p) to_position_[to_natural_[p]] = p;
}

MultipartiteGraph::MultipartiteGraph(PartiteStructure ps) : ps_(ps) {
  ps_.validate();
  missing_.assign(ps_.num_edges(), 0);
  degree_.assign(static_cast<std::size_t>(ps_.num_vertices()) * ps_.r, ps_.n);
  for (int v = 0; v < ps_.num_vertices(); ++v) degree_[v * ps_.r + v / ps_.n] = 0;
  pair_counts_.assign(ps_.num_part_pairs(), static_cast<long long>(ps_.n) * ps_.n);
}

std::vector<EdgeKey> MultipartiteGraph::missing_edges() const {
  std::vector<EdgeKey> out;
  out.reserve(missing_count_);
  for (long long e = 0; e < static_cast<long long>(missing_.size()); ++e)
    if (missing_[e]) out.push_back(edge_at(ps_, e));
  return out;
}

int MultipartiteGraph::degree(Vertex v) const {
  int total = 0;
  for (int k = 0; k < ps_.r; ++k) total += degree(v, k);
  return total;
}

int MultipartiteGraph::min_partite_degree() const {
  int best = ps_.n;
  for (int v = 0; v < ps_.num_vertices(); ++v)
    for (int k = 0; k < ps_.r; ++k)
      if (k != v / ps_.n) best = std::min(best, degree_[v * ps_.r + k]);
  return best;
}

long long MultipartiteGraph::pair_count(int i, int j) const {
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  return pair_counts_[ps_.pair_index(i, j)];
}

Rational MultipartiteGraph::defect_ratio() const {
  return Rational(Integer(ps_.n - min_partite_degree()), Integer(ps_.n));
}

void MultipartiteGraph::remove_edge(const EdgeKey& e) {
  if (e.a.part == e.b.part || e.a.part > e.b.part)
    throw std::invalid_argument("edge key is not canonical");
  if (e.a.part < 0 || e.b.part >= ps_.r || e.a.index < 0 || e.a.index >= ps_.n ||
      e.b.index < 0 || e.b.index >= ps_.n)
    throw std::invalid_argument("edge endpoint out of range");
  const long long idx = natural_index(ps_, e);
  if (missing_[idx]) throw std::invalid_argument("edge is already missing");
  missing_[idx] = 1;
  ++missing_count_;
  --degree_[e.a.id(ps_.n) * ps_.r + e.b.part];
  --degree_[e.b.id(ps_.n) * ps_.r + e.a.part];
  --pair_counts_[ps_.pair_index(e.a.part, e.b.part)];
}

MultipartiteGraph make_complete(int r, int s, int n) {
  return MultipartiteGraph(PartiteStructure{r, n, s});
}

MultipartiteGraph delete_edges(MultipartiteGraph g, std::span<const EdgeKey> edges) {
  for (const auto& e : edges) g.remove_edge(e);
  return g;
}

MultipartiteGraph delete_transversal_clique(MultipartiteGraph g, std::span<const int> indices) {
  const auto& ps = g.structure();
  if (static_cast<int>(indices.size()) != ps.r)
    throw std::invalid_argument("transversal must select exactly one vertex per part");
  for (int p = 0; p < ps.r; ++p)
    if (indices[p] < 0 || indices[p] >= ps.n)
      throw std::invalid_argument("transversal vertex index out of range");
  for (int p = 0; p < ps.r; ++p)
    for (int q = p + 1; q < ps.r; ++q)
      if (!g.has_edge(EdgeKey{{p, indices[p]}, {q, indices[q]}}))
        throw std::invalid_argument("transversal clique edge already missing");
  for (int p = 0; p < ps.r; ++p)
    for (int q = p + 1; q < ps.r; ++q) g.remove_edge(EdgeKey{{p, indices[p]}, {q, indices[q]}});
  return g;
}

AdmissibilityReport check_admissible(const MultipartiteGraph& g) {
  const auto& ps = g.structure();
  AdmissibilityReport rep;

  for (int p = 0; p < ps.r; ++p)
    for (int i = 0; i < ps.n; ++i) {
      const Vertex v{p, i};
      const long long dv = g.degree(v);
      for (int k = 0; k < ps.r; ++k) {
        if (k == p) continue;
        if (static_cast<long long>(ps.s - 1) * g.degree(v, k) > dv) {
          rep.nec1_ok = false;
          rep.nec1_violations.emplace_back(v, k);
        }
      }
    }

  rep.pair_counts.assign(ps.r, std::vector<long long>(ps.r, 0));
  rep.d_values.assign(ps.r, 0);
  for (int i = 0; i < ps.r; ++i)
    for (int j = 0; j < ps.r; ++j) {
      rep.pair_counts[i][j] = g.pair_count(i, j);
      rep.d_values[i] += rep.pair_counts[i][j];
    }

  if (ps.r == ps.s + 1) {
    rep.nec2_checked = true;
    const long long s = ps.s;
    const long long edges = g.edge_count();
    // Scaled by s(s-1): s(s-1)|E_ij| = s(d_i + d_j) - 2|E(G)|.
    for (int i = 0; i < ps.r; ++i)
      for (int j = i + 1; j < ps.r; ++j) {
        const long long lhs = s * (s - 1) * rep.pair_counts[i][j];
        const long long rhs = s * (rep.d_values[i] + rep.d_values[j]) - 2 * edges;
        if (lhs != rhs) {
          rep.nec2_ok = false;
          rep.nec2_violations.push_back(
              {i, j, rep.pair_counts[i][j], Rational(Integer(rhs), Integer(s * (s - 1)))});
        }
      }
    for (int l = 0; l < ps.r; ++l) {
      rep.x_values.emplace_back(Integer(2 * edges - s * rep.d_values[l]), Integer(s * (s - 1)));
      if (rep.x_values.back() < 0) rep.nec2_ok = false;
    }
  }
  return rep;
}

ThresholdBounds threshold_c(int r, int s) {
  if (s < 3) throw std::invalid_argument("threshold requires s >= 3");
  if (r <= s) throw std::invalid_argument("threshold requires r >= s + 1");
  const Integer S = s;
  const Integer R = r;
  ThresholdBounds b;
  if (r >= s + 2) {
    const Integer poly = R * R * (2 * S * S - 4 * S + 1) + R * (-12 * S * S + 26 * S - 9) +
                         (17 * S * S - 39 * S + 16);
    b.exact = Rational((R - S) * (R - S - 1), (S - 2) * (S + 1) * poly);
    b.simplified = Rational(Integer(1), (S - 2) * (S + 1) * pow(S - 1, 4));
  } else {
    const Integer quintic = pow(S, 5) + pow(S, 4) - 3 * pow(S, 3) - S * S + 2 * S + 16;
    const Integer cubic = 3 * pow(S, 3) - 11 * S * S + 12 * S - 3;
    b.exact = Rational(S * (S - 1) * (S - 1) * (S + 2), (S - 2) * quintic * cubic);
    b.simplified = Rational(Integer(1), 3 * pow(S, 3) * (S - 2) * (S - 2));
  }
  return b;
}

MultipartiteGraph generate_admissible_instance(int r, int s, int n, DefectSpec defects,
                                               std::uint64_t seed) {
  MultipartiteGraph g = make_complete(r, s, n);
  if (defects.count < 0) throw std::invalid_argument("defect count must be nonnegative");
  if (defects.count == 0) return g;
  if (defects.cap < 1 || defects.cap > n)
    throw std::invalid_argument("defect cap must lie in [1, n]");
  // One part at full degree n, the rest at n - cap, must still satisfy
  // (s-1) d(v,V_k) <= d(v). Transversal deletions keep every vertex balanced.
  if (r != s + 1 &&
      static_cast<long long>(s - 2) * n > static_cast<long long>(r - 2) * (n - defects.cap))
    throw std::invalid_argument("defect cap " + std::to_string(defects.cap) +
                                " can break the degree condition at n = " + std::to_string(n));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_index(0, n - 1);
  std::uniform_int_distribution<int> pick_part(0, r - 1);
  const auto lost = [&](Vertex v, int k) { return n - g.degree(v, k); };
  const long long max_attempts = 1000LL * defects.count + 10000;

  int placed = 0;
  for (long long attempt = 0; placed < defects.count && attempt < max_attempts; ++attempt) {
    if (r == s + 1) {
      std::vector<int> idx(r);
      for (auto& i : idx) i = pick_index(rng);
      bool ok = true;
      for (int p = 0; p < r && ok; ++p) {
        if (lost({p, idx[p]}, (p + 1) % r) >= defects.cap) ok = false;
        for (int q = p + 1; q < r && ok; ++q)
          if (!g.has_edge(EdgeKey{{p, idx[p]}, {q, idx[q]}})) ok = false;
      }
      if (!ok) continue;
      g = delete_transversal_clique(std::move(g), idx);
    } else {
      const int p = pick_part(rng);
      int q = pick_part(rng);
      if (p == q) continue;
      const Vertex u{p, pick_index(rng)};
      const Vertex w{q, pick_index(rng)};
      const auto e = EdgeKey::make(u, w);
      if (!g.has_edge(e) || lost(u, q) >= defects.cap || lost(w, p) >= defects.cap) continue;
      g.remove_edge(e);
    }
    ++placed;
  }
  if (placed < defects.count)
    throw std::invalid_argument("could not place " + std::to_string(defects.count) +
                                " defects under cap " + std::to_string(defects.cap));
  return g;
}

}  // namespace fracclique
