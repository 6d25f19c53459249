#include "fracclique/oracle.hpp"

#include "fracclique/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracclique::oracle {

void check_cap(const PartiteStructure& ps, long long cap) {
  if (ps.num_edges() > cap)
    throw std::length_error("dense oracle refused: " + std::to_string(ps.num_edges()) +
                            " edges exceeds cap " + std::to_string(cap));
}

namespace {

PartiteStructure scheme_structure(int r, int n) {
  if (r < 4) throw std::invalid_argument("the edge scheme needs at least 4 parts");
  if (n < 1) throw std::invalid_argument("part size must be positive");
  return PartiteStructure{r, n, 3};
}

std::vector<EdgeKey> all_edges(const PartiteStructure& ps) {
  std::vector<EdgeKey> edges;
  edges.reserve(ps.num_edges());
  for (long long e = 0; e < ps.num_edges(); ++e) edges.push_back(edge_at(ps, e));
  return edges;
}

// Full clique-pair count matrix over all host edges in natural order.
DenseMatrix clique_pair_counts(const MultipartiteGraph& g) {
  const auto& ps = g.structure();
  DenseMatrix m = DenseMatrix::Zero(ps.num_edges(), ps.num_edges());
  for (const auto& clique : brute_cliques(g)) {
    std::vector<long long> edges;
    for (std::size_t a = 0; a < clique.size(); ++a)
      for (std::size_t b = a + 1; b < clique.size(); ++b)
        edges.push_back(natural_index(ps, EdgeKey::make(clique[a], clique[b])));
    for (long long x : edges)
      for (long long y : edges) m(x, y) += 1.0;
  }
  return m;
}

DenseMatrix permuted(const DenseMatrix& natural, const EdgeIndexing& idx) {
  const long long size = idx.size();
  DenseMatrix out(size, size);
  for (long long i = 0; i < size; ++i)
    for (long long j = 0; j < size; ++j) out(i, j) = natural(idx.natural(i), idx.natural(j));
  return out;
}

}  // namespace

DenseMatrix dense_adjacency(int i, int r, int n, long long cap) {
  const auto ps = scheme_structure(r, n);
  check_cap(ps, cap);
  const auto edges = all_edges(ps);
  const auto size = static_cast<long long>(edges.size());
  DenseMatrix m = DenseMatrix::Zero(size, size);
  for (long long x = 0; x < size; ++x)
    for (long long y = 0; y < size; ++y)
      if (classify(edges[x], edges[y]) == i) m(x, y) = 1.0;
  return m;
}

DenseMatrix dense_idempotent(int i, int r, int n, long long cap) {
  const Eigenmatrices eig = eigenmatrices(r, n);
  const auto ps = scheme_structure(r, n);
  check_cap(ps, cap);
  const auto edges = all_edges(ps);
  const auto size = static_cast<long long>(edges.size());
  std::array<double, kNumClasses> coeff{};
  for (int j = 0; j < kNumClasses; ++j) coeff[j] = to_double(eig.D[i][j]);
  DenseMatrix m(size, size);
  for (long long x = 0; x < size; ++x)
    for (long long y = 0; y < size; ++y) m(x, y) = coeff[classify(edges[x], edges[y])];
  return m;
}

std::vector<std::vector<Vertex>> brute_cliques(const MultipartiteGraph& g) {
  const auto& ps = g.structure();
  const int total = ps.num_vertices();
  const int s = ps.s;
  std::vector<std::vector<Vertex>> out;
  std::vector<int> pick(s);
  for (int i = 0; i < s; ++i) pick[i] = i;
  while (true) {
    std::vector<Vertex> vs;
    for (int id : pick) vs.push_back(Vertex{id / ps.n, id % ps.n});
    bool ok = true;
    for (int a = 0; a < s && ok; ++a)
      for (int b = a + 1; b < s && ok; ++b)
        ok = vs[a].part != vs[b].part && g.has_edge(EdgeKey::make(vs[a], vs[b]));
    if (ok) out.push_back(std::move(vs));
    int i = s - 1;
    while (i >= 0 && pick[i] == total - s + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

DenseMatrix brute_mgamma(int r, int s, int n, long long cap) {
  const MultipartiteGraph host = make_complete(r, s, n);
  check_cap(host.structure(), cap);
  return clique_pair_counts(host);
}

DenseMatrix brute_mg(const MultipartiteGraph& g, long long cap) {
  check_cap(g.structure(), cap);
  const EdgeIndexing idx = g.indexing();
  const DenseMatrix full = permuted(clique_pair_counts(g), idx);
  const long long m = idx.graph_edge_count();
  return full.topLeftCorner(m, m);
}

DenseMatrix dense_host(const MultipartiteGraph& g, std::optional<double> eta, long long cap) {
  const auto& ps = g.structure();
  check_cap(ps, cap);
  DenseMatrix host = clique_pair_counts(make_complete(ps.r, ps.s, ps.n));
  if (eta) host += *eta * dense_idempotent(2, ps.r, ps.n, cap);
  return permuted(host, g.indexing());
}

DenseMatrix dense_delta(const MultipartiteGraph& g, std::optional<double> eta, long long cap) {
  const auto& ps = g.structure();
  check_cap(ps, cap);
  const EdgeIndexing idx = g.indexing();
  const long long m = idx.graph_edge_count();
  const long long size = idx.size();
  const DenseMatrix host = dense_host(g, eta, cap);
  DenseMatrix mg = brute_mg(g, cap);
  if (eta) {
    const DenseMatrix e2 = permuted(dense_idempotent(2, ps.r, ps.n, cap), idx);
    mg += *eta * e2.topLeftCorner(m, m);
  }
  DenseMatrix delta = DenseMatrix::Zero(size, size);
  delta.topLeftCorner(m, m) = mg - host.topLeftCorner(m, m);
  delta.topRightCorner(m, size - m) = -host.topRightCorner(m, size - m);
  return delta;
}

std::vector<double> dense_solve(const MultipartiteGraph& g, std::optional<double> eta,
                                long long cap) {
  const DenseMatrix system = dense_host(g, eta, cap) + dense_delta(g, eta, cap);
  Eigen::PartialPivLU<DenseMatrix> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13))
    throw std::runtime_error("dense system is numerically singular (rcond " +
                             std::to_string(rcond) + ")");
  const Eigen::VectorXd z = lu.solve(Eigen::VectorXd::Ones(system.rows()));
  return to_natural(g.indexing(), z);
}

std::vector<double> numeric_spectrum(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<double, long long>> group_eigenvalues(const std::vector<double>& sorted,
                                                            double tol) {
  std::vector<std::pair<double, long long>> groups;
  double start = 0, sum = 0;
  long long count = 0;
  for (double x : sorted) {
    if (count > 0 && x - start > tol) {
      groups.emplace_back(sum / count, count);
      count = 0;
      sum = 0;
    }
    if (count == 0) start = x;
    sum += x;
    ++count;
  }
  if (count > 0) groups.emplace_back(sum / count, count);
  return groups;
}

double dense_inf_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double max_abs_entry(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string CensusMismatch::describe(int r, int n) const {
  return "p_" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) + " at (r,n)=(" +
         std::to_string(r) + "," + std::to_string(n) + "): table " + std::to_string(expected) +
         ", counted " + std::to_string(found);
}

CensusResult brute_relation_census(int r, int n, long long cap) {
  const auto ps = scheme_structure(r, n);
  check_cap(ps, cap);
  const auto edges = all_edges(ps);
  const auto size = static_cast<long long>(edges.size());
  std::vector<int> cls(static_cast<std::size_t>(size * size));
  for (long long x = 0; x < size; ++x)
    for (long long y = 0; y < size; ++y) cls[x * size + y] = classify(edges[x], edges[y]);

  CensusResult res;
  std::array<std::array<std::array<bool, 6>, 6>, 6> reported{};
  for (long long x = 0; x < size; ++x)
    for (long long y = 0; y < size; ++y) {
      const int k = cls[x * size + y];
      ++res.class_pairs[k];
      ++res.anchor_pairs;
      long long count[6][6] = {};
      for (long long z = 0; z < size; ++z) ++count[cls[x * size + z]][cls[z * size + y]];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const long long expected = intersection_number(i, j, k, r, n);
          if (count[i][j] != expected && !reported[i][j][k]) {
            reported[i][j][k] = true;
            res.mismatches.push_back({i, j, k, expected, count[i][j]});
          }
        }
    }
  return res;
}

Eigen::VectorXd to_positions(const EdgeIndexing& idx, std::span<const double> natural) {
  Eigen::VectorXd out(idx.size());
  for (long long p = 0; p < idx.size(); ++p) out(p) = natural[idx.natural(p)];
  return out;
}

std::vector<double> to_natural(const EdgeIndexing& idx, const Eigen::VectorXd& positions) {
  std::vector<double> out(idx.size());
  for (long long p = 0; p < idx.size(); ++p) out[idx.natural(p)] = positions(p);
  return out;
}

}  // namespace fracclique::oracle
