#include "fracclique/solver.hpp"

#include "fracclique/parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace fracclique {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

CliqueList::CliqueList(const PartiteStructure& ps, std::vector<Vertex> vertices)
    : ps_(ps), vertices_(std::move(vertices)) {
  const int s = ps_.s;
  if (vertices_.size() % s != 0) throw std::invalid_argument("clique vertex list is ragged");
  count_ = static_cast<long long>(vertices_.size()) / s;
  edges_.reserve(static_cast<std::size_t>(count_) * edges_per_clique());
  for (long long k = 0; k < count_; ++k) {
    const Vertex* v = vertices_.data() + k * s;
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) edges_.push_back(natural_index(ps_, EdgeKey::make(v[a], v[b])));
  }
}

std::vector<long long> CliqueList::cliques_per_edge() const {
  std::vector<long long> counts(ps_.num_edges(), 0);
  for (long long e : edges_) ++counts[e];
  return counts;
}

CliqueList enumerate_cliques(const MultipartiteGraph& g) {
  const auto& ps = g.structure();
  const int s = ps.s;
  std::vector<Vertex> out;
  std::vector<int> parts(s);
  for (int i = 0; i < s; ++i) parts[i] = i;
  std::vector<Vertex> chosen(s);

  // Depth-first: extend with a vertex of parts[depth] adjacent to all chosen.
  auto extend = [&](auto&& self, int depth) -> void {
    if (depth == s) {
      out.insert(out.end(), chosen.begin(), chosen.end());
      return;
    }
    for (int i = 0; i < ps.n; ++i) {
      const Vertex v{parts[depth], i};
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) ok = g.has_edge(EdgeKey{chosen[d], v});
      if (!ok) continue;
      chosen[depth] = v;
      self(self, depth + 1);
    }
  };

  while (true) {
    extend(extend, 0);
    int i = s - 1;
    while (i >= 0 && parts[i] == ps.r - s + i) --i;
    if (i < 0) break;
    ++parts[i];
    for (int j = i + 1; j < s; ++j) parts[j] = parts[j - 1] + 1;
  }
  return CliqueList(ps, std::move(out));
}

EdgeVector apply_mg(const CliqueList& cliques, const EdgeVector& v, int workers) {
  const auto& ps = cliques.structure();
  workers = std::max(1, workers);
  std::vector<std::vector<double>> partial(workers);
  auto src = v.values();
  parallel_for(cliques.size(), workers, [&](long long b, long long e, int w) {
    auto& acc = partial[w];
    acc.assign(ps.num_edges(), 0.0);
    for (long long k = b; k < e; ++k) {
      const auto edges = cliques.edges(k);
      double sigma = 0;
      for (long long x : edges) sigma += src[x];
      for (long long x : edges) acc[x] += sigma;
    }
  });
  std::vector<double> out = std::move(partial[0]);
  out.resize(ps.num_edges(), 0.0);
  for (int w = 1; w < workers; ++w)
    for (std::size_t i = 0; i < partial[w].size(); ++i) out[i] += partial[w][i];
  return EdgeVector(ps, std::move(out));
}

namespace {

// Zeroes the entries of v on missing edges (keep_graph) or on E(G).
EdgeVector masked(const MultipartiteGraph& g, const EdgeVector& v, bool keep_graph) {
  EdgeVector out = v;
  auto dst = out.mutable_values();
  for (long long e = 0; e < out.size(); ++e)
    if (g.is_missing(e) == keep_graph) dst[e] = 0.0;
  return out;
}

// Graph rows mg_z - host_z + correction; missing rows stay zero.
EdgeVector assemble_delta(const MultipartiteGraph& g, const EdgeVector& mg_z,
                          const EdgeVector& host_z, const EdgeVector* correction) {
  EdgeVector out(g.structure());
  auto dst = out.mutable_values();
  for (long long e = 0; e < out.size(); ++e) {
    if (g.is_missing(e)) continue;
    dst[e] = mg_z[e] - host_z[e] + (correction ? (*correction)[e] : 0.0);
  }
  return out;
}

void check_graph_matches(const MultipartiteGraph& g, const CliqueList& cliques) {
  if (!(g.structure() == cliques.structure()))
    throw std::invalid_argument("clique list was built for a different host");
}

}  // namespace

EdgeVector apply_delta(const MultipartiteGraph& g, const CliqueList& cliques, const EdgeVector& z,
                       int workers) {
  check_graph_matches(g, cliques);
  EdgeVector zf = z;
  zf.refresh(workers);
  const EdgeVector mz = apply_mgamma(zf, workers);
  return assemble_delta(g, apply_mg(cliques, zf, workers), mz, nullptr);
}

EdgeVector apply_delta_eta(const MultipartiteGraph& g, const CliqueList& cliques,
                           const EdgeVector& z, const Rational& eta, int workers) {
  check_graph_matches(g, cliques);
  const auto& ps = g.structure();
  if (ps.r != ps.s + 1) throw std::invalid_argument("the eta path needs r = s + 1");
  EdgeVector zf = z;
  zf.refresh(workers);
  const EdgeVector mz = apply_mgamma(zf, workers);
  EdgeVector zhat = masked(g, z, false);
  zhat.refresh(workers);
  EdgeVector e2 = e2_operator(ps, -eta).apply(zhat, workers);
  return assemble_delta(g, apply_mg(cliques, zf, workers), mz, &e2);
}

NeumannResult neumann_solve(const MultipartiteGraph& g, const CliqueList& cliques,
                            const SolveOptions& options) {
  check_graph_matches(g, cliques);
  const auto& ps = g.structure();
  const int workers = options.workers;
  if (ps.r < ps.s + 1) throw std::invalid_argument("the solver needs r >= s + 1");
  std::optional<Rational> eta;
  if (ps.r == ps.s + 1) {
    eta = options.eta.value_or(eta_star(ps.s, ps.n));
    if (*eta <= 0) throw std::invalid_argument("eta must be positive");
    if (!options.allow_inadmissible && !check_admissible(g).admissible())
      throw std::invalid_argument("graph is not s-admissible");
  } else if (options.eta) {
    throw std::invalid_argument("an eta shift only applies when r = s + 1");
  }

  const SchemeOperator inverse = mgamma_inverse_operator(ps, eta);
  const SchemeOperator forward = eta ? mgamma_eta_operator(ps, *eta) : mgamma_operator(ps);
  std::optional<SchemeOperator> shift;
  if (eta) shift.emplace(e2_operator(ps, *eta));

  EdgeVector ones(ps, 1.0);
  ones.refresh(workers);
  NeumannResult result;
  result.eta = eta;
  result.z = inverse.apply(ones, workers);
  result.iterations = 1;

  double previous_step = -1;
  while (true) {
    EdgeVector& z = result.z;
    z.refresh(workers);
    const EdgeVector mz = forward.apply(z, workers);
    const EdgeVector mgz = apply_mg(cliques, z, workers);
    // With M = M_Gamma + eta E_2: Delta M^eta z = M_G z_G + eta E_2 ztilde - M z on
    // graph rows, where ztilde is z with the missing entries zeroed.
    std::optional<EdgeVector> e2tilde;
    if (shift) {
      EdgeVector ztilde = masked(g, z, true);
      ztilde.refresh(workers);
      e2tilde = shift->apply(ztilde, workers);
    }
    const EdgeVector dz = assemble_delta(g, mgz, mz, e2tilde ? &*e2tilde : nullptr);

    std::vector<double> rhs(ps.num_edges());
    double residual = 0;
    for (long long e = 0; e < z.size(); ++e) {
      rhs[e] = 1.0 - dz[e];
      residual = std::max(residual, std::abs(rhs[e] - mz[e]));
    }
    result.residual_inf = residual;
    if (!(residual < options.tol)) {
      if (!std::isfinite(residual) || residual > 1e100) break;
    } else {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iter) break;

    EdgeVector b(ps, std::move(rhs));
    b.refresh(workers);
    EdgeVector next = inverse.apply(b, workers);
    const double step = max_abs_diff(next.values(), z.values());
    // Ratios below the rounding floor carry no information.
    if (previous_step > 1e-9 * max_abs(z.values()))
      result.contraction = std::max(result.contraction, step / previous_step);
    previous_step = step;
    result.z = std::move(next);
    ++result.iterations;
  }
  return result;
}

NegativeWeightError::NegativeWeightError(long long natural_edge, double value)
    : std::runtime_error("negative solution entry " + std::to_string(value) + " on edge " +
                         std::to_string(natural_edge)),
      edge_(natural_edge),
      value_(value) {}

FractionalDecomposition extract_weights(const EdgeVector& y, const CliqueList& cliques,
                                        double clip_tol) {
  const auto src = y.values();
  const auto counts = cliques.cliques_per_edge();
  std::vector<double> clipped(src.begin(), src.end());
  for (long long e = 0; e < y.size(); ++e) {
    if (counts[e] == 0 || clipped[e] >= 0) continue;
    if (clipped[e] < -clip_tol) throw NegativeWeightError(e, clipped[e]);
    clipped[e] = 0.0;
  }
  FractionalDecomposition out;
  out.weights.resize(cliques.size());
  out.min_weight = cliques.size() ? std::numeric_limits<double>::infinity() : 0.0;
  for (long long k = 0; k < cliques.size(); ++k) {
    double raw = 0, w = 0;
    for (long long e : cliques.edges(k)) {
      raw += src[e];
      w += clipped[e];
    }
    out.weights[k] = w;
    out.min_weight = std::min(out.min_weight, raw);
  }
  return out;
}

CoverageReport verify_coverage(const MultipartiteGraph& g, const CliqueList& cliques,
                               std::span<const double> weights) {
  const auto& ps = g.structure();
  if (static_cast<long long>(weights.size()) != cliques.size())
    throw std::invalid_argument("weight count does not match clique count");
  CoverageReport rep;
  std::vector<double> sums(ps.num_edges(), 0.0);
  rep.min_weight = weights.empty() ? 0.0 : weights[0];
  for (long long k = 0; k < cliques.size(); ++k) {
    const auto vs = cliques.vertices(k);
    const double w = weights[k];
    rep.min_weight = std::min(rep.min_weight, w);
    if (w < 0) ++rep.negative_weights;
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        const EdgeKey e = EdgeKey::make(vs[a], vs[b]);
        if (!g.has_edge(e)) throw std::invalid_argument("weighted clique uses a missing edge");
        sums[natural_index(ps, e)] += w;
      }
  }
  for (long long e = 0; e < ps.num_edges(); ++e) {
    if (g.is_missing(e)) continue;
    const double err = std::abs(sums[e] - 1.0);
    if (rep.worst_edge < 0 || err > rep.max_error) {
      rep.max_error = err;
      rep.worst_edge = e;
      rep.worst_sum = sums[e];
    }
  }
  return rep;
}

DecompositionError::DecompositionError(Kind kind, const std::string& what, SolveReport report)
    : std::runtime_error(what), kind_(kind), report_(std::move(report)) {}

Decomposition decompose(const MultipartiteGraph& g, const SolveOptions& options,
                        double verify_tol) {
  const auto& ps = g.structure();
  Decomposition out;
  SolveReport& rep = out.report;
  rep.r = ps.r;
  rep.s = ps.s;
  rep.n = ps.n;
  rep.edges = g.edge_count();
  rep.missing_edges = g.missing_count();
  rep.min_partite_degree = g.min_partite_degree();
  rep.c_actual = g.defect_ratio();
  rep.verify_tol = verify_tol;
  if (ps.r == ps.s)
    throw DecompositionError(DecompositionError::Kind::out_of_scope,
                             "r = s is outside the solver's scope", rep);

  const AdmissibilityReport adm = check_admissible(g);
  rep.admissible = adm.admissible();
  rep.c_bound = threshold_c(ps.r, ps.s).exact;
  if (!rep.admissible && !options.allow_inadmissible)
    throw DecompositionError(DecompositionError::Kind::inadmissible,
                             "graph fails the s-admissibility conditions", rep);
  const bool default_eta = !options.eta || (ps.r == ps.s + 1 && *options.eta == eta_star(ps.s, ps.n));
  rep.guarantee = rep.admissible && default_eta && rep.c_actual <= rep.c_bound
                      ? Guarantee::certified
                      : Guarantee::attempted;

  auto start = std::chrono::steady_clock::now();
  out.cliques = enumerate_cliques(g);
  rep.enumerate_seconds = seconds_since(start);
  rep.cliques = out.cliques.size();

  start = std::chrono::steady_clock::now();
  SolveOptions solve_opts = options;
  solve_opts.allow_inadmissible = true;  // already screened above
  NeumannResult sol = neumann_solve(g, out.cliques, solve_opts);
  rep.solve_seconds = seconds_since(start);
  rep.eta = sol.eta;
  rep.iterations = sol.iterations;
  rep.final_residual_inf = sol.residual_inf;
  rep.measured_contraction = sol.contraction;
  rep.converged = sol.converged;
  if (!sol.converged)
    throw DecompositionError(DecompositionError::Kind::nonconvergence,
                             "Neumann iteration did not reach the residual tolerance", rep);
  out.z = std::move(sol.z);

  try {
    out.weights = extract_weights(out.z, out.cliques, options.clip_tol);
  } catch (const NegativeWeightError& err) {
    rep.worst_edge = err.edge();
    throw DecompositionError(DecompositionError::Kind::negative_weight, err.what(), rep);
  }
  rep.min_weight = out.weights.min_weight;

  start = std::chrono::steady_clock::now();
  const CoverageReport cov = verify_coverage(g, out.cliques, out.weights.weights);
  rep.verify_seconds = seconds_since(start);
  rep.max_edge_sum_error = cov.max_error;
  rep.worst_edge = cov.worst_edge;
  rep.verified = cov.ok(verify_tol);
  return out;
}

}  // namespace fracclique
