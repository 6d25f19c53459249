#include "fracclique/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace fracclique::io {

json graph_to_json(const MultipartiteGraph& g) {
  const auto& ps = g.structure();
  json missing = json::array();
  for (const auto& e : g.missing_edges())
    missing.push_back({e.a.part, e.a.index, e.b.part, e.b.index});
  return json{{"r", ps.r}, {"s", ps.s}, {"n", ps.n}, {"missing_edges", std::move(missing)}};
}

MultipartiteGraph graph_from_json(const json& j) {
  for (const char* key : {"r", "s", "n", "missing_edges"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("graph JSON lacks \"") + key + "\"");
  const PartiteStructure ps{j.at("r").get<int>(), j.at("n").get<int>(), j.at("s").get<int>()};
  MultipartiteGraph g(ps);
  for (const auto& rec : j.at("missing_edges")) {
    if (!rec.is_array() || rec.size() != 4)
      throw std::invalid_argument("missing edge must be [p1, i1, p2, i2]");
    const int p1 = rec[0].get<int>(), i1 = rec[1].get<int>();
    const int p2 = rec[2].get<int>(), i2 = rec[3].get<int>();
    if (p1 == p2) throw std::invalid_argument("missing edge joins two vertices of one part");
    if (p1 > p2) throw std::invalid_argument("missing edge must list the lower part first");
    const EdgeKey e{{p1, i1}, {p2, i2}};
    try {
      g.remove_edge(e);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("missing edge [" + std::to_string(p1) + "," + std::to_string(i1) +
                                  "," + std::to_string(p2) + "," + std::to_string(i2) +
                                  "]: " + err.what());
    }
  }
  return g;
}

json admissibility_to_json(const MultipartiteGraph& g, const AdmissibilityReport& rep) {
  json nec1 = json::array();
  for (const auto& [v, k] : rep.nec1_violations)
    nec1.push_back({{"vertex", {v.part, v.index}}, {"part", k}, {"d_v_part", g.degree(v, k)},
                    {"d_v", g.degree(v)}});
  json nec2 = json::array();
  for (const auto& viol : rep.nec2_violations)
    nec2.push_back({{"pair", {viol.i, viol.j}},
                    {"count", viol.count},
                    {"required", to_string(viol.required)}});
  json x = json::array();
  for (const auto& q : rep.x_values) x.push_back(to_string(q));
  json out{{"admissible", rep.admissible()},
           {"nec1_ok", rep.nec1_ok},
           {"nec1_violations", std::move(nec1)},
           {"nec2_checked", rep.nec2_checked},
           {"nec2_ok", rep.nec2_ok},
           {"nec2_violations", std::move(nec2)},
           {"x_values", std::move(x)},
           {"d_values", rep.d_values},
           {"pair_counts", rep.pair_counts},
           {"edges", g.edge_count()},
           {"min_partite_degree", g.min_partite_degree()},
           {"c_actual", to_string(g.defect_ratio())}};
  return out;
}

json weights_to_json(const MultipartiteGraph& g, const CliqueList& cliques,
                     std::span<const double> weights, bool include_zero) {
  const auto& ps = g.structure();
  json records = json::array();
  for (long long k = 0; k < cliques.size(); ++k) {
    if (weights[k] == 0.0 && !include_zero) continue;
    json verts = json::array();
    for (const auto& v : cliques.vertices(k)) verts.push_back({v.part, v.index});
    records.push_back({{"clique", std::move(verts)}, {"weight", weights[k]}});
  }
  return json{{"r", ps.r}, {"s", ps.s}, {"n", ps.n}, {"weights", std::move(records)}};
}

std::pair<CliqueList, std::vector<double>> weights_from_json(const MultipartiteGraph& g,
                                                             const json& j) {
  const auto& ps = g.structure();
  if (j.at("r").get<int>() != ps.r || j.at("s").get<int>() != ps.s || j.at("n").get<int>() != ps.n)
    throw std::invalid_argument("weights file was written for a different (r, s, n)");
  std::vector<Vertex> vertices;
  std::vector<double> weights;
  std::set<std::vector<Vertex>> seen;
  for (const auto& rec : j.at("weights")) {
    std::vector<Vertex> vs;
    for (const auto& v : rec.at("clique")) vs.push_back(Vertex{v.at(0).get<int>(), v.at(1).get<int>()});
    if (static_cast<int>(vs.size()) != ps.s) throw std::invalid_argument("clique has the wrong size");
    std::sort(vs.begin(), vs.end());
    for (std::size_t a = 0; a < vs.size(); ++a) {
      if (vs[a].part < 0 || vs[a].part >= ps.r || vs[a].index < 0 || vs[a].index >= ps.n)
        throw std::invalid_argument("clique vertex out of range");
      for (std::size_t b = a + 1; b < vs.size(); ++b)
        if (vs[a].part == vs[b].part || !g.has_edge(EdgeKey::make(vs[a], vs[b])))
          throw std::invalid_argument("record is not a clique of the graph");
    }
    if (!seen.insert(vs).second) throw std::invalid_argument("clique listed twice");
    vertices.insert(vertices.end(), vs.begin(), vs.end());
    weights.push_back(rec.at("weight").get<double>());
  }
  return {CliqueList(ps, std::move(vertices)), std::move(weights)};
}

json report_to_json(const SolveReport& rep) {
  json out{{"r", rep.r},
           {"s", rep.s},
           {"n", rep.n},
           {"edges", rep.edges},
           {"missing_edges", rep.missing_edges},
           {"cliques", rep.cliques},
           {"min_partite_degree", rep.min_partite_degree},
           {"admissible", rep.admissible},
           {"guarantee", rep.guarantee == Guarantee::certified ? "certified" : "attempted"},
           {"c_actual", to_string(rep.c_actual)},
           {"c_bound", to_string(rep.c_bound)},
           {"eta", rep.eta ? json(to_string(*rep.eta)) : json(nullptr)},
           {"iterations", rep.iterations},
           {"final_residual_inf", rep.final_residual_inf},
           {"measured_contraction", rep.measured_contraction},
           {"converged", rep.converged},
           {"min_weight", rep.min_weight},
           {"max_edge_sum_error", rep.max_edge_sum_error},
           {"worst_edge", rep.worst_edge},
           {"verified", rep.verified},
           {"verify_tol", rep.verify_tol},
           {"timings",
            {{"enumerate_s", rep.enumerate_seconds},
             {"solve_s", rep.solve_seconds},
             {"verify_s", rep.verify_seconds}}}};
  return out;
}

json rational_matrix_to_json(const Matrix6Q& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    out.push_back(std::move(r));
  }
  return out;
}

json intersection_tables_to_json(int r, int n) {
  json tables = json::object();
  for (int k = 0; k < kNumClasses; ++k) {
    json t = json::array();
    for (int i = 0; i < kNumClasses; ++i) {
      json row = json::array();
      for (int j = 0; j < kNumClasses; ++j) row.push_back(intersection_number(i, j, k, r, n));
      t.push_back(std::move(row));
    }
    tables["p^" + std::to_string(k)] = std::move(t);
  }
  return tables;
}

json spectrum_to_json(const SpectrumTable& t) {
  json rows = json::array();
  for (int i = 0; i < kNumClasses; ++i)
    rows.push_back({{"space", "U" + std::to_string(i)},
                    {"eigenvalue", to_string(t.eigenvalues[i])},
                    {"value", to_double(t.eigenvalues[i])},
                    {"multiplicity", t.multiplicities[i].str()}});
  return json{{"eta", t.eta ? json(to_string(*t.eta)) : json(nullptr)}, {"table", std::move(rows)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(path + ": " + err.what());
  }
}

void write_json(std::ostream& os, const json& j) { os << j.dump(1) << '\n'; }

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_json(out, j);
}

}  // namespace fracclique::io
