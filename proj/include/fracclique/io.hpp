#pragma once

#include "fracclique/graph.hpp"
#include "fracclique/scheme.hpp"
#include "fracclique/solver.hpp"
#include "fracclique/spectral.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace fracclique::io {

using nlohmann::json;

/// {"r","s","n","missing_edges":[[p1,i1,p2,i2],...]} with p1 < p2.
json graph_to_json(const MultipartiteGraph& g);
/// Rejects same-part pairs, p1 > p2, out-of-range endpoints and duplicates.
MultipartiteGraph graph_from_json(const json& j);

json admissibility_to_json(const MultipartiteGraph& g, const AdmissibilityReport& rep);

/// One {"clique": [[part,idx]...], "weight": w} record per clique; zero
/// weights are skipped unless include_zero is set.
json weights_to_json(const MultipartiteGraph& g, const CliqueList& cliques,
                     std::span<const double> weights, bool include_zero = false);

/// Parses a weights file into a clique list over g (cliques absent from the
/// file carry weight zero and are not listed). Throws if a record is not a
/// clique of g or repeats.
std::pair<CliqueList, std::vector<double>> weights_from_json(const MultipartiteGraph& g,
                                                             const json& j);

json report_to_json(const SolveReport& rep);

json rational_matrix_to_json(const Matrix6Q& m);
json intersection_tables_to_json(int r, int n);
json spectrum_to_json(const SpectrumTable& t);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
void write_json(std::ostream& os, const json& j);

}  // namespace fracclique::io
