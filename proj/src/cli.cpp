#include "fracclique/cli.hpp"

#include "fracclique/graph.hpp"
#include "fracclique/io.hpp"
#include "fracclique/oracle.hpp"
#include "fracclique/scheme.hpp"
#include "fracclique/solver.hpp"
#include "fracclique/spectral.hpp"
#include "fracclique/xval.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace fracclique::cli {

namespace {

using io::json;

struct RunConfig {
  std::string input;
  std::string output;
  std::string report;
  std::string weights;
  int r = 0, s = 0, n = 0;
  int defects = 0;
  int cap = 1;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  double verify_tol = 1e-8;
  int max_iter = 200;
  std::string eta;
  long long oracle_cap = oracle::kDefaultCap;
  int workers = 1;
  bool include_zero = false;
  bool force = false;
  std::string grid;
  std::string n_list = "2,4,8";
  int repeats = 3;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string vertex_str(const Vertex& v) {
  return "(" + std::to_string(v.part) + "," + std::to_string(v.index) + ")";
}

std::string edge_str(const PartiteStructure& ps, long long natural) {
  const EdgeKey e = edge_at(ps, natural);
  return vertex_str(e.a) + "-" + vertex_str(e.b);
}

void emit(const std::string& path, const json& j, std::ostream& out) {
  if (path.empty())
    io::write_json(out, j);
  else
    io::write_json_file(path, j);
}

bool have_structure(const RunConfig& cfg) { return cfg.r > 0 && cfg.s > 0 && cfg.n > 0; }

MultipartiteGraph load_graph(const RunConfig& cfg) {
  if (!cfg.input.empty()) return io::graph_from_json(io::read_json_file(cfg.input));
  if (!have_structure(cfg)) throw UsageError("either --input or all of -r, -s, -n is required");
  PartiteStructure{cfg.r, cfg.n, cfg.s}.validate();
  if (cfg.defects == 0) return make_complete(cfg.r, cfg.s, cfg.n);
  return generate_admissible_instance(cfg.r, cfg.s, cfg.n, DefectSpec{cfg.defects, cfg.cap}, cfg.seed);
}

std::optional<Rational> parse_eta(const RunConfig& cfg, int s, int n) {
  if (cfg.eta.empty()) return std::nullopt;
  if (cfg.eta == "star") return eta_star(s, n);
  try {
    return parse_rational(cfg.eta);
  } catch (const std::exception&) {
    throw UsageError("--eta expects a rational such as 3/5 or the word star");
  }
}

std::vector<std::array<int, 3>> parse_grid(const std::string& text) {
  std::vector<std::array<int, 3>> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::array<int, 3> t{};
    char c1 = 0, c2 = 0;
    std::stringstream is(item);
    if (!(is >> t[0] >> c1 >> t[1] >> c2 >> t[2]) || c1 != ',' || c2 != ',')
      throw UsageError("grid entries look like r,s,n separated by ';' (got \"" + item + "\")");
    grid.push_back(t);
  }
  if (grid.empty()) throw UsageError("empty --grid");
  return grid;
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad list entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::size_t width = 1;
  for (const auto& row : rows)
    for (const auto& cell : row) width = std::max(width, cell.size());
  for (const auto& row : rows) {
    for (const auto& cell : row) out << std::setw(static_cast<int>(width) + 2) << cell;
    out << '\n';
  }
}

std::vector<std::vector<std::string>> matrix_rows(const Matrix6Q& m) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : m) {
    std::vector<std::string> cells;
    for (const auto& x : row) cells.push_back(to_string(x));
    rows.push_back(std::move(cells));
  }
  return rows;
}

// ---------------------------------------------------------------- subcommands

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (!have_structure(cfg)) throw UsageError("gen needs -r, -s and -n");
  emit(cfg.output, io::graph_to_json(load_graph(cfg)), out);
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MultipartiteGraph g = load_graph(cfg);
  const AdmissibilityReport rep = check_admissible(g);
  emit(cfg.output, io::admissibility_to_json(g, rep), out);
  if (rep.admissible()) return kOk;
  for (const auto& v : rep.nec2_violations)
    err << "inadmissible: part pair (" << v.i << "," << v.j << ") has " << v.count
        << " edges, the pair-count identity requires " << to_string(v.required) << '\n';
  for (const auto& [v, k] : rep.nec1_violations)
    err << "inadmissible: vertex " << vertex_str(v) << " has " << g.degree(v, k) << " neighbours in part "
        << k << " out of degree " << g.degree(v) << '\n';
  return kInadmissible;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MultipartiteGraph g = load_graph(cfg);
  const auto& ps = g.structure();
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.eta = parse_eta(cfg, ps.s, ps.n);
  opts.workers = cfg.workers;
  opts.allow_inadmissible = cfg.force;

  Decomposition dec;
  try {
    dec = decompose(g, opts, cfg.verify_tol);
  } catch (const DecompositionError& e) {
    const json rep = io::report_to_json(e.report());
    if (!cfg.report.empty()) io::write_json_file(cfg.report, rep);
    else io::write_json(out, json{{"report", rep}});
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case DecompositionError::Kind::inadmissible:
        err << "rerun with --force to attempt the solve anyway\n";
        return kInadmissible;
      case DecompositionError::Kind::nonconvergence: return kNonconvergence;
      case DecompositionError::Kind::negative_weight: return kVerificationFailed;
      case DecompositionError::Kind::out_of_scope: return kUsage;
    }
    return kUsage;
  }

  const SolveReport& rep = dec.report;
  const json weights = io::weights_to_json(g, dec.cliques, dec.weights.weights, cfg.include_zero);
  const json report = io::report_to_json(rep);
  if (cfg.output.empty()) {
    io::write_json(out, json{{"report", report}, {"weights", weights}});
  } else {
    io::write_json_file(cfg.output, weights);
    emit(cfg.report, report, out);
  }
  if (rep.guarantee == Guarantee::attempted && rep.c_actual > rep.c_bound)
    err << "note: defect ratio " << to_string(rep.c_actual) << " is outside the certified threshold "
        << to_string(rep.c_bound) << "; result is attempted, not certified\n";
  else if (rep.guarantee == Guarantee::attempted)
    err << "note: result is attempted, not certified (custom eta or inadmissible input)\n";
  if (!rep.verified) {
    err << "verification failed: worst edge " << edge_str(ps, rep.worst_edge) << " off by "
        << rep.max_edge_sum_error << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty() || cfg.weights.empty()) throw UsageError("verify needs --input and --weights");
  const MultipartiteGraph g = io::graph_from_json(io::read_json_file(cfg.input));
  const auto [cliques, weights] = io::weights_from_json(g, io::read_json_file(cfg.weights));
  const CoverageReport cov = verify_coverage(g, cliques, weights);
  const auto& ps = g.structure();
  json j{{"max_edge_sum_error", cov.max_error},
         {"worst_edge", cov.worst_edge >= 0 ? json(edge_str(ps, cov.worst_edge)) : json(nullptr)},
         {"worst_sum", cov.worst_sum},
         {"min_weight", cov.min_weight},
         {"negative_weights", cov.negative_weights},
         {"tolerance", cfg.verify_tol},
         {"ok", cov.ok(cfg.verify_tol)}};
  emit(cfg.output, j, out);
  if (cov.ok(cfg.verify_tol)) return kOk;
  if (cov.negative_weights > 0) err << "verification failed: " << cov.negative_weights << " negative weights\n";
  if (cov.max_error > cfg.verify_tol)
    err << "verification failed: edge " << edge_str(ps, cov.worst_edge) << " is covered "
        << std::setprecision(17) << cov.worst_sum << " times\n";
  return kVerificationFailed;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  if (cfg.r <= 0 || cfg.n <= 0) throw UsageError("tables needs -r and -n");
  if (cfg.r < 4) throw UsageError("tables needs r >= 4");
  const Eigenmatrices eig = eigenmatrices(cfg.r, cfg.n);
  for (int k = 0; k < kNumClasses; ++k) {
    out << "p_ij^" << k << " (rows i, columns j)\n";
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < kNumClasses; ++i) {
      std::vector<std::string> cells;
      for (int j = 0; j < kNumClasses; ++j)
        cells.push_back(std::to_string(intersection_number(i, j, k, cfg.r, cfg.n)));
      rows.push_back(std::move(cells));
    }
    print_table(out, rows);
    out << '\n';
  }
  out << "C\n";
  print_table(out, matrix_rows(eig.C));
  out << "\nD\n";
  print_table(out, matrix_rows(eig.D));
  if (!cfg.output.empty())
    io::write_json_file(cfg.output, json{{"r", cfg.r},
                                         {"n", cfg.n},
                                         {"intersection_numbers", io::intersection_tables_to_json(cfg.r, cfg.n)},
                                         {"C", io::rational_matrix_to_json(eig.C)},
                                         {"D", io::rational_matrix_to_json(eig.D)}});
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  if (!have_structure(cfg)) throw UsageError("spectrum needs -r, -s and -n");
  PartiteStructure{cfg.r, cfg.n, cfg.s}.validate();
  std::optional<Rational> eta = parse_eta(cfg, cfg.s, cfg.n);
  if (!eta && cfg.r == cfg.s + 1) eta = eta_star(cfg.s, cfg.n);
  auto print = [&](const SpectrumTable& t, const std::string& title) {
    out << title << '\n';
    std::vector<std::vector<std::string>> rows{{"space", "eigenvalue", "multiplicity"}};
    for (int i = 0; i < kNumClasses; ++i)
      rows.push_back({"U" + std::to_string(i), to_string(t.eigenvalues[i]), t.multiplicities[i].str()});
    print_table(out, rows);
  };
  const SpectrumTable base = spectrum(cfg.r, cfg.s, cfg.n);
  print(base, "M_Gamma");
  json j{{"r", cfg.r}, {"s", cfg.s}, {"n", cfg.n}, {"spectrum", io::spectrum_to_json(base)}};
  if (eta && cfg.r == cfg.s + 1) {
    const SpectrumTable shifted = spectrum(cfg.r, cfg.s, cfg.n, eta);
    out << '\n';
    print(shifted, "M_Gamma + eta E_2, eta = " + to_string(*eta));
    j["shifted"] = io::spectrum_to_json(shifted);
  } else if (eta) {
    throw UsageError("--eta applies only when r = s + 1");
  }
  if (!cfg.output.empty()) io::write_json_file(cfg.output, j);
  return kOk;
}

int cmd_xval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string grid_text = cfg.grid.empty() ? "4,3,2;5,3,2;5,4,2;6,4,2" : cfg.grid;
  json rows = json::array();
  bool all = true;
  for (const auto& [r, s, n] : parse_grid(grid_text)) {
    json checks = json::object();
    try {
      for (const auto& c : oracle::cross_validate(r, s, n, cfg.oracle_cap, cfg.seed)) {
        checks[c.name] = {{"pass", c.passed}, {"deviation", c.deviation}, {"tolerance", c.tolerance}};
        if (!c.detail.empty()) checks[c.name]["detail"] = c.detail;
        if (!c.passed) {
          all = false;
          err << "xval (" << r << "," << s << "," << n << ") " << c.name << " failed: deviation "
              << c.deviation << " > " << c.tolerance << '\n';
        }
      }
    } catch (const std::length_error& e) {
      checks["skipped"] = e.what();
    }
    rows.push_back({{"r", r}, {"s", s}, {"n", n}, {"checks", std::move(checks)}});
  }
  emit(cfg.output, json{{"all_pass", all}, {"grid", std::move(rows)}}, out);
  return all ? kOk : kVerificationFailed;
}

template <typename F>
double min_seconds(int repeats, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < repeats; ++k) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  if (cfg.r <= 0 || cfg.s <= 0) throw UsageError("bench needs -r and -s");
  json rows = json::array();
  std::vector<std::vector<std::string>> text{
      {"n", "edges", "cliques", "iterations", "matrix_free_s", "dense_s"}};
  for (int n : parse_list(cfg.n_list)) {
    RunConfig local = cfg;
    local.n = n;
    const MultipartiteGraph g = load_graph(local);
    SolveOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.workers = cfg.workers;
    opts.allow_inadmissible = cfg.force;
    opts.eta = parse_eta(cfg, cfg.s, n);
    Decomposition dec;
    std::string failure;
    const double mf = min_seconds(cfg.repeats, [&] {
      try {
        dec = decompose(g, opts, cfg.verify_tol);
      } catch (const DecompositionError& e) {
        dec.report = e.report();
        failure = e.what();
      }
    });
    json row{{"n", n},
             {"edges", g.edge_count()},
             {"cliques", dec.report.cliques},
             {"iterations", dec.report.iterations},
             {"verified", dec.report.verified},
             {"matrix_free_seconds", mf}};
    if (!failure.empty()) row["error"] = failure;
    std::string dense_cell = "-";
    if (g.structure().num_edges() <= cfg.oracle_cap) {
      std::optional<double> eta;
      if (dec.report.eta) eta = to_double(*dec.report.eta);
      if (!eta && g.structure().r == g.structure().s + 1) eta = to_double(eta_star(cfg.s, n));
      const double dense =
          min_seconds(cfg.repeats, [&] { (void)oracle::dense_solve(g, eta, cfg.oracle_cap); });
      row["dense_seconds"] = dense;
      std::ostringstream cell;
      cell << std::setprecision(4) << dense;
      dense_cell = cell.str();
    } else {
      row["dense_seconds"] = nullptr;
    }
    std::ostringstream mf_cell;
    mf_cell << std::setprecision(4) << mf;
    if (!failure.empty()) mf_cell << " (failed)";
    text.push_back({std::to_string(n), std::to_string(g.edge_count()), std::to_string(dec.report.cliques),
                    std::to_string(dec.report.iterations), mf_cell.str(), dense_cell});
    rows.push_back(std::move(row));
  }
  json j{{"r", cfg.r}, {"s", cfg.s}, {"repeats", cfg.repeats}, {"runs", std::move(rows)}};
  print_table(out, text);
  if (!cfg.output.empty()) io::write_json_file(cfg.output, j);
  return kOk;
}

// ---------------------------------------------------------------- options

void add_structure(CLI::App* app, RunConfig& cfg) {
  app->add_option("-r", cfg.r, "number of parts")->check(CLI::Range(3, 1000));
  app->add_option("-s", cfg.s, "clique order")->check(CLI::Range(3, 1000));
  app->add_option("-n", cfg.n, "part size")->check(CLI::Range(1, 1000000));
}

void add_generation(CLI::App* app, RunConfig& cfg) {
  app->add_option("--defects", cfg.defects,
                  "transversal cliques (r = s + 1) or edges (r >= s + 2) to delete")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--cap", cfg.cap, "max deleted neighbours per vertex per part")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", cfg.seed, "generator seed");
}

void add_input(CLI::App* app, RunConfig& cfg) {
  auto* input = app->add_option("--input", cfg.input, "graph JSON file")->check(CLI::ExistingFile);
  add_structure(app, cfg);
  add_generation(app, cfg);
  for (const char* name : {"-r", "-s", "-n", "--defects", "--seed"}) input->excludes(app->get_option(name));
}

void add_solver(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  app->add_option("--eta", cfg.eta, "E_2 shift for r = s + 1 (rational, or 'star')");
  app->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1, 1024));
  app->add_option("--verify-tol", cfg.verify_tol, "coverage tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--force", cfg.force, "solve even if the admissibility check fails");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Fractional K_s-decompositions of dense balanced r-partite graphs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate an admissible instance");
  add_structure(gen, cfg);
  add_generation(gen, cfg);
  gen->add_option("--output", cfg.output, "graph JSON destination (default stdout)");

  auto* check = app.add_subcommand("check", "report the admissibility conditions");
  add_input(check, cfg);
  check->add_option("--output", cfg.output, "report destination (default stdout)");

  auto* dec = app.add_subcommand("decompose", "compute and verify a fractional decomposition");
  add_input(dec, cfg);
  add_solver(dec, cfg);
  dec->add_option("--output", cfg.output, "weights JSON destination");
  dec->add_option("--report", cfg.report, "report JSON destination (default stdout)");
  dec->add_flag("--include-zero-weights", cfg.include_zero, "list cliques of weight zero");

  auto* ver = app.add_subcommand("verify", "recompute edge coverage from a weights file");
  ver->add_option("--input", cfg.input, "graph JSON file")->required()->check(CLI::ExistingFile);
  ver->add_option("--weights", cfg.weights, "weights JSON file")->required()->check(CLI::ExistingFile);
  ver->add_option("--tol", cfg.verify_tol, "coverage tolerance")->check(CLI::PositiveNumber);
  ver->add_option("--output", cfg.output, "coverage JSON destination (default stdout)");

  auto* tables = app.add_subcommand("tables", "print intersection numbers and eigenmatrices");
  tables->add_option("-r", cfg.r, "number of parts")->required()->check(CLI::Range(4, 1000));
  tables->add_option("-n", cfg.n, "part size")->required()->check(CLI::Range(1, 1000000));
  tables->add_option("--output", cfg.output, "JSON destination");

  auto* spec = app.add_subcommand("spectrum", "print the eigenvalue table");
  add_structure(spec, cfg);
  spec->add_option("--eta", cfg.eta, "E_2 shift (rational, or 'star'); r = s + 1 only");
  spec->add_option("--output", cfg.output, "JSON destination");

  auto* xval = app.add_subcommand("xval", "cross-validate closed forms against brute force");
  xval->add_option("--grid", cfg.grid, "r,s,n triples separated by ';'");
  xval->add_option("--oracle-cap", cfg.oracle_cap, "largest host edge count for dense work")
      ->check(CLI::PositiveNumber);
  xval->add_option("--seed", cfg.seed, "seed for random vectors and instances");
  xval->add_option("--output", cfg.output, "JSON destination (default stdout)");

  auto* bench = app.add_subcommand("bench", "time matrix-free against dense solves");
  add_structure(bench, cfg);
  add_generation(bench, cfg);
  add_solver(bench, cfg);
  bench->add_option("--n-list", cfg.n_list, "comma-separated part sizes");
  bench->add_option("--oracle-cap", cfg.oracle_cap, "largest host edge count for dense solves")
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeats", cfg.repeats, "repeats per timing (minimum is reported)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--output", cfg.output, "JSON destination");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (dec->parsed()) return cmd_decompose(cfg, out, err);
    if (ver->parsed()) return cmd_verify(cfg, out, err);
    if (tables->parsed()) return cmd_tables(cfg, out);
    if (spec->parsed()) return cmd_spectrum(cfg, out);
    if (xval->parsed()) return cmd_xval(cfg, out, err);
    if (bench->parsed()) return cmd_bench(cfg, out);
  } catch (const DecompositionError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == DecompositionError::Kind::inadmissible     ? kInadmissible
           : e.kind() == DecompositionError::Kind::nonconvergence ? kNonconvergence
                                                                  : kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fracclique::cli
