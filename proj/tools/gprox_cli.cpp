// gprox: pairwise and column-wise Katz / commute-time queries on a graph file.

#include "gprox/gprox.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gprox;

namespace {

struct Config {
  std::string graph_path;
  std::string format = "edges0";
  std::string alpha = "hard";
  double lambda_lo = 1e-4;
  double lambda_hi = 0.0;
  double tau = 1e-4;
  std::uint64_t seed = 1;
  bool baseline = false;
  std::string scaling = "degree";
  std::vector<Index> ks{10, 25, 100, 1000};
  std::string out_dir = ".";
  Index max_iter = 0;
  std::int64_t max_pushes = 0;
};

struct LoadedGraph {
  Graph graph;
  std::string name;
};

LoadedGraph load(const Config& cfg) {
  return {load_graph(cfg.graph_path, cfg.format), fs::path(cfg.graph_path).filename().string()};
}

fs::path out_path(const Config& cfg, const std::string& file) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / file;
}

std::ofstream open_out(const Config& cfg, const std::string& file) {
  std::ofstream out(out_path(cfg, file));
  if (!out) throw Error("cannot write " + out_path(cfg, file).string());
  return out;
}

void write_json(const Config& cfg, const std::string& file, const json& j) {
  open_out(cfg, file) << j.dump(2) << '\n';
}

void write_id_map(const Config& cfg, const Graph& g) {
  auto out = open_out(cfg, "id_map.csv");
  write_id_map_csv(out, g);
}

Index to_internal(const Config& cfg, const Graph& g, Index original) {
  auto v = g.internal_id(original);
  if (!v)
    throw ParameterError("vertex " + std::to_string(original) +
                         " is not in the largest component; see " +
                         out_path(cfg, "id_map.csv").string() + " for the kept ids");
  return *v;
}

struct AlphaChoice {
  double alpha;
  std::optional<double> spectral_norm;
  bool hard;
};

AlphaChoice resolve_alpha(const Config& cfg, const Graph& g) {
  if (cfg.alpha == "hard") {
    const double sigma = spectral_norm_estimate(g);
    return {hard_alpha(sigma), sigma, true};
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(cfg.alpha, &used);
    if (used != cfg.alpha.size()) throw std::invalid_argument(cfg.alpha);
  } catch (const std::exception&) {
    throw ParameterError("--alpha takes a number or 'hard', got '" + cfg.alpha + "'");
  }
  if (!(value > 0.0)) throw ParameterError("--alpha must be positive");
  return {value, std::nullopt, false};
}

PushScaling resolve_scaling(const Config& cfg) {
  return cfg.scaling == "residual" ? PushScaling::residual : PushScaling::degree_scaled;
}

BoundsOptions bounds_options(const Config& cfg) {
  BoundsOptions opt;
  opt.lambda_lo = cfg.lambda_lo;
  opt.lambda_hi = cfg.lambda_hi;
  opt.tau = cfg.tau;
  opt.max_iter = cfg.max_iter;
  return opt;
}

ScoreKind parse_kind(const std::string& kind) {
  return kind == "katz" ? ScoreKind::katz : ScoreKind::commute;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json comparisons_json(const std::vector<RankingComparison>& rows) {
  json out = json::array();
  for (const auto& c : rows)
    out.push_back({{"k", c.k},
                   {"precision", c.precision},
                   {"kendall_tau", c.tau.defined ? json(c.tau.value) : json(nullptr)},
                   {"boundary_tie", c.boundary_tie}});
  return out;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const Config& cfg, bool spectral) {
  auto [g, name] = load(cfg);
  json j = summary_json(summarize(g));
  j["graph"] = name;
  if (spectral) j["spectral_norm"] = spectral_norm_estimate(g);
  write_json(cfg, "stats.json", j);
  write_id_map(cfg, g);
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- pairwise

int cmd_pairwise(const Config& cfg, const std::string& kind_name, Index i_ext, Index j_ext) {
  auto [g, name] = load(cfg);
  write_id_map(cfg, g);
  const Index i = to_internal(cfg, g, i_ext);
  const Index j = to_internal(cfg, g, j_ext);
  const ScoreKind kind = parse_kind(kind_name);

  double alpha = 0.0;
  json params = {{"lambda_lo", cfg.lambda_lo}, {"tau", cfg.tau}};
  BoundsTrace trace;
  if (kind == ScoreKind::katz) {
    auto a = resolve_alpha(cfg, g);
    alpha = a.alpha;
    params["alpha"] = alpha;
    params["hard_alpha"] = a.hard;
    trace = katz_pairwise_bounds(g, alpha, i, j, bounds_options(cfg));
  } else {
    trace = commute_pairwise_bounds(g, i, j, bounds_options(cfg));
  }
  std::optional<BaselineResult> base;
  if (cfg.baseline) base = cg_pairwise_baseline(g, kind, alpha, i, j, cfg.tau, cfg.max_iter);

  auto csv = open_out(cfg, "trace.csv");
  write_trace_csv(csv, trace, base ? &*base : nullptr);
  json j_out = trace_json(g, trace, base ? &*base : nullptr);
  j_out["graph"] = name;
  j_out["params"] = params;
  write_json(cfg, "trace.json", j_out);
  std::cout << j_out.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- column

int cmd_column(const Config& cfg, const std::string& kind_name, Index i_ext, bool full_length,
               bool oracle) {
  auto [g, name] = load(cfg);
  write_id_map(cfg, g);
  const Index i = to_internal(cfg, g, i_ext);
  const Index n = g.num_vertices();
  const ScoreKind kind = parse_kind(kind_name);
  const bool compare = oracle && n <= kDenseCutoff;

  json report = {{"graph", name}, {"kind", to_string(kind)}, {"source", i_ext}};
  if (kind == ScoreKind::katz) {
    auto a = resolve_alpha(cfg, g);
    PushOptions opt;
    opt.tau = cfg.tau;
    opt.scaling = resolve_scaling(cfg);
    opt.max_pushes = cfg.max_pushes;
    opt.spectral_norm = a.spectral_norm;
    KatzColumn col = katz_column_push(g, a.alpha, i, opt);
    auto csv = open_out(cfg, "column.csv");
    write_katz_column_csv(csv, g, col);
    report["params"] = {{"alpha", a.alpha},   {"hard_alpha", a.hard},
                        {"tau", cfg.tau},     {"scaling", cfg.scaling}};
    report["stats"] = push_stats_json(col.stats);
    report["converged"] = col.converged;
    report["warnings"] = col.warnings;
    const Vector approx = col.to_dense(n);
    report["participation_ratio"] =
        approx.cwiseAbs().maxCoeff() > 0.0 ? participation_ratio(approx) : 1.0;
    if (compare) {
      auto op = katz_operator(g, a.alpha);
      Vector exact = reference_solve(op, Vector::Unit(n, i));
      exact[i] -= 1.0;
      report["oracle"] = {
          {"max_abs_error", (approx - exact).cwiseAbs().maxCoeff()},
          {"rankings", comparisons_json(compare_rankings(approx, exact, cfg.ks, RankDirection::largest, i))}};
    }
  } else {
    CommuteColumnOptions opt;
    opt.tol = cfg.tau;
    opt.max_iter = cfg.max_iter;
    opt.full_length = full_length;
    CommuteColumn col = commute_column(g, i, opt);
    auto csv = open_out(cfg, "column.csv");
    write_commute_column_csv(csv, g, col);
    report["params"] = {{"tol", cfg.tau}, {"full_length", full_length}};
    report["stats"] = {{"iterations", col.solver.iterations},
                       {"residual_norm", col.solver.residual_norm},
                       {"restarts", col.solver.restarts}};
    report["converged"] = col.solver.converged;
    if (compare) {
      const Vector exact = dense_reference_matrices(g, 0.0).commute.col(i);
      const Vector heuristic = inverse_degree_heuristic(g, i);
      report["oracle"] = {
          {"max_abs_error", (col.scores - exact).cwiseAbs().maxCoeff()},
          {"rankings",
           comparisons_json(compare_rankings(col.scores, exact, cfg.ks, RankDirection::smallest, i))},
          {"inverse_degree_rankings",
           comparisons_json(compare_rankings(heuristic, exact, cfg.ks, RankDirection::smallest, i))}};
    }
  }
  write_json(cfg, "column.json", report);
  std::cout << report.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

SampleScheme parse_scheme(const std::string& s) {
  return s == "degree" ? SampleScheme::degree_correlated : SampleScheme::random;
}

json percentiles(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  return {{"p25", nearest_rank_percentile(values, 25)},
          {"p50", nearest_rank_percentile(values, 50)},
          {"p75", nearest_rank_percentile(values, 75)}};
}

// Pairwise sweep: bounds vs CG for sampled pairs of both kinds.
void bench_pairwise(const Config& cfg, const Graph& g, const std::string& name,
                    const std::string& scheme, Index commute_pairs, Index katz_pairs, json& summary,
                    std::vector<std::string>& warnings) {
  auto csv = open_out(cfg, "bench.csv");
  auto timing = open_out(cfg, "timings.csv");
  csv << "graph,kind,i,j,seed,alpha,lower,upper,converged,bound_matvecs,cg_estimate,cg_matvecs,"
         "performance_ratio,error\n";
  timing << "kind,i,j,bound_seconds,cg_seconds\n";

  const AlphaChoice a = resolve_alpha(cfg, g);
  for (ScoreKind kind : {ScoreKind::commute, ScoreKind::katz}) {
    const Index count = kind == ScoreKind::commute ? commute_pairs : katz_pairs;
    if (count <= 0) continue;
    const RankLadder ladder = kind == ScoreKind::commute ? RankLadder::sparse : RankLadder::dense;
    VertexSample sample = sample_vertex_pairs(g, parse_scheme(scheme), count, cfg.seed, ladder);
    for (auto& w : sample.warnings) warnings.push_back(to_string(kind) + ": " + w);
    std::vector<double> ratios, bound_times, cg_times;
    const double alpha = kind == ScoreKind::katz ? a.alpha : 0.0;
    for (auto [i, j] : sample.pairs) {
      csv << name << ',' << to_string(kind) << ',' << g.original_id(i) << ',' << g.original_id(j)
          << ',' << cfg.seed << ',' << format_double(alpha) << ',';
      try {
        auto t0 = std::chrono::steady_clock::now();
        BoundsTrace trace = kind == ScoreKind::katz
                                ? katz_pairwise_bounds(g, alpha, i, j, bounds_options(cfg))
                                : commute_pairwise_bounds(g, i, j, bounds_options(cfg));
        const double t_bound = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        BaselineResult base = cg_pairwise_baseline(g, kind, alpha, i, j, cfg.tau, cfg.max_iter);
        const double t_cg = seconds_since(t0);
        const double ratio = performance_ratio(std::max<std::int64_t>(base.matvecs, 1), trace.matvecs);
        ratios.push_back(ratio);
        bound_times.push_back(t_bound);
        cg_times.push_back(t_cg);
        csv << format_double(trace.final_lower) << ',' << format_double(trace.final_upper) << ','
            << trace.converged << ',' << trace.matvecs << ',' << format_double(base.estimate) << ','
            << base.matvecs << ',' << format_double(ratio) << ",\n";
        timing << to_string(kind) << ',' << g.original_id(i) << ',' << g.original_id(j) << ','
               << t_bound << ',' << t_cg << '\n';
      } catch (const Error& e) {
        csv << ",,,,,,," << std::quoted(std::string(e.what())) << '\n';
      }
    }
    summary[to_string(kind)] = {{"pairs", sample.pairs.size()},
                                {"performance_ratio", percentiles(ratios)},
                                {"bound_seconds", percentiles(bound_times)},
                                {"cg_seconds", percentiles(cg_times)}};
  }
}

// Column sweep: Katz push and commute CG-Lanczos columns against the oracle.
void bench_column(const Config& cfg, const Graph& g, const std::string& name,
                  const std::string& scheme, Index count, json& summary,
                  std::vector<std::string>& warnings) {
  auto csv = open_out(cfg, "bench.csv");
  auto timing = open_out(cfg, "timings.csv");
  csv << "graph,kind,source,seed,method,k,precision,kendall_tau,boundary_tie,work,error\n";
  timing << "kind,source,seconds\n";
  const Index n = g.num_vertices();
  if (n > kDenseCutoff) throw ParameterError("the column suite needs n <= " + std::to_string(kDenseCutoff));

  VertexSample sample = sample_vertices(g, parse_scheme(scheme), count, cfg.seed);
  warnings.insert(warnings.end(), sample.warnings.begin(), sample.warnings.end());
  const AlphaChoice a = resolve_alpha(cfg, g);
  const DenseReference ref = dense_reference_matrices(g, a.alpha);
  std::map<std::string, std::vector<double>> seconds;

  auto emit = [&](const std::string& kind, Index src, const std::string& method,
                  const std::vector<RankingComparison>& rows, double work) {
    for (const auto& c : rows)
      csv << name << ',' << kind << ',' << g.original_id(src) << ',' << cfg.seed << ',' << method
          << ',' << c.k << ',' << format_double(c.precision) << ','
          << (c.tau.defined ? format_double(c.tau.value) : "") << ',' << c.boundary_tie << ','
          << format_double(work) << ",\n";
  };

  for (Index src : sample.vertices) {
    try {
      PushOptions opt;
      opt.tau = cfg.tau;
      opt.scaling = resolve_scaling(cfg);
      opt.spectral_norm = a.spectral_norm;
      opt.max_pushes = cfg.max_pushes;
      auto t0 = std::chrono::steady_clock::now();
      KatzColumn col = katz_column_push(g, a.alpha, src, opt);
      const double t = seconds_since(t0);
      seconds["katz"].push_back(t);
      timing << "katz," << g.original_id(src) << ',' << t << '\n';
      emit("katz", src, "push",
           compare_rankings(col.to_dense(n), ref.katz.col(src), cfg.ks, RankDirection::largest, src),
           col.stats.effective_matvecs);
    } catch (const Error& e) {
      csv << name << ",katz," << g.original_id(src) << ',' << cfg.seed << ",push,,,,,,"
          << std::quoted(std::string(e.what())) << '\n';
    }
    try {
      CommuteColumnOptions opt;
      opt.tol = 1e-16;
      auto t0 = std::chrono::steady_clock::now();
      CommuteColumn col = commute_column(g, src, opt);
      const double t = seconds_since(t0);
      seconds["commute"].push_back(t);
      timing << "commute," << g.original_id(src) << ',' << t << '\n';
      const Vector exact = ref.commute.col(src);
      emit("commute", src, "cg_lanczos",
           compare_rankings(col.scores, exact, cfg.ks, RankDirection::smallest, src),
           static_cast<double>(col.solver.iterations));
      emit("commute", src, "inverse_degree",
           compare_rankings(inverse_degree_heuristic(g, src), exact, cfg.ks, RankDirection::smallest, src),
           0.0);
    } catch (const Error& e) {
      csv << name << ",commute," << g.original_id(src) << ',' << cfg.seed << ",cg_lanczos,,,,,,"
          << std::quoted(std::string(e.what())) << '\n';
    }
  }
  summary["columns"] = sample.vertices.size();
  summary["katz_seconds"] = percentiles(seconds["katz"]);
  summary["commute_seconds"] = percentiles(seconds["commute"]);
}

// Localization: participation ratios of Katz columns.
void bench_localization(const Config& cfg, const Graph& g, const std::string& name,
                        const std::string& scheme, Index count, json& summary,
                        std::vector<std::string>& warnings) {
  auto csv = open_out(cfg, "bench.csv");
  auto timing = open_out(cfg, "timings.csv");
  csv << "graph,source,seed,alpha,participation_ratio\n";
  timing << "source,seconds\n";
  VertexSample sample = sample_vertices(g, parse_scheme(scheme), count, cfg.seed);
  warnings.insert(warnings.end(), sample.warnings.begin(), sample.warnings.end());
  const AlphaChoice a = resolve_alpha(cfg, g);
  std::vector<double> times;
  ParticipationSummary all;
  for (Index src : sample.vertices) {
    auto t0 = std::chrono::steady_clock::now();
    ParticipationSummary one = participation_trace(g, a.alpha, {src}, cfg.tau, resolve_scaling(cfg));
    times.push_back(seconds_since(t0));
    timing << g.original_id(src) << ',' << times.back() << '\n';
    all.ratios.push_back(one.ratios.front());
    csv << name << ',' << g.original_id(src) << ',' << cfg.seed << ',' << format_double(a.alpha) << ','
        << format_double(one.ratios.front()) << '\n';
  }
  auto table = open_out(cfg, "localization.csv");
  table << "graph,n,columns,min,mean,median,max\n";
  if (!all.ratios.empty()) {
    std::vector<double> r = all.ratios;
    std::sort(r.begin(), r.end());
    const std::size_t m = r.size();
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(m);
    const double median = m % 2 ? r[m / 2] : 0.5 * (r[m / 2 - 1] + r[m / 2]);
    table << name << ',' << g.num_vertices() << ',' << m << ',' << format_double(r.front()) << ','
          << format_double(mean) << ',' << format_double(median) << ',' << format_double(r.back())
          << '\n';
    summary["participation"] = {{"min", r.front()}, {"mean", mean}, {"median", median}, {"max", r.back()}};
  }
  summary["seconds"] = percentiles(times);
}

int cmd_bench(const Config& cfg, const std::string& suite, const std::string& scheme,
              Index commute_pairs, Index katz_pairs, Index columns) {
  auto [g, name] = load(cfg);
  write_id_map(cfg, g);
  json summary = {{"graph", name}, {"suite", suite}, {"seed", cfg.seed}, {"scheme", scheme}};
  std::vector<std::string> warnings;
  if (suite == "pairwise")
    bench_pairwise(cfg, g, name, scheme, commute_pairs, katz_pairs, summary, warnings);
  else if (suite == "column")
    bench_column(cfg, g, name, scheme, columns, summary, warnings);
  else
    bench_localization(cfg, g, name, scheme, columns, summary, warnings);
  summary["warnings"] = warnings;
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  write_json(cfg, "bench_summary.json", summary);
  std::cout << summary.dump(2) << '\n';
  return 0;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--graph", cfg.graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--format", cfg.format, "Input format")
      ->check(CLI::IsMember({"edges0", "edges1", "mtx"}))
      ->capture_default_str();
  cmd->add_option("--out-dir", cfg.out_dir, "Directory for output files")->capture_default_str();
}

void add_query(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--alpha", cfg.alpha, "Katz damping: a number or 'hard' for 1/(||A||_2+1)")
      ->capture_default_str();
  cmd->add_option("--tau", cfg.tau, "Stopping tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
}

void add_bounds(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--lambda-lo", cfg.lambda_lo, "Lower spectrum bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lambda-hi", cfg.lambda_hi, "Upper spectrum bound (default: operator 1-norm)");
  cmd->add_option("--max-iter", cfg.max_iter, "Iteration cap (default: min(n, 500))");
}

void add_push(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--scaling", cfg.scaling, "Push priority")
      ->check(CLI::IsMember({"residual", "degree"}))
      ->capture_default_str();
  cmd->add_option("--max-pushes", cfg.max_pushes, "Push cap (default: 50 n)");
  cmd->add_option("--k", cfg.ks, "Top-k sizes for the oracle comparison")->delimiter(',')->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Katz and commute-time scores on large sparse graphs"};
  app.require_subcommand(1);
  Config cfg;

  auto* stats = app.add_subcommand("stats", "Summarize the preprocessed graph");
  add_common(stats, cfg);
  bool spectral = false;
  stats->add_flag("--spectral", spectral, "Also estimate ||A||_2");

  auto* pairwise = app.add_subcommand("pairwise", "Bounds on one pairwise score");
  add_common(pairwise, cfg);
  add_query(pairwise, cfg);
  add_bounds(pairwise, cfg);
  std::string pair_kind = "commute";
  Index pi = 0, pj = 0;
  pairwise->add_option("--kind", pair_kind)->check(CLI::IsMember({"katz", "commute"}))->capture_default_str();
  pairwise->add_option("-i,--i", pi, "First vertex (original id)")->required();
  pairwise->add_option("-j,--j", pj, "Second vertex (original id)")->required();
  pairwise->add_flag("--baseline", cfg.baseline, "Also run conjugate gradient");

  auto* column = app.add_subcommand("column", "One column of the score matrix");
  column->footer(
      "Katz columns are x - e_i over the touched vertices. If no push happens\n"
      "(tau >= the source priority) the column is reported as all zeros.");
  add_common(column, cfg);
  add_query(column, cfg);
  add_push(column, cfg);
  std::string col_kind = "katz";
  Index ci = 0;
  bool full_length = false, no_oracle = false;
  column->add_option("--kind", col_kind)->check(CLI::IsMember({"katz", "commute"}))->capture_default_str();
  column->add_option("-i,--i", ci, "Source vertex (original id)")->required();
  column->add_option("--max-iter", cfg.max_iter, "Commute solver iteration cap (default: n)");
  column->add_flag("--full-length", full_length,
                   "Commute: run the solver for n steps so the diagonal estimate is exact");
  column->add_flag("--no-oracle", no_oracle, "Skip the dense comparison on small graphs");

  auto* bench = app.add_subcommand("bench", "Benchmark sweeps");
  add_common(bench, cfg);
  add_query(bench, cfg);
  add_bounds(bench, cfg);
  add_push(bench, cfg);
  std::string suite = "pairwise", scheme = "random";
  Index commute_pairs = 20, katz_pairs = 100, columns = 20;
  bench->add_option("--suite", suite)
      ->check(CLI::IsMember({"pairwise", "column", "localization"}))
      ->capture_default_str();
  bench->add_option("--scheme", scheme, "Vertex sampling")
      ->check(CLI::IsMember({"random", "degree"}))
      ->capture_default_str();
  bench->add_option("--commute-pairs", commute_pairs)->capture_default_str();
  bench->add_option("--katz-pairs", katz_pairs)->capture_default_str();
  bench->add_option("--columns", columns, "Source vertices for column/localization")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return cmd_stats(cfg, spectral);
    if (pairwise->parsed()) return cmd_pairwise(cfg, pair_kind, pi, pj);
    if (column->parsed()) {
      if (col_kind == "commute" && !column->count("--tau")) cfg.tau = 1e-16;
      return cmd_column(cfg, col_kind, ci, full_length, !no_oracle);
    }
    return cmd_bench(cfg, suite, scheme, commute_pairs, katz_pairs, columns);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
