// Command-line front end: sample, build-graph, solve, nonlocal-check,
// converge, ustat, plot, validate.

#include "cheeger/consistency.hpp"
#include "cheeger/cut_solvers.hpp"
#include "cheeger/error.hpp"
#include "cheeger/harness.hpp"
#include "cheeger/io.hpp"
#include "cheeger/nonlocal_tv.hpp"
#include "cheeger/proximity_graph.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace cheeger;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int default_workers() {
  if (const char* env = std::getenv("CHEEGER_LAB_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Config, "CHEEGER_LAB_WORKERS must be a positive integer");
  }
  return 1;
}

void emit_json(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(out, j.dump(2) + "\n");
  }
}

FamilyMember canonical(const Manifold& m) { return CheegerReference(m).canonical_member(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cheeger cut lab: graph and continuum Cheeger cuts on reference manifolds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads (default: CHEEGER_LAB_WORKERS or 1)");
  app.add_option("--out", out, "Output path");

  auto* sample_cmd = app.add_subcommand("sample", "Sample a point cloud");
  std::string manifold = "circle";
  std::size_t n = 0;
  sample_cmd->add_option("--manifold", manifold, "circle | flat_torus_2 | sphere_2");
  sample_cmd->add_option("--n", n, "Number of points")->required();

  auto* graph_cmd = app.add_subcommand("build-graph", "Build an epsilon-proximity graph");
  std::string cloud_path;
  double epsilon = 0.0;
  graph_cmd->add_option("--cloud", cloud_path, "Cloud CSV")->required();
  graph_cmd->add_option("--epsilon", epsilon, "Connection radius")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Solve a graph cut problem");
  std::string graph_path, objective = "cheeger", method = "pipeline";
  double gamma = 0.0;
  solve_cmd->add_option("--graph", graph_path, "Graph CSV")->required();
  solve_cmd->add_option("--objective", objective, "cheeger | ratio | modularity");
  solve_cmd->add_option("--gamma", gamma, "Balance weight for modularity");
  solve_cmd->add_option("--method", method, "exact | arc | spectral | pipeline");

  auto* check_cmd = app.add_subcommand("nonlocal-check", "Property checks of the non-local functionals");
  check_cmd->set_help_flag("--help", "Print this help message and exit");
  std::string check = "bias";
  std::vector<double> h_list, a_list;
  int grid = 0;
  check_cmd->add_option("--manifold", manifold, "circle | flat_torus_2 | sphere_2");
  check_cmd->add_option("--check", check, "bias | monotonicity | smoothing-chain | functional-form | volume-floor");
  check_cmd->add_option("--h", h_list, "Comma-separated h values")->delimiter(',');
  check_cmd->add_option("--a", a_list, "Comma-separated a values")->delimiter(',');
  check_cmd->add_option("--grid", grid, "Grid resolution (0: spacing h/8)");

  auto* conv_cmd = app.add_subcommand("converge", "Convergence sweep");
  std::string config_path, schedule = "remark2.1";
  std::vector<std::size_t> n_list;
  std::vector<double> eps_list;
  int trials = 1;
  double eps_c = 1.0, log_power = 0.0;
  double k_eps = 0.0;
  bool record_timings = false;
  conv_cmd->add_option("--config", config_path, "JSON config (flags below are ignored when given)");
  conv_cmd->add_option("--manifold", manifold, "circle | flat_torus_2 | sphere_2");
  conv_cmd->add_option("--objective", objective, "cheeger | ratio | modularity");
  conv_cmd->add_option("--gamma", gamma, "Balance weight for modularity");
  conv_cmd->add_option("--method", method, "exact | arc | spectral | pipeline");
  conv_cmd->add_option("--n", n_list, "Comma-separated sample sizes")->delimiter(',');
  conv_cmd->add_option("--schedule", schedule, "remark2.1 | explicit");
  conv_cmd->add_option("--epsilon", eps_list, "Explicit epsilon per n")->delimiter(',');
  conv_cmd->add_option("--epsilon-c", eps_c, "c in eps = c n^-k");
  conv_cmd->add_option("--k-epsilon", k_eps, "k in eps = c n^-k (default 3/(2+4m))");
  conv_cmd->add_option("--log-power", log_power, "eps *= log(n)^p");
  conv_cmd->add_option("--trials", trials, "Trials per n");
  conv_cmd->add_option("--grid", grid, "Quadrature resolution for cut errors");
  conv_cmd->add_flag("--record-timings", record_timings, "Write elapsed_sec into summary.csv");

  auto* ustat_cmd = app.add_subcommand("ustat", "Concentration of GTV of a reference indicator");
  double exponent = 0.5;
  std::vector<double> zeta{0.1, 0.25, 0.5};
  ustat_cmd->add_option("--manifold", manifold, "circle | flat_torus_2 | sphere_2");
  ustat_cmd->add_option("--n", n_list, "Comma-separated sample sizes")->delimiter(',')->required();
  ustat_cmd->add_option("--epsilon-c", eps_c, "c in eps = c n^-k");
  ustat_cmd->add_option("--epsilon-exponent", exponent, "k in eps = c n^-k");
  ustat_cmd->add_option("--trials", trials, "Trials per n");
  ustat_cmd->add_option("--zeta", zeta, "Comma-separated zeta grid")->delimiter(',');

  auto* plot_cmd = app.add_subcommand("plot", "Plot-ready data from a summary");
  std::string summary_path, kind = "rate_loglog";
  plot_cmd->add_option("--summary", summary_path, "summary.csv or ustat.csv")->required();
  plot_cmd->add_option("--kind", kind, "rate_loglog | cut_error | concentration");

  auto* validate_cmd = app.add_subcommand("validate", "Validate and resolve an experiment config");
  validate_cmd->add_option("--config", config_path, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (workers <= 0) workers = default_workers();

    if (*sample_cmd) {
      if (out.empty()) throw Error(ErrorCode::Config, "--out required");
      const auto cloud = sample(Manifold::from_name(manifold), n, seed);
      write_cloud(cloud, out);
      std::cout << "wrote " << cloud.size() << " points to " << out << "\n";
    } else if (*graph_cmd) {
      if (out.empty()) throw Error(ErrorCode::Config, "--out required");
      const auto cloud = read_cloud(cloud_path);
      auto g = build_graph(cloud, epsilon);
      g.cloud_ref = fs::absolute(cloud_path).string();
      write_graph(g, out);
      std::cout << "wrote " << g.edge_count() << " edges to " << out << "\n";
    } else if (*solve_cmd) {
      const auto g = read_graph(graph_path);
      const Objective o = objective_from_name(objective, gamma);
      CutResult r;
      if (method == "exact") {
        r = solve_exact(g, o);
      } else if (method == "arc") {
        if (g.cloud_ref.empty()) throw Error(ErrorCode::WrongManifold, "arc method needs the graph's cloud");
        r = solve_arc_sweep(g, read_cloud(g.cloud_ref), o);
      } else if (method == "spectral") {
        SpectralOptions so;
        so.seed = seed;
        r = solve_spectral_sweep(g, o, so);
      } else if (method == "pipeline") {
        PipelineOptions po;
        po.spectral.seed = seed;
        std::optional<PointCloud> cloud;
        if (!g.cloud_ref.empty() && fs::exists(g.cloud_ref)) cloud = read_cloud(g.cloud_ref);
        r = solve_pipeline(g, o, po, cloud ? &*cloud : nullptr);
      } else {
        throw Error(ErrorCode::Config, "unknown method '" + method + "'");
      }
      emit_json(to_json(r), out);
    } else if (*check_cmd) {
      const Manifold m = Manifold::from_name(manifold);
      GridPolicy policy;
      policy.resolution = grid;
      if (h_list.empty()) h_list = {0.02, 0.05};
      const double h = *std::min_element(h_list.begin(), h_list.end());
      Json report;
      if (check == "bias") {
        report = to_json(check_bias_inequality(m, canonical(m), h_list, policy));
      } else if (check == "monotonicity") {
        if (a_list.empty()) a_list = {2 * h, 4 * h};
        report = to_json(check_monotonicity(m, ContinuumFunction::indicator(m, canonical(m)), h, a_list, policy));
      } else if (check == "smoothing-chain") {
        if (a_list.empty()) a_list = {std::max(h, 0.05)};
        report["check"] = "smoothing-chain";
        bool pass = true;
        for (double a : a_list) {
          auto r = check_smoothing_chain(m, ContinuumFunction::indicator(m, canonical(m)), h, a, policy);
          pass = pass && r.pass;
          report["rows"].push_back(to_json(r));
        }
        report["pass"] = pass;
      } else if (check == "functional-form") {
        report["check"] = "functional-form";
        report["manifold"] = std::string(m.name());
        report["reference"] = CheegerReference(m).constant();
        const auto g = policy.make(m, h);
        const auto f = ContinuumFunction::indicator(m, canonical(m));
        report["indicator"] = cheeger_functional_form(f, g);
        Json smoothed = Json::array();
        for (double a : a_list) {
          const auto sf = smooth(f, SmoothingKernel(m.intrinsic_dim(), a), g);
          smoothed.push_back({{"a", a}, {"value", cheeger_functional_form(sf, g)}});
        }
        report["smoothed"] = smoothed;
      } else if (check == "volume-floor") {
        report = to_json(check_volume_floor(m, h_list, policy));
      } else {
        throw Error(ErrorCode::Config, "unknown check '" + check + "'");
      }
      emit_json(report, out);
    } else if (*conv_cmd) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        const auto v = validate_config(fs::path(config_path));
        if (!v.ok()) {
          for (const auto& e : v.errors) std::cerr << config_path << ": " << e << "\n";
          return kExitConfig;
        }
        cfg = *v.config;
        if (!out.empty()) cfg.out_dir = out;
      } else {
        cfg.manifold = manifold;
        cfg.objective = objective;
        cfg.gamma = gamma;
        cfg.method = method;
        cfg.n_list = n_list;
        if (schedule == "explicit") {
          cfg.epsilon_list = eps_list;
        } else if (schedule != "remark2.1") {
          throw Error(ErrorCode::Config, "--schedule must be remark2.1 or explicit");
        }
        cfg.epsilon_c = eps_c;
        if (k_eps > 0.0) cfg.k_epsilon = k_eps;
        cfg.log_power = log_power;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.out_dir = out;
        cfg.grid = grid;
        cfg.record_timings = record_timings;
      }
      const auto v = validate_config(cfg);
      if (!v.ok()) {
        for (const auto& e : v.errors) std::cerr << "config: " << e << "\n";
        return kExitConfig;
      }
      if (cfg.out_dir.empty()) throw Error(ErrorCode::Config, "--out required");
      RunOptions ro;
      ro.workers = workers;
      const auto outcome = run_experiment(cfg, ro);
      std::cout << "records " << outcome.records.size() << " (reused " << outcome.reused << ", failed "
                << outcome.failed << ")\n";
      std::cout << "digest " << outcome.digest << "\n";
      for (const char* key : {"abs_error", "l1_cut_error"}) {
        const auto& r = outcome.rates[key];
        if (r.contains("slope")) std::cout << key << " slope " << r["slope"].get<double>() << "\n";
      }
    } else if (*ustat_cmd) {
      const Manifold m = Manifold::from_name(manifold);
      EpsilonRule rule{eps_c, exponent};
      const auto rep = ustat_concentration(m, canonical(m), n_list, rule, trials, seed, zeta, workers);
      const Json j = to_json(rep);
      if (out.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        const fs::path dir = out;
        write_text(dir / "ustat.json", j.dump(2) + "\n");
        std::ostringstream csv;
        csv << "n,epsilon,trial,gtv\n";
        for (const auto& row : rep.rows) {
          for (std::size_t t = 0; t < row.values.size(); ++t) {
            csv << row.n << "," << format_double(row.epsilon) << "," << t << "," << format_double(row.values[t])
                << "\n";
          }
        }
        write_text(dir / "ustat.csv", csv.str());
        std::cout << "wrote " << (dir / "ustat.json").string() << "\n";
      }
    } else if (*plot_cmd) {
      const fs::path dir = out.empty() ? fs::path(summary_path).parent_path() : fs::path(out);
      const auto d = emit_plot_data(summary_path, plot_kind_from_name(kind), dir);
      std::cout << kind << ": " << d.x.size() << " rows, slope " << d.slope << "\n";
    } else if (*validate_cmd) {
      const auto v = validate_config(fs::path(config_path));
      if (!v.ok()) {
        for (const auto& e : v.errors) std::cerr << config_path << ": " << e << "\n";
        return kExitConfig;
      }
      std::cout << v.resolved.dump(2) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::Config ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
