#include "cheeger/harness.hpp"

#include "cheeger/error.hpp"
#include "cheeger/numeric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cheeger {

namespace fs = std::filesystem;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "manifold", "n_list",         "epsilon_list", "epsilon_c",          "k_epsilon",
      "log_power", "objective",     "gamma",        "method",             "bandwidth_exponent",
      "trials",   "seed",           "out_dir",      "grid",               "record_timings",
      "schedule"};
  return keys;
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int default_grid(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Circle: return 4096;
    case ManifoldKind::FlatTorus2: return 128;
    case ManifoldKind::Sphere2: return 128;
  }
  return 128;
}

// Invariant checks shared by the text and in-memory validators; `where`
// prefixes a message with the location of the named key.
void check_invariants(const ExperimentConfig& c, std::vector<std::string>& errors,
                      const std::function<std::string(const std::string&)>& where) {
  std::optional<Manifold> m;
  try {
    m = Manifold::from_name(c.manifold);
  } catch (const Error& e) {
    errors.push_back(where("manifold") + e.what());
  }
  if (c.n_list.empty()) errors.push_back(where("n_list") + "n_list required");
  for (std::size_t n : c.n_list) {
    if (n < 8) errors.push_back(where("n_list") + "n = " + std::to_string(n) + " is below the minimum 8");
  }
  if (!c.epsilon_list.empty() && c.epsilon_list.size() != c.n_list.size()) {
    errors.push_back(where("epsilon_list") + "epsilon_list must have one entry per n");
  }
  if (c.trials < 1) errors.push_back(where("trials") + "trials must be >= 1");
  if (!(c.epsilon_c > 0.0)) errors.push_back(where("epsilon_c") + "epsilon_c must be positive");
  if (c.k_epsilon && !(*c.k_epsilon > 0.0)) errors.push_back(where("k_epsilon") + "k_epsilon must be positive");
  if (!(c.bandwidth_exponent > 0.0)) {
    errors.push_back(where("bandwidth_exponent") + "bandwidth_exponent must be positive");
  }
  if (c.grid < 0) errors.push_back(where("grid") + "grid must be >= 0");
  try {
    objective_from_name(c.objective, c.gamma);
  } catch (const Error& e) {
    errors.push_back(where("objective") + e.what());
  }
  static const std::set<std::string> methods{"exact", "arc", "spectral", "pipeline"};
  if (!methods.count(c.method)) {
    errors.push_back(where("method") + "unknown method '" + c.method +
                     "' (expected exact | arc | spectral | pipeline)");
  }
  if (c.method == "exact") {
    for (std::size_t n : c.n_list) {
      if (n > kExactSizeLimit) {
        errors.push_back(where("method") + "exact method needs n <= 24, got n = " + std::to_string(n));
      }
    }
  }
  if (c.method == "arc" && m && m->kind() != ManifoldKind::Circle) {
    errors.push_back(where("method") + "arc method requires the circle");
  }
  if (!m || c.n_list.empty()) return;
  if (!c.epsilon_list.empty() && c.epsilon_list.size() != c.n_list.size()) return;
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    const double eps = c.epsilon_for(i);
    if (!(eps > 0.0)) {
      errors.push_back(where(c.epsilon_list.empty() ? "epsilon_c" : "epsilon_list") +
                       "epsilon(n = " + std::to_string(c.n_list[i]) + ") must be positive");
    } else if (eps > m->epsilon0()) {
      errors.push_back(where(c.epsilon_list.empty() ? "n_list" : "epsilon_list") + "epsilon(n = " +
                       std::to_string(c.n_list[i]) + ") = " + format_double(eps) +
                       " exceeds epsilon_0 = " + format_double(m->epsilon0()));
    }
  }
}

template <class T>
bool read_field(const Json& j, const std::string& key, T& out, std::vector<std::string>& errors,
                const std::function<std::string(const std::string&)>& where, const char* type) {
  if (!j.contains(key)) return false;
  try {
    out = j.at(key).get<T>();
    return true;
  } catch (const nlohmann::json::exception&) {
    errors.push_back(where(key) + key + " must be " + type);
    return false;
  }
}

double seconds_between(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int ExperimentConfig::intrinsic_dim() const { return Manifold::from_name(manifold).intrinsic_dim(); }

double ExperimentConfig::k_eps() const {
  if (k_epsilon) return *k_epsilon;
  const int m = intrinsic_dim();
  return 3.0 / (2.0 + 4.0 * m);
}

double ExperimentConfig::epsilon_for(std::size_t index) const {
  if (!epsilon_list.empty()) return epsilon_list.at(index);
  const double n = static_cast<double>(n_list.at(index));
  double eps = epsilon_c * std::pow(n, -k_eps());
  if (log_power != 0.0) eps *= std::pow(std::log(n), log_power);
  return eps;
}

double ExperimentConfig::bandwidth(double epsilon) const { return std::pow(epsilon, bandwidth_exponent); }

Json resolved_config(const ExperimentConfig& c) {
  Json j;
  j["manifold"] = c.manifold;
  j["n_list"] = c.n_list;
  j["schedule"] = c.epsilon_list.empty() ? "remark2.1" : "explicit";
  j["epsilon_list"] = c.epsilon_list;
  j["epsilon_c"] = c.epsilon_c;
  j["log_power"] = c.log_power;
  j["objective"] = c.objective;
  j["gamma"] = c.gamma;
  j["method"] = c.method;
  j["bandwidth_exponent"] = c.bandwidth_exponent;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["record_timings"] = c.record_timings;
  try {
    const Manifold m = Manifold::from_name(c.manifold);
    const int dim = m.intrinsic_dim();
    j["grid"] = c.grid > 0 ? c.grid : default_grid(m.kind());
    j["m"] = dim;
    j["k_epsilon"] = c.k_eps();
    j["k_delta"] = 2.0 / (1.0 + 2.0 * dim);
    j["k_theta"] = 1.0 / (2.0 * (1.0 + 2.0 * dim));
    j["k_zeta"] = 3.0 / (1.0 + 2.0 * dim);
    j["epsilon_0"] = m.epsilon0();
    j["continuum_ref"] = surface_tension(dim) * continuum_cheeger(m).constant();
    Json eps = Json::array();
    Json a = Json::array();
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
      if (!c.epsilon_list.empty() && i >= c.epsilon_list.size()) break;
      eps.push_back(c.epsilon_for(i));
      a.push_back(c.bandwidth(c.epsilon_for(i)));
    }
    j["epsilon"] = eps;
    j["a"] = a;
  } catch (const Error&) {
    j["grid"] = c.grid;
  }
  return j;
}

ConfigValidation validate_config(const ExperimentConfig& config) {
  ConfigValidation v;
  check_invariants(config, v.errors, [](const std::string&) { return std::string(); });
  if (v.ok()) {
    v.config = config;
    v.resolved = resolved_config(config);
  }
  return v;
}

ConfigValidation validate_config_text(const std::string& text) {
  ConfigValidation v;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    v.errors.push_back("line " + std::to_string(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) +
                       ": invalid JSON: " + e.what());
    return v;
  }
  if (!j.is_object()) {
    v.errors.push_back("line 1: config must be a JSON object");
    return v;
  }
  auto where = [&](const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return std::string();
    return "line " + std::to_string(line_of_offset(text, pos)) + ": ";
  };
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) v.errors.push_back(where(key) + "unknown key '" + key + "'");
  }
  ExperimentConfig c;
  read_field(j, "manifold", c.manifold, v.errors, where, "a string");
  read_field(j, "n_list", c.n_list, v.errors, where, "a list of positive integers");
  read_field(j, "epsilon_list", c.epsilon_list, v.errors, where, "a list of numbers");
  read_field(j, "epsilon_c", c.epsilon_c, v.errors, where, "a number");
  double k = 0.0;
  if (read_field(j, "k_epsilon", k, v.errors, where, "a number")) c.k_epsilon = k;
  read_field(j, "log_power", c.log_power, v.errors, where, "a number");
  read_field(j, "objective", c.objective, v.errors, where, "a string");
  read_field(j, "gamma", c.gamma, v.errors, where, "a number");
  read_field(j, "method", c.method, v.errors, where, "a string");
  read_field(j, "bandwidth_exponent", c.bandwidth_exponent, v.errors, where, "a number");
  read_field(j, "trials", c.trials, v.errors, where, "an integer");
  read_field(j, "seed", c.seed, v.errors, where, "a non-negative integer");
  read_field(j, "out_dir", c.out_dir, v.errors, where, "a string");
  read_field(j, "grid", c.grid, v.errors, where, "an integer");
  read_field(j, "record_timings", c.record_timings, v.errors, where, "a boolean");
  std::string schedule;
  if (read_field(j, "schedule", schedule, v.errors, where, "a string")) {
    if (schedule != "remark2.1" && schedule != "explicit") {
      v.errors.push_back(where("schedule") + "schedule must be remark2.1 or explicit");
    } else if (schedule == "explicit" && c.epsilon_list.empty()) {
      v.errors.push_back(where("schedule") + "explicit schedule needs epsilon_list");
    }
  }
  if (!j.contains("n_list")) {
    v.errors.push_back("n_list required");
  } else {
    std::vector<std::string> inv;
    check_invariants(c, inv, where);
    v.errors.insert(v.errors.end(), inv.begin(), inv.end());
  }
  if (v.ok()) {
    v.config = c;
    v.resolved = resolved_config(c);
  }
  return v;
}

ConfigValidation validate_config(const fs::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const Error& e) {
    ConfigValidation v;
    v.errors.push_back(e.what());
    return v;
  }
  return validate_config_text(text);
}

std::string config_hash(const ExperimentConfig& c) {
  Json j = resolved_config(c);
  j.erase("out_dir");
  j.erase("record_timings");
  return hex64(fnv1a(j.dump()));
}

std::string record_filename(const ExperimentRecord& r) {
  return "record_n" + std::to_string(r.n) + "_seed" + hex64(r.trial_seed) + ".json";
}

Json to_json(const ExperimentRecord& r, bool with_timings) {
  Json j;
  j["config_hash"] = r.config_hash;
  j["n"] = r.n;
  j["trial"] = r.trial;
  j["trial_seed"] = r.trial_seed;
  j["status"] = r.failed ? "failed" : "ok";
  if (r.failed) {
    j["error"] = r.error;
  } else {
    j["epsilon"] = r.epsilon;
    j["a"] = r.a;
    j["cheeger_ratio"] = r.cheeger_ratio;
    j["continuum_ref"] = r.continuum_ref;
    j["abs_error"] = r.abs_error;
    j["l1_cut_error"] = r.l1_cut_error;
    j["discrete_error"] = r.discrete_error;
    j["smoothed_error"] = r.smoothed_error ? Json(*r.smoothed_error) : Json(nullptr);
    j["sup_displacement"] = r.sup_displacement;
    j["kappa"] = r.kappa;
    j["theta_measured"] = false;
    j["transport"] = "nearest-sample";
    j["method"] = r.method;
    j["certificate"] = r.certificate;
    j["degraded"] = r.degraded;
    j["eigen_residual"] = r.eigen_residual ? Json(*r.eigen_residual) : Json(nullptr);
  }
  if (with_timings) j["timings"] = {{"elapsed_sec", r.elapsed_sec}};
  return j;
}

ExperimentRecord record_from_json(const Json& j) {
  ExperimentRecord r;
  r.config_hash = j.at("config_hash").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.trial = j.at("trial").get<int>();
  r.trial_seed = j.at("trial_seed").get<std::uint64_t>();
  r.failed = j.at("status").get<std::string>() != "ok";
  if (r.failed) {
    r.error = j.value("error", std::string());
  } else {
    r.epsilon = j.at("epsilon").get<double>();
    r.a = j.at("a").get<double>();
    r.cheeger_ratio = j.at("cheeger_ratio").get<double>();
    r.continuum_ref = j.at("continuum_ref").get<double>();
    r.abs_error = j.at("abs_error").get<double>();
    r.l1_cut_error = j.at("l1_cut_error").get<double>();
    r.discrete_error = j.at("discrete_error").get<double>();
    if (!j.at("smoothed_error").is_null()) r.smoothed_error = j.at("smoothed_error").get<double>();
    r.sup_displacement = j.at("sup_displacement").get<double>();
    r.kappa = j.at("kappa").get<double>();
    r.method = j.at("method").get<std::string>();
    r.certificate = j.at("certificate").get<std::string>();
    r.degraded = j.at("degraded").get<bool>();
    if (!j.at("eigen_residual").is_null()) r.eigen_residual = j.at("eigen_residual").get<double>();
  }
  if (j.contains("timings")) r.elapsed_sec = j["timings"].value("elapsed_sec", 0.0);
  return r;
}

ExperimentRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentRecord r;
  r.n = config.n_list.at(n_index);
  r.trial = trial;
  r.trial_seed = derive_seed(config.seed, r.n, static_cast<std::uint64_t>(trial));
  r.config_hash = config_hash(config);
  try {
    const Manifold m = Manifold::from_name(config.manifold);
    const CheegerReference ref = continuum_cheeger(m);
    r.epsilon = config.epsilon_for(n_index);
    r.a = config.bandwidth(r.epsilon);
    r.continuum_ref = surface_tension(m.intrinsic_dim()) * ref.constant();
    const PointCloud cloud = sample(m, r.n, r.trial_seed);
    const ProximityGraph g = build_graph(cloud, r.epsilon);
    const Objective o = objective_from_name(config.objective, config.gamma);
    CutResult cut;
    if (config.method == "exact") {
      cut = solve_exact(g, o);
    } else if (config.method == "arc") {
      cut = solve_arc_sweep(g, cloud, o);
    } else if (config.method == "spectral") {
      SpectralOptions so;
      so.seed = r.trial_seed;
      cut = solve_spectral_sweep(g, o, so);
    } else {
      PipelineOptions po;
      po.spectral.seed = r.trial_seed;
      cut = solve_pipeline(g, o, po, &cloud);
    }
    const auto cb = cut_and_balance(g, cut.subset);
    const auto cheeger = objective_from_counts(Objective::cheeger(), cb.cut, cb.size, g.size(),
                                               g.functional_scale());
    r.cheeger_ratio = cheeger.value;
    r.abs_error = std::abs(r.cheeger_ratio - r.continuum_ref);
    const int res = config.grid > 0 ? config.grid : default_grid(m.kind());
    const auto grid = QuadratureGrid::with_resolution(m, res);
    const auto err = cut_l1_error(cut, cloud, ref, r.a, grid);
    r.l1_cut_error = err.l1_error;
    r.discrete_error = err.discrete_error;
    if (err.smoothed_error >= 0.0) r.smoothed_error = err.smoothed_error;
    r.sup_displacement = err.sup_displacement;
    r.kappa = std::pow(r.epsilon, 1.0 / 6.0) + r.sup_displacement / r.epsilon;
    r.method = to_string(cut.solver);
    r.certificate = to_string(cut.certificate);
    r.degraded = cut.degraded;
    r.eigen_residual = cut.eigen_residual;
  } catch (const std::exception& e) {
    r.failed = true;
    r.error = e.what();
  }
  r.elapsed_sec = seconds_between(t0, std::chrono::steady_clock::now());
  return r;
}

std::string summary_csv(const std::vector<ExperimentRecord>& records, bool with_timings) {
  std::ostringstream out;
  out << "n,epsilon,trial_seed,cheeger_ratio,continuum_ref,abs_error,l1_cut_error,"
         "sup_displacement,method,certificate,elapsed_sec\n";
  for (const auto& r : records) {
    out << r.n << ",";
    if (r.failed) {
      out << "," << r.trial_seed << ",,,,,,failed,failed,";
    } else {
      out << format_double(r.epsilon) << "," << r.trial_seed << "," << format_double(r.cheeger_ratio)
          << "," << format_double(r.continuum_ref) << "," << format_double(r.abs_error) << ","
          << format_double(r.l1_cut_error) << "," << format_double(r.sup_displacement) << ","
          << r.method << "," << r.certificate << ",";
      if (with_timings) out << format_double(r.elapsed_sec);
    }
    out << "\n";
  }
  return out.str();
}

std::string run_digest(const std::vector<ExperimentRecord>& records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : records) h = fnv1a(to_json(r, false).dump() + "\n", h);
  return hex64(h);
}

Json rates_json(const ExperimentConfig& c, const std::vector<ExperimentRecord>& records) {
  Json j;
  const Json resolved = resolved_config(c);
  j["schedule"] = {{"k_epsilon", resolved.value("k_epsilon", 0.0)},
                   {"k_delta", resolved.value("k_delta", 0.0)},
                   {"k_theta", resolved.value("k_theta", 0.0)},
                   {"k_zeta", resolved.value("k_zeta", 0.0)},
                   {"epsilon_c", c.epsilon_c},
                   {"log_power", c.log_power},
                   {"bandwidth_exponent", c.bandwidth_exponent}};
  std::map<double, std::vector<double>> abs_err, cut_err;
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
      continue;
    }
    abs_err[static_cast<double>(r.n)].push_back(r.abs_error);
    cut_err[static_cast<double>(r.n)].push_back(r.l1_cut_error);
  }
  const std::uint64_t seed = derive_seed(c.seed, 0x7a7e, 0);
  for (auto [name, data] : {std::pair{"abs_error", &abs_err}, std::pair{"l1_cut_error", &cut_err}}) {
    try {
      j[name] = to_json(fit_rate(*data, seed));
    } catch (const Error& e) {
      j[name] = {{"error", e.what()}};
    }
  }
  j["trials_failed"] = failed;
  j["transport"] = "nearest-sample surrogate; sup_displacement plays the delta role";
  j["theta_measured"] = false;
  return j;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config, const RunOptions& opts) {
  const auto v = validate_config(config);
  if (!v.ok()) {
    std::string msg = "invalid config:";
    for (const auto& e : v.errors) msg += "\n  " + e;
    throw Error(ErrorCode::Config, msg);
  }
  if (config.out_dir.empty()) throw Error(ErrorCode::Config, "out_dir required");
  const fs::path out = config.out_dir;
  const fs::path rec_dir = out / "records";
  fs::create_directories(rec_dir);
  const std::string hash = config_hash(config);

  struct Task {
    std::size_t n_index;
    int trial;
    fs::path file;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    for (int t = 0; t < config.trials; ++t) {
      ExperimentRecord probe;
      probe.n = config.n_list[i];
      probe.trial_seed = derive_seed(config.seed, probe.n, static_cast<std::uint64_t>(t));
      tasks.push_back({i, t, rec_dir / record_filename(probe)});
    }
  }

  ExperimentOutcome outcome;
  std::vector<std::optional<ExperimentRecord>> slots(tasks.size());
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (fs::exists(tasks[k].file)) {
      try {
        auto r = record_from_json(Json::parse(read_text(tasks[k].file)));
        if (r.config_hash == hash && r.trial == tasks[k].trial) {
          slots[k] = std::move(r);
          ++outcome.reused;
          continue;
        }
      } catch (const std::exception&) {
      }
    }
    missing.push_back(k);
  }
  bool interrupted = false;
  if (opts.max_new_trials > 0 && missing.size() > opts.max_new_trials) {
    missing.resize(opts.max_new_trials);
    interrupted = true;
  }
  parallel_for(missing.size(), opts.workers, [&](std::size_t idx) {
    const Task& task = tasks[missing[idx]];
    ExperimentRecord r = run_trial(config, task.n_index, task.trial);
    write_text(task.file, to_json(r, true).dump(2) + "\n");
    slots[missing[idx]] = std::move(r);
  });
  for (auto& s : slots) {
    if (s) outcome.records.push_back(std::move(*s));
  }
  for (const auto& r : outcome.records) outcome.failed += r.failed ? 1 : 0;
  if (interrupted) return outcome;

  write_text(out / "summary.csv", summary_csv(outcome.records, config.record_timings));
  outcome.rates = rates_json(config, outcome.records);
  write_text(out / "rates.json", outcome.rates.dump(2) + "\n");
  outcome.digest = run_digest(outcome.records);
  write_text(out / "digest.txt", outcome.digest + "\n");
  std::ostringstream timings;
  timings << "n,trial_seed,elapsed_sec\n";
  for (const auto& r : outcome.records) {
    timings << r.n << "," << r.trial_seed << "," << format_double(r.elapsed_sec) << "\n";
  }
  write_text(out / "timings.csv", timings.str());
  write_text(out / "config.resolved.json", resolved_config(config).dump(2) + "\n");
  return outcome;
}

}  // namespace cheeger
