#include "cheeger/io.hpp"

#include "cheeger/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cheeger {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Io, "bad number '" + s + "' in " + where);
  }
}

long long parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Io, "bad integer '" + s + "' in " + where);
  }
}

Json parse_json_file(const fs::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
  }
  fs::rename(tmp, path);
}

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Table read_table(const fs::path& path) {
  std::istringstream in(read_text(path));
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  return p;
}

void write_cloud(const PointCloud& cloud, const fs::path& csv) {
  std::ostringstream out;
  out << "i";
  for (int k = 0; k < cloud.ambient_dim; ++k) out << ",x" << k;
  out << "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << i;
    for (int k = 0; k < cloud.ambient_dim; ++k) out << "," << format_double(cloud.points[i][k]);
    out << "\n";
  }
  write_text(csv, out.str());
  Json meta;
  meta["manifold"] = cloud.manifold ? Json(std::string(cloud.manifold->name())) : Json(nullptr);
  meta["n"] = cloud.size();
  meta["seed"] = cloud.seed;
  meta["ambient_dim"] = cloud.ambient_dim;
  meta["intrinsic_dim"] = cloud.intrinsic_dim;
  write_text(sidecar_path(csv), meta.dump(2) + "\n");
}

PointCloud read_cloud(const fs::path& csv) {
  const Table t = read_table(csv);
  if (t.header.empty() || t.header[0] != "i") throw Error(ErrorCode::Io, csv.string() + ": missing i column");
  const int dim = static_cast<int>(t.header.size()) - 1;
  if (dim < 1 || dim > 4) throw Error(ErrorCode::Io, csv.string() + ": unsupported dimension");
  std::vector<Point> pts;
  pts.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (static_cast<int>(row.size()) != dim + 1) throw Error(ErrorCode::Io, csv.string() + ": ragged row");
    Point p{};
    for (int k = 0; k < dim; ++k) p[k] = parse_double(row[k + 1], csv.string());
    pts.push_back(p);
  }
  PointCloud cloud;
  const fs::path side = sidecar_path(csv);
  if (fs::exists(side)) {
    const Json meta = parse_json_file(side);
    if (meta.contains("manifold") && meta["manifold"].is_string()) {
      cloud.manifold = Manifold::from_name(meta["manifold"].get<std::string>());
    }
    if (meta.contains("seed")) cloud.seed = meta["seed"].get<std::uint64_t>();
    if (meta.contains("n") && meta["n"].get<std::size_t>() != pts.size()) {
      throw Error(ErrorCode::Io, csv.string() + ": row count differs from sidecar n");
    }
    cloud.intrinsic_dim = meta.value("intrinsic_dim", 0);
  }
  cloud.points = std::move(pts);
  cloud.ambient_dim = cloud.manifold ? cloud.manifold->ambient_dim() : dim;
  if (cloud.manifold) cloud.intrinsic_dim = cloud.manifold->intrinsic_dim();
  if (cloud.intrinsic_dim <= 0) cloud.intrinsic_dim = dim;
  return cloud;
}

void write_graph(const ProximityGraph& g, const fs::path& csv) {
  std::ostringstream out;
  out << "i,j\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors(i)) {
      if (static_cast<std::size_t>(j) > i) out << i << "," << j << "\n";
    }
  }
  write_text(csv, out.str());
  Json meta;
  meta["n"] = g.size();
  meta["epsilon"] = g.epsilon();
  meta["m"] = g.intrinsic_dim();
  meta["cloud_ref"] = g.cloud_ref;
  write_text(sidecar_path(csv), meta.dump(2) + "\n");
}

ProximityGraph read_graph(const fs::path& csv) {
  const Json meta = parse_json_file(sidecar_path(csv));
  const Table t = read_table(csv);
  if (t.column("i") != 0 || t.column("j") != 1) throw Error(ErrorCode::Io, csv.string() + ": expected header i,j");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (row.size() != 2) throw Error(ErrorCode::Io, csv.string() + ": ragged row");
    edges.emplace_back(static_cast<int>(parse_int(row[0], csv.string())),
                       static_cast<int>(parse_int(row[1], csv.string())));
  }
  ProximityGraph g = graph_from_edges(meta.at("n").get<std::size_t>(), meta.at("epsilon").get<double>(),
                                      meta.at("m").get<int>(), edges);
  g.cloud_ref = meta.value("cloud_ref", std::string());
  if (!g.cloud_ref.empty()) {
    fs::path ref = g.cloud_ref;
    if (ref.is_relative() && csv.has_parent_path() && !fs::exists(ref)) ref = csv.parent_path() / ref;
    const fs::path side = sidecar_path(ref);
    if (fs::exists(side)) {
      const Json cm = parse_json_file(side);
      if (cm.contains("manifold") && cm["manifold"].is_string()) {
        g.manifold = Manifold::from_name(cm["manifold"].get<std::string>()).kind();
      }
    }
  }
  return g;
}

Json to_json(const FamilyMember& m) {
  Json j;
  switch (m.kind) {
    case ManifoldKind::Circle:
      j["family"] = "half_arc";
      j["center"] = m.center;
      break;
    case ManifoldKind::FlatTorus2:
      j["family"] = "strip";
      j["axis"] = m.axis;
      j["offset"] = m.offset;
      break;
    case ManifoldKind::Sphere2:
      j["family"] = "hemisphere";
      j["pole"] = {m.pole[0], m.pole[1], m.pole[2]};
      break;
  }
  return j;
}

Json to_json(const CutResult& r) {
  Json j;
  j["subset"] = r.subset;
  j["objective"] = to_string(r.objective);
  if (r.objective.kind == Objective::Kind::Modularity) j["gamma"] = r.objective.gamma;
  j["objective_value"] = r.objective_value;
  j["gtv"] = r.gtv;
  j["balance"] = r.balance;
  j["cut"] = r.cut;
  j["method"] = to_string(r.solver);
  j["certificate"] = to_string(r.certificate);
  j["elapsed_sec"] = r.elapsed;
  if (r.eigen_residual) j["eigen_residual"] = *r.eigen_residual;
  if (r.degraded) j["degraded"] = true;
  return j;
}

Json to_json(const BiasReport& r) {
  Json j;
  j["check"] = "bias";
  j["manifold"] = r.manifold;
  j["constant"] = kCheckConstant;
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"h", row.h},
                         {"tv_h", row.tv_h},
                         {"sigma_tv", row.sigma_tv},
                         {"ratio", row.ratio},
                         {"bound", row.bound},
                         {"violated", row.violated}});
  }
  j["fitted_constant"] = r.fitted_constant;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const MonotonicityReport& r) {
  Json j;
  j["check"] = "monotonicity";
  j["manifold"] = r.manifold;
  j["constant"] = kCheckConstant;
  j["h"] = r.h;
  j["tv_h"] = r.tv_h;
  j["degenerate"] = r.degenerate;
  for (const auto& row : r.rows) {
    j["rows"].push_back(
        {{"a", row.a}, {"tv_a", row.tv_a}, {"ratio", row.ratio}, {"violated", row.violated}});
  }
  j["fitted_constant"] = r.fitted_constant;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const SmoothingChainReport& r) {
  Json j;
  j["check"] = "smoothing-chain";
  j["manifold"] = r.manifold;
  j["constant"] = kCheckConstant;
  j["h"] = r.h;
  j["h_tilde"] = r.h;
  j["a"] = r.a;
  j["sigma_tv_smoothed"] = r.sigma_tv_smoothed;
  j["tv_h"] = r.tv_h;
  j["sup_norm"] = r.sup_norm;
  j["ratio"] = r.ratio;
  j["bound_residual"] = r.bound_residual;
  j["l1_distance"] = r.l1_distance;
  j["l1_ratio"] = r.l1_ratio;
  j["max_gradient"] = r.max_gradient;
  j["gradient_ratio"] = r.gradient_ratio;
  j["statement_level"] = true;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const VolumeFloorReport& r) {
  Json j;
  j["check"] = "volume-floor";
  j["manifold"] = r.manifold;
  j["ratio_cap"] = r.ratio_cap;
  j["beta0"] = r.beta0;
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"set", row.label},
                         {"h", row.h},
                         {"volume", row.volume},
                         {"tv_h", row.tv_h},
                         {"ratio", row.ratio},
                         {"violated", row.violated}});
  }
  j["pass"] = r.pass;
  return j;
}

Json to_json(const UstatReport& r) {
  Json j;
  j["manifold"] = r.manifold;
  j["sigma_tv"] = r.sigma_tv;
  for (const auto& row : r.rows) {
    Json jr;
    jr["n"] = row.n;
    jr["epsilon"] = row.epsilon;
    jr["mean"] = row.mean;
    jr["stddev"] = row.stddev;
    jr["threshold_base"] = row.threshold_base;
    jr["zeta"] = row.zeta;
    jr["exceedance"] = row.exceedance;
    jr["values"] = row.values;
    j["rows"].push_back(jr);
  }
  return j;
}

Json to_json(const RateReport& r) {
  Json j;
  j["n"] = r.n_values;
  j["median_error"] = r.medians;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["slope_ci"] = {r.ci_low, r.ci_high};
  j["bootstrap_resamples"] = r.bootstrap;
  return j;
}

Json to_json(const ExcessReport& r) {
  Json j;
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"t", row.t}, {"l1_size", row.l1_size}, {"excess", row.excess}});
  }
  j["slope"] = r.slope;
  j["fitted_c"] = r.fitted_c;
  return j;
}

}  // namespace cheeger
