#pragma once

#include "cheeger/consistency.hpp"
#include "cheeger/cut_solvers.hpp"
#include "cheeger/manifold.hpp"
#include "cheeger/nonlocal_tv.hpp"
#include "cheeger/proximity_graph.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cheeger {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form ("%.17g").
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
/// Writes via a temporary file and rename, so readers never see partial files.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Comma-separated table with a header row; no quoting.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Column index or -1.
  int column(const std::string& name) const;
};
Table read_table(const std::filesystem::path& path);

/// Cloud CSV `i,x0,...,x{d-1}` plus sidecar JSON {manifold, n, seed} next to
/// it with the extension replaced by .json.
void write_cloud(const PointCloud& cloud, const std::filesystem::path& csv);
PointCloud read_cloud(const std::filesystem::path& csv);

/// Edge list CSV `i,j` (i < j) plus sidecar JSON {n, epsilon, m, cloud_ref}.
void write_graph(const ProximityGraph& g, const std::filesystem::path& csv);
ProximityGraph read_graph(const std::filesystem::path& csv);

std::filesystem::path sidecar_path(const std::filesystem::path& csv);

Json to_json(const CutResult& r);
Json to_json(const BiasReport& r);
Json to_json(const MonotonicityReport& r);
Json to_json(const SmoothingChainReport& r);
Json to_json(const VolumeFloorReport& r);
Json to_json(const UstatReport& r);
Json to_json(const RateReport& r);
Json to_json(const ExcessReport& r);
Json to_json(const FamilyMember& m);

}  // namespace cheeger
