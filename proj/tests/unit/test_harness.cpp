#include "cheeger/error.hpp"
#include "cheeger/harness.hpp"
#include "cheeger/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace cheeger;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("cheeger_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig c;
  c.manifold = "circle";
  c.n_list = {300, 600};
  c.epsilon_c = 2.0;
  c.k_epsilon = 0.5;
  c.trials = 2;
  c.seed = 7;
  c.out_dir = out.string();
  c.grid = 1024;
  return c;
}

bool has_error(const ConfigValidation& v, const std::string& needle) {
  for (const auto& e : v.errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Config, MissingNList) {
  const auto v = validate_config_text(R"({"manifold": "circle"})");
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_error(v, "n_list required"));
}

TEST(Config, EpsilonAboveCeilingNamesN) {
  const auto v = validate_config_text("{\n  \"manifold\": \"circle\",\n  \"n_list\": [8]\n}");
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_error(v, "n = 8"));
  EXPECT_TRUE(has_error(v, "line 3"));
}

TEST(Config, MinimalConfigEchoesRemarkExponent) {
  for (const auto& [name, m] : {std::pair{"circle", 1}, std::pair{"flat_torus_2", 2}, std::pair{"sphere_2", 2}}) {
    const auto v = validate_config_text(std::string(R"({"manifold": ")") + name + R"(", "n_list": [1000]})");
    ASSERT_TRUE(v.ok()) << name;
    EXPECT_NEAR(v.resolved["k_epsilon"].get<double>(), 3.0 / (2.0 + 4.0 * m), 1e-15);
    EXPECT_EQ(v.resolved["m"].get<int>(), m);
  }
}

TEST(Config, UnknownKeyAndBadTypes) {
  const auto v = validate_config_text(R"({"n_list": [1000], "trails": 3, "trials": "x"})");
  EXPECT_TRUE(has_error(v, "unknown key 'trails'"));
  EXPECT_TRUE(has_error(v, "trials must be"));
  EXPECT_FALSE(validate_config_text("{ not json").ok());
}

TEST(Config, ExactNeedsSmallN) {
  const auto v = validate_config_text(R"({"n_list": [1000], "method": "exact"})");
  EXPECT_TRUE(has_error(v, "n <= 24"));
}

TEST(Harness, RecordCardinalityAndSummary) {
  const auto out = scratch("card");
  const auto outcome = run_experiment(small_config(out));
  EXPECT_EQ(outcome.records.size(), 4u);
  const auto t = read_table(out / "summary.csv");
  EXPECT_EQ(t.rows.size(), 4u);
  const std::vector<std::string> header{"n", "epsilon", "trial_seed", "cheeger_ratio", "continuum_ref", "abs_error",
                                        "l1_cut_error", "sup_displacement", "method", "certificate", "elapsed_sec"};
  EXPECT_EQ(t.header, header);
  for (const auto& r : outcome.records) {
    EXPECT_FALSE(r.failed);
    EXPECT_DOUBLE_EQ(r.continuum_ref, 4.0);
    EXPECT_NEAR(r.abs_error, std::abs(r.cheeger_ratio - 4.0), 1e-15);
    EXPECT_DOUBLE_EQ(r.epsilon, 2.0 / std::sqrt(static_cast<double>(r.n)));
  }
  EXPECT_TRUE(fs::exists(out / "config.resolved.json"));
  EXPECT_TRUE(fs::exists(out / "digest.txt"));
}

TEST(Harness, DeterministicAcrossRunsAndWorkers) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto ra = run_experiment(small_config(a), {1, 0});
  const auto rb = run_experiment(small_config(b), {3, 0});
  EXPECT_EQ(ra.digest, rb.digest);
  EXPECT_EQ(read_text(a / "summary.csv"), read_text(b / "summary.csv"));
}

TEST(Harness, ResumeAfterInterruption) {
  const auto full = scratch("resume_full");
  const auto part = scratch("resume_part");
  const auto reference = run_experiment(small_config(full));
  const auto first = run_experiment(small_config(part), {1, 1});
  EXPECT_FALSE(fs::exists(part / "summary.csv"));
  const auto resumed = run_experiment(small_config(part), {2, 0});
  EXPECT_EQ(resumed.reused, 1u);
  EXPECT_EQ(resumed.digest, reference.digest);
  (void)first;
}

TEST(Harness, ChangedConfigIgnoresStaleRecords) {
  const auto out = scratch("stale");
  run_experiment(small_config(out));
  auto c = small_config(out);
  c.epsilon_c = 2.5;
  const auto second = run_experiment(c);
  EXPECT_EQ(second.reused, 0u);
}

TEST(Harness, RecordRoundTrip) {
  const auto c = small_config(scratch("round"));
  const auto r = run_trial(c, 0, 1);
  const auto back = record_from_json(to_json(r, true));
  EXPECT_EQ(to_json(back, true).dump(), to_json(r, true).dump());
  EXPECT_EQ(record_filename(r), record_filename(back));
}

TEST(Plot, RateLogLogOnSyntheticSummary) {
  const auto out = scratch("plot");
  std::ofstream(out / "summary.csv") << "n,abs_error\n100,0.1\n400,0.05\n1600,0.025\n";
  const auto d = emit_plot_data(out / "summary.csv", PlotKind::RateLogLog, out);
  EXPECT_EQ(d.x.size(), 3u);
  EXPECT_NEAR(d.slope, -0.5, 1e-12);
  const auto t = read_table(out / "rate_loglog.tsv");
  EXPECT_EQ(t.rows.size(), 3u);
  EXPECT_NE(read_text(out / "rate_loglog.tsv").find("# slope"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "rate_loglog.svg"));
}

TEST(Plot, ConcentrationMeanAndStd) {
  const auto out = scratch("plot_conc");
  std::ofstream(out / "ustat.csv") << "n,epsilon,trial,gtv\n500,0.1,0,1.0\n500,0.1,1,3.0\n2000,0.05,0,2.0\n2000,0.05,1,2.0\n";
  const auto d = emit_plot_data(out / "ustat.csv", PlotKind::Concentration, out);
  ASSERT_EQ(d.y.size(), 2u);
  EXPECT_DOUBLE_EQ(d.y[0], 2.0);
  EXPECT_DOUBLE_EQ(d.sigma[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.sigma[1], 0.0);
}

TEST(Plot, CutErrorTrendFlagAndMissingColumns) {
  const auto out = scratch("plot_cut");
  std::ofstream(out / "summary.csv") << "n,l1_cut_error\n100,0.3\n200,0.2\n400,0.1\n";
  emit_plot_data(out / "summary.csv", PlotKind::CutError, out);
  EXPECT_NE(read_text(out / "cut_error.tsv").find("# monotone_trend\tyes"), std::string::npos);
  std::ofstream(out / "bad.csv") << "x,y\n1,2\n";
  try {
    emit_plot_data(out / "bad.csv", PlotKind::RateLogLog, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingColumns);
  }
}

TEST(Io, CloudAndGraphRoundTrip) {
  const auto out = scratch("io");
  const auto cloud = sample(Manifold::flat_torus(), 200, 4);
  write_cloud(cloud, out / "c.csv");
  const auto back = read_cloud(out / "c.csv");
  EXPECT_EQ(back.points, cloud.points);
  ASSERT_TRUE(back.manifold.has_value());
  auto g = build_graph(cloud, 0.15);
  g.cloud_ref = (out / "c.csv").string();
  write_graph(g, out / "g.csv");
  const auto h = read_graph(out / "g.csv");
  ASSERT_EQ(h.size(), g.size());
  EXPECT_EQ(h.edge_count(), g.edge_count());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto a = g.neighbors(i);
    const auto b = h.neighbors(i);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  EXPECT_EQ(h.epsilon(), g.epsilon());
}
