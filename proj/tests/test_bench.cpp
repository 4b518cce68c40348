#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dyntopk/bench.hpp"
#include "support/graphs.hpp"

using namespace dyntopk;
using namespace dyntopk::bench;
using namespace dyntopk::testing;

namespace {

// Blanks the three timing columns of every data row.
std::string mask_timings(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      out << line << '\n';
      header = false;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    for (int i : {4, 5, 6})
      if (!cols[i].empty()) cols[i] = "*";
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
  }
  return out.str();
}

std::string csv_of(const BenchReport& r) {
  std::ostringstream out;
  write_csv(out, r.records);
  return out.str();
}

}  // namespace

TEST(UniformIndex, StaysInRange) {
  std::mt19937_64 rng(5);
  for (std::uint64_t bound : {1ULL, 2ULL, 7ULL, 1000ULL})
    for (int i = 0; i < 200; ++i) ASSERT_LT(uniform_index(rng, bound), bound);
}

TEST(Benchmark, SingleInsertionOnPath) {
  BenchConfig cfg;
  cfg.k = 1;
  cfg.num_updates = 1;
  cfg.static_every = 1;
  const auto r = run_benchmark(cfg, path(4));
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.records[0].update.insert);
  EXPECT_TRUE(r.records[0].static_us.has_value());
  EXPECT_FALSE(r.records[0].static_mismatch);
  EXPECT_DOUBLE_EQ(r.records[0].top1_value, 2.5);
}

TEST(Benchmark, StaticSampledEveryNth) {
  BenchConfig cfg;
  cfg.k = 3;
  cfg.num_updates = 7;
  cfg.static_every = 3;
  const auto r = run_benchmark(cfg, erdos_renyi(40, 100, false, 1));
  for (const auto& rec : r.records) EXPECT_EQ(rec.static_us.has_value(), rec.index % 3 == 0);
}

TEST(Benchmark, DeterministicModuloTimings) {
  for (Operation op : {Operation::Insert, Operation::Delete, Operation::Mixed}) {
    BenchConfig cfg;
    cfg.op = op;
    cfg.k = 4;
    cfg.num_updates = 15;
    cfg.static_every = 4;
    cfg.seed = 99;
    const Graph g = erdos_renyi(60, 150, true, 8);
    const auto a = run_benchmark(cfg, g);
    const auto b = run_benchmark(cfg, g);
    EXPECT_EQ(mask_timings(csv_of(a)), mask_timings(csv_of(b))) << to_string(op);
    for (const auto& rec : a.records) {
      EXPECT_FALSE(rec.static_mismatch);
      if (op == Operation::Insert) {
        EXPECT_TRUE(rec.update.insert);
      }
      if (op == Operation::Delete) {
        EXPECT_FALSE(rec.update.insert);
      }
    }
  }
}

TEST(Benchmark, InsertionPercentagesSumToHundred) {
  BenchConfig cfg;
  cfg.num_updates = 30;
  cfg.k = 5;
  const auto r = run_benchmark(cfg, erdos_renyi(200, 600, false, 4));
  const auto& s = r.summary;
  EXPECT_NEAR(s.pct_faraway + s.pct_boundary + s.pct_distbound, 100.0, 1e-9);
  EXPECT_GT(s.pct_affected, 0.0);
  EXPECT_LE(s.pct_bfscuts, 100.0);
}

TEST(Benchmark, RejectsBadConfig) {
  BenchConfig cfg;
  cfg.num_updates = 10;
  EXPECT_THROW(run_benchmark(cfg, path(4)), std::invalid_argument);
  cfg.num_updates = 1;
  cfg.static_every = 0;
  EXPECT_THROW(run_benchmark(cfg, path(4)), std::invalid_argument);
}

TEST(Summary, GeometricMeanOfSpeedups) {
  std::vector<BenchRecord> recs(3);
  recs[0].speedup = 2.0;
  recs[1].speedup = 8.0;
  recs[2].update.insert = true;
  const auto s = summarize(recs, 10);
  ASSERT_TRUE(s.gmean_speedup.has_value());
  EXPECT_NEAR(*s.gmean_speedup, std::exp((std::log(2.0) + std::log(8.0)) / 2), 1e-12);
  EXPECT_DOUBLE_EQ(*s.min_speedup, 2.0);
  EXPECT_DOUBLE_EQ(*s.max_speedup, 8.0);
}

TEST(Summary, JsonKeysAndNulls) {
  const auto j = summary_json(summarize({}, 5));
  EXPECT_EQ(j.dump(),
            "{\"gmean_speedup\":null,\"min_speedup\":null,\"max_speedup\":null,\"pct_affected\":0.0,"
            "\"pct_faraway\":0.0,\"pct_boundary\":0.0,\"pct_distbound\":0.0,\"pct_bfscuts\":0.0}");
}

TEST(Csv, HeaderAndBlankStaticColumns) {
  BenchRecord rec;
  rec.index = 2;
  rec.update = {false, 3, 4};
  rec.dynamic_us = 1.5;
  rec.top1_value = 1.0 / 3;
  std::ostringstream out;
  write_csv(out, {rec});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n2,delete,3,4,,1.500,,0,0,0,0,0,0.333333333\n");
}

TEST(Verify, PassesOnRandomMixedRun) {
  for (Variant variant : {Variant::NBCut, Variant::NBBound}) {
    BenchConfig cfg;
    cfg.variant = variant;
    cfg.op = Operation::Mixed;
    cfg.k = 5;
    cfg.num_updates = 20;
    const auto r = verify_run(cfg, erdos_renyi(50, 120, false, 6));
    EXPECT_TRUE(r.passed) << r.message;
    EXPECT_EQ(r.updates_checked, 20u);
  }
}

TEST(Verify, CorruptedBoundIsReported) {
  BenchConfig cfg;
  cfg.op = Operation::Mixed;
  cfg.k = 3;
  cfg.num_updates = 5;
  const auto r = verify_run(cfg, erdos_renyi(30, 60, false, 2), [](DynamicTopK& e, count i) {
    if (i == 2) e.mutable_state().cbar[7] = -1.0;
  });
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.updates_checked, 3u);
  EXPECT_NE(r.message.find("node 7"), std::string::npos) << r.message;
}

TEST(Verify, NoUpdatesChecksInitialStateOnly) {
  BenchConfig cfg;
  cfg.num_updates = 0;
  cfg.op = Operation::Mixed;
  const auto r = verify_run(cfg, star(4));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.updates_checked, 0u);
}
