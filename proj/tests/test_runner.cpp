#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "hsfc/datagen.hpp"
#include "hsfc/evaluation.hpp"
#include "hsfc/runner.hpp"
#include "hsfc/rng.hpp"
#include "test_helpers.hpp"

using namespace hsfc;
using testhelpers::random_matrix;

namespace {

DataMatrix small_blobs() {
  TableSpec spec;
  spec.n = 30;
  spec.K = 3;
  spec.seed = 9;
  // default factors: equal card needs K | n -> 30 / 3 = 10 per cluster
  return generate(spec).X;
}

}  // namespace

TEST_CASE("fit_with_restarts: best equals the minimum per-restart W(P)") {
  const DataMatrix X = small_blobs();
  RunConfig cfg;
  cfg.method = MethodTag::FCM;
  cfg.fcm.K = 3;
  cfg.restarts = 8;
  cfg.seed = 100;

  const RunRecord rec = fit_with_restarts(X, cfg);
  REQUIRE(rec.wp_per_restart.size() == 8);
  REQUIRE(rec.restart_seeds.size() == 8);
  CHECK(rec.restart_seeds.front() == 100);
  CHECK(rec.restart_seeds.back() == 107);

  double min_wp = std::numeric_limits<double>::infinity();
  for (const double wp : rec.wp_per_restart) {
    if (!std::isnan(wp)) min_wp = std::min(min_wp, wp);
  }
  CHECK(rec.best_wp == min_wp);
  CHECK(rec.best_wp == doctest::Approx(crisp_wp(X, *rec.best)).epsilon(1e-15));
}

TEST_CASE("fit_with_restarts is deterministic") {
  const DataMatrix X = small_blobs();
  RunConfig cfg;
  cfg.method = MethodTag::HSFC;
  cfg.hsfc.K = 3;
  cfg.restarts = 4;
  cfg.seed = 5;

  const RunRecord a = fit_with_restarts(X, cfg);
  const RunRecord b = fit_with_restarts(X, cfg);
  CHECK(a.best_wp == b.best_wp);
  CHECK(a.wp_per_restart == b.wp_per_restart);
  CHECK(a.best->centroids.g() == b.best->centroids.g());
}

TEST_CASE("result json round-trips centroids and memberships") {
  const DataMatrix X = small_blobs();
  RunConfig cfg;
  cfg.method = MethodTag::FCM;
  cfg.fcm.K = 3;
  cfg.restarts = 3;
  cfg.seed = 11;
  const RunRecord rec = fit_with_restarts(X, cfg);

  const auto path = std::filesystem::temp_directory_path() / "hsfc_result.json";
  write_result_json(path, cfg, rec);
  const StoredResult back = read_result_json(path);
  std::filesystem::remove(path);

  CHECK(back.method == "fcm");
  CHECK(back.best_wp == rec.best_wp);
  CHECK(back.centroids.g().isApprox(rec.best->centroids.g(), 1e-15));
  CHECK(back.memberships.mu().isApprox(rec.best->memberships.mu(), 1e-12));
}

TEST_CASE("read_result_json rejects malformed files") {
  const auto path = std::filesystem::temp_directory_path() / "hsfc_bad.json";
  {
    std::ofstream out(path);
    out << "{\"schema_version\": 1, \"method\": \"fcm\"}";   // missing fields
  }
  CHECK_THROWS(read_result_json(path));
  std::filesystem::remove(path);
  CHECK_THROWS(read_result_json("/nonexistent/result.json"));
}

TEST_CASE("bench_one produces a consistent row") {
  TableSpec spec;
  spec.n = 30;
  spec.K = 3;
  spec.seed = 2;
  const GeneratedTable gen = generate(spec);

  RunConfig cfg;
  cfg.restarts = 6;
  cfg.seed = 1;
  cfg.fcm.K = 3;
  cfg.hsfc.K = 3;
  const BenchRow row = bench_one(gen.X, "tiny", 3, cfg, &gen.truth);

  CHECK(row.table == "tiny");
  CHECK(row.K == 3);
  CHECK(row.ss_hsfc > 0.0);
  CHECK(row.ss_fcm > 0.0);
  CHECK(row.ari_between >= 0.95);  // separated blobs: both find the truth
  REQUIRE(row.ari_truth_hsfc.has_value());
  REQUIRE(row.ari_truth_fcm.has_value());
  CHECK(*row.ari_truth_hsfc >= 0.95);
  CHECK(*row.ari_truth_fcm >= 0.95);
}

TEST_CASE("bench csv/json writers emit the table shape") {
  std::vector<BenchRow> rows(2);
  rows[0] = {"T1", 2, 7073.4, 7073.8, 0.78, std::nullopt, std::nullopt};
  rows[1] = {"T1", 3, 3146.1, 3146.1, 1.0, 0.99, 0.98};

  const auto csv_path = std::filesystem::temp_directory_path() / "hsfc_bench.csv";
  const auto json_path = std::filesystem::temp_directory_path() / "hsfc_bench.json";
  write_bench_csv(csv_path, rows);
  write_bench_json(json_path, rows);

  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "table,K,ss_hsfc,ss_fcm,ari_between");
  int data_lines = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ++data_lines;
  }
  CHECK(data_lines == 2);

  std::filesystem::remove(csv_path);
  std::filesystem::remove(json_path);
}
