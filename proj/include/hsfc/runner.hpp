#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hsfc/datagen.hpp"
#include "hsfc/fcm.hpp"
#include "hsfc/hsfc.hpp"

namespace hsfc {

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Crisp comparison score of a fitted model: the within-class SS of the
/// crisped partition against its own class means. Both methods are ranked
/// and reported on this common scale (the benchmark's W(P)).
double crisp_wp(const DataMatrix& X, const ClusteringResult& result);

/// Configuration snapshot for one harness run; exactly one of fcm/hsfc is
/// engaged depending on `method`.
struct RunConfig {
  MethodTag method = MethodTag::FCM;
  FcmConfig fcm;
  HsfcConfig hsfc;
  int restarts = 50;
  std::uint64_t seed = 0;  // restart r uses seed + r
};

/// Outcome of a best-of-R run. Failed restarts (degenerate clusters, solver
/// stalls) are recorded with a NaN score and skipped for selection.
struct RunRecord {
  MethodTag method = MethodTag::FCM;
  std::vector<std::uint64_t> restart_seeds;
  std::vector<double> wp_per_restart;
  int failed_restarts = 0;
  double best_wp = 0.0;  // = min over successful restarts' W(P)
  std::optional<ClusteringResult> best;
  std::int64_t wall_ms = 0;
};

/// Runs `cfg.restarts` seeded fits and keeps the result with the smallest
/// crisp W(P) (first such on ties). Throws SolverFailure when every restart
/// fails.
RunRecord fit_with_restarts(const DataMatrix& X, const RunConfig& cfg);

/// Serializes a run (schema_version 1) with centroids, memberships, trace,
/// per-restart seeds and scores. FCM runs also carry the fuzzy criterion
/// value of the best restart.
void write_result_json(const std::filesystem::path& path, const RunConfig& cfg,
                       const RunRecord& record);

/// Parsed-back subset of a result file, enough to re-evaluate it.
struct StoredResult {
  std::string method;
  CentroidMatrix centroids;
  MembershipMatrix memberships;
  double best_wp = 0.0;
};

StoredResult read_result_json(const std::filesystem::path& path);

/// One row of the benchmark table.
struct BenchRow {
  std::string table;
  int K = 0;
  double ss_hsfc = 0.0;
  double ss_fcm = 0.0;
  double ari_between = 0.0;
  std::optional<double> ari_truth_hsfc;
  std::optional<double> ari_truth_fcm;
};

/// Best-of-R for both methods on one data set, plus the ARI between the two
/// crisped partitions (and against ground truth when supplied).
BenchRow bench_one(const DataMatrix& X, const std::string& table_name, int K,
                   const RunConfig& base, const HardPartition* truth = nullptr);

/// Writes the Table-3-shaped results: CSV columns
/// table,K,ss_hsfc,ss_fcm,ari_between and a JSON twin with any truth ARIs.
/// Output is byte-stable for a fixed seed (no timing fields).
void write_bench_csv(const std::filesystem::path& path,
                     const std::vector<BenchRow>& rows);
void write_bench_json(const std::filesystem::path& path,
                      const std::vector<BenchRow>& rows);

}  // namespace hsfc
