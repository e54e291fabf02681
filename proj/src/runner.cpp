#include "hsfc/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "hsfc/evaluation.hpp"

namespace hsfc {

using nlohmann::json;

double crisp_wp(const DataMatrix& X, const ClusteringResult& result) {
  return partition_within_ss(X, crisp(result.memberships));
}

RunRecord fit_with_restarts(const DataMatrix& X, const RunConfig& cfg) {
  if (cfg.restarts < 1) throw InvariantError("restarts must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  RunRecord record;
  record.method = cfg.method;
  record.best_wp = std::numeric_limits<double>::infinity();
  std::string last_error = "no restarts attempted";

  for (int r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
    record.restart_seeds.push_back(seed);
    try {
      ClusteringResult result = [&] {
        if (cfg.method == MethodTag::FCM) {
          FcmConfig c = cfg.fcm;
          c.seed = seed;
          return fcm_fit(X, c);
        }
        HsfcConfig c = cfg.hsfc;
        c.seed = seed;
        return hsfc_fit(X, c);
      }();
      const double wp = crisp_wp(X, result);
      record.wp_per_restart.push_back(wp);
      if (wp < record.best_wp) {
        record.best_wp = wp;
        record.best = std::move(result);
      }
    } catch (const std::exception& e) {
      record.wp_per_restart.push_back(std::numeric_limits<double>::quiet_NaN());
      ++record.failed_restarts;
      last_error = e.what();
    }
  }

  if (!record.best.has_value()) {
    throw SolverFailure("all " + std::to_string(cfg.restarts) +
                        " restarts failed; last error: " + last_error);
  }
  record.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return record;
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw std::runtime_error("expected a non-empty array of arrays");
  }
  const auto r = static_cast<Index>(rows.size());
  const auto c = static_cast<Index>(rows[0].size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[i].size()) != c) {
      throw std::runtime_error("ragged matrix in result file");
    }
    for (Index j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

json config_to_json(const RunConfig& cfg) {
  json j{{"restarts", cfg.restarts}, {"seed", cfg.seed}};
  if (cfg.method == MethodTag::FCM) {
    j["k"] = cfg.fcm.K;
    j["m"] = cfg.fcm.m;
    j["tol"] = cfg.fcm.tol;
    j["max_iters"] = cfg.fcm.max_iter;
  } else {
    j["k"] = cfg.hsfc.K;
    j["eps"] = cfg.hsfc.epsilon;
    j["gamma0"] = cfg.hsfc.gamma0;
    j["tau0"] = cfg.hsfc.tau0;
    j["rho1"] = cfg.hsfc.rho1;
    j["rho2"] = cfg.hsfc.rho2;
    j["rho3"] = cfg.hsfc.rho3;
    j["outer_iters"] = cfg.hsfc.outer_iters;
    j["eps_fixed"] = cfg.hsfc.epsilon_fixed;
  }
  return j;
}

}  // namespace

void write_result_json(const std::filesystem::path& path, const RunConfig& cfg,
                       const RunRecord& record) {
  const ClusteringResult& best = record.best.value();
  json j;
  j["schema_version"] = 1;
  j["method"] = to_string(cfg.method);
  j["config"] = config_to_json(cfg);
  j["best_objective_wp"] = record.best_wp;
  j["centroids"] = matrix_to_json(best.centroids.g());
  j["memberships"] = matrix_to_json(best.memberships.mu());
  j["trace"] = best.objective_trace;
  j["restart_seeds"] = record.restart_seeds;
  j["wp_per_restart"] = record.wp_per_restart;
  j["failed_restarts"] = record.failed_restarts;
  j["best_seed"] = best.seed;
  j["wall_ms"] = record.wall_ms;
  if (cfg.method == MethodTag::FCM) {
    j["fcm_objective"] = best.objective;
  } else {
    j["fuzzy_within_ss"] = best.objective;
  }

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

StoredResult read_result_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
    if (j.at("schema_version").get<int>() != 1) {
      throw std::runtime_error("unsupported schema_version");
    }
    StoredResult r{j.at("method").get<std::string>(),
                   CentroidMatrix(matrix_from_json(j.at("centroids"))),
                   MembershipMatrix(matrix_from_json(j.at("memberships"))),
                   j.at("best_objective_wp").get<double>()};
    return r;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed result file '" + path.string() +
                             "': " + e.what());
  }
}

BenchRow bench_one(const DataMatrix& X, const std::string& table_name, int K,
                   const RunConfig& base, const HardPartition* truth) {
  RunConfig hsfc_cfg = base;
  hsfc_cfg.method = MethodTag::HSFC;
  hsfc_cfg.hsfc.K = K;
  RunConfig fcm_cfg = base;
  fcm_cfg.method = MethodTag::FCM;
  fcm_cfg.fcm.K = K;

  const RunRecord hs = fit_with_restarts(X, hsfc_cfg);
  const RunRecord fc = fit_with_restarts(X, fcm_cfg);

  const HardPartition ph = crisp(hs.best->memberships);
  const HardPartition pf = crisp(fc.best->memberships);

  BenchRow row;
  row.table = table_name;
  row.K = K;
  row.ss_hsfc = hs.best_wp;
  row.ss_fcm = fc.best_wp;
  row.ari_between = adjusted_rand_index(ph, pf);
  if (truth != nullptr) {
    row.ari_truth_hsfc = adjusted_rand_index(ph, *truth);
    row.ari_truth_fcm = adjusted_rand_index(pf, *truth);
  }
  return row;
}

void write_bench_csv(const std::filesystem::path& path,
                     const std::vector<BenchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.precision(17);
  out << "table,K,ss_hsfc,ss_fcm,ari_between\n";
  for (const auto& r : rows) {
    out << r.table << ',' << r.K << ',' << r.ss_hsfc << ',' << r.ss_fcm << ','
        << r.ari_between << '\n';
  }
}

void write_bench_json(const std::filesystem::path& path,
                      const std::vector<BenchRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j{{"table", r.table},
           {"K", r.K},
           {"ss_hsfc", r.ss_hsfc},
           {"ss_fcm", r.ss_fcm},
           {"ari_between", r.ari_between}};
    if (r.ari_truth_hsfc) j["ari_truth_hsfc"] = *r.ari_truth_hsfc;
    if (r.ari_truth_fcm) j["ari_truth_fcm"] = *r.ari_truth_fcm;
    arr.push_back(std::move(j));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << json{{"schema_version", 1}, {"rows", arr}}.dump(2) << '\n';
}

}  // namespace hsfc
