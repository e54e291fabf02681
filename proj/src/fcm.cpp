#include "hsfc/fcm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hsfc/rng.hpp"

namespace hsfc {

namespace {

constexpr double kCoincidenceTol = 1e-30;  // squared distance

void check_config(const FcmConfig& cfg, Index n) {
  if (cfg.K < 2) throw InvariantError("FcmConfig: K must be >= 2");
  if (!(cfg.m > 1.0)) throw InvariantError("FcmConfig: m must be > 1");
  if (!(cfg.tol > 0.0)) throw InvariantError("FcmConfig: tol must be > 0");
  if (cfg.max_iter < 1) throw InvariantError("FcmConfig: max_iter must be >= 1");
  if (static_cast<Index>(cfg.K) > n) {
    throw InvariantError("FcmConfig: K exceeds number of objects");
  }
}

// Each row: K uniform(0,1) draws, normalized to sum 1.
Matrix random_memberships(Index n, int K, Rng& rng) {
  Matrix mu(n, K);
  for (Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      // Guard against an all-zero row; draws of exactly 0 are measure-zero
      // but the stream is pinned, so be explicit.
      double u = rng.uniform01();
      while (u == 0.0) u = rng.uniform01();
      mu(i, k) = u;
      sum += u;
    }
    mu.row(i) /= sum;
  }
  return mu;
}

}  // namespace

double fcm_objective(const DataMatrix& X, const MembershipMatrix& U,
                     const CentroidMatrix& G, double m) {
  validate_dims(X, G, U);
  if (!(m > 1.0)) throw InvariantError("fcm_objective: m must be > 1");
  double total = 0.0;
  for (Index i = 0; i < X.n(); ++i) {
    for (Index k = 0; k < G.K(); ++k) {
      total += std::pow(U(i, k), m) * (X.row(i) - G.row(k)).squaredNorm();
    }
  }
  return total;
}

CentroidMatrix fcm_update_centroids(const DataMatrix& X,
                                    const MembershipMatrix& U, double m) {
  if (X.n() != U.n()) throw DimensionError("fcm_update_centroids: n mismatch");
  const Index K = U.K();
  Matrix g = Matrix::Zero(K, X.p());
  Vector weight_sum = Vector::Zero(K);
  for (Index i = 0; i < X.n(); ++i) {
    for (Index k = 0; k < K; ++k) {
      const double w = std::pow(U(i, k), m);
      g.row(k) += w * X.row(i);
      weight_sum(k) += w;
    }
  }
  for (Index k = 0; k < K; ++k) {
    if (weight_sum(k) < std::numeric_limits<double>::min()) {
      std::ostringstream os;
      os << "cluster " << k << " has zero total membership weight";
      throw DegenerateClusterError(os.str());
    }
    g.row(k) /= weight_sum(k);
  }
  return CentroidMatrix(std::move(g));
}

MembershipMatrix fcm_update_memberships(const DataMatrix& X,
                                        const CentroidMatrix& G, double m) {
  if (X.p() != G.p()) throw DimensionError("fcm_update_memberships: p mismatch");
  const Index n = X.n(), K = G.K();
  const double ex = 1.0 / (m - 1.0);
  Matrix mu(n, K);
  Vector d2(K);
  for (Index i = 0; i < n; ++i) {
    Index coincident = -1;
    for (Index k = 0; k < K; ++k) {
      d2(k) = (X.row(i) - G.row(k)).squaredNorm();
      if (d2(k) < kCoincidenceTol && coincident == -1) coincident = k;
    }
    if (coincident >= 0) {
      mu.row(i).setZero();
      mu(i, coincident) = 1.0;
      continue;
    }
    // mu_ik = d2_k^-ex / sum_j d2_j^-ex, the reciprocal of the spec ratio sum
    double denom = 0.0;
    for (Index k = 0; k < K; ++k) {
      mu(i, k) = std::pow(d2(k), -ex);
      denom += mu(i, k);
    }
    mu.row(i) /= denom;
  }
  return MembershipMatrix(std::move(mu));
}

ClusteringResult fcm_fit(const DataMatrix& X, const FcmConfig& cfg) {
  check_config(cfg, X.n());
  Rng rng(cfg.seed);

  MembershipMatrix U(random_memberships(X.n(), cfg.K, rng));
  CentroidMatrix G = fcm_update_centroids(X, U, cfg.m);
  U = fcm_update_memberships(X, G, cfg.m);

  // Below this the memberships are fully hard via the coincidence rule and
  // another sweep could only hit the degenerate-column error.
  const double objective_floor =
      static_cast<double>(X.n()) * kCoincidenceTol;

  std::vector<double> trace{fcm_objective(X, U, G, cfg.m)};
  int iterations = 1;
  while (iterations < cfg.max_iter && trace.back() > objective_floor) {
    G = fcm_update_centroids(X, U, cfg.m);
    U = fcm_update_memberships(X, G, cfg.m);
    const double obj = fcm_objective(X, U, G, cfg.m);
    const double prev = trace.back();
    trace.push_back(obj);
    ++iterations;
    if (prev - obj < cfg.tol) break;
  }

  ClusteringResult result{std::move(G), std::move(U)};
  result.objective = trace.back();
  result.objective_trace = std::move(trace);
  result.iterations = iterations;
  result.seed = cfg.seed;
  result.method_tag = MethodTag::FCM;
  return result;
}

}  // namespace hsfc
