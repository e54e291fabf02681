#include "hsfc/hsfc.hpp"

#include <numeric>
#include <vector>

#include "hsfc/evaluation.hpp"
#include "hsfc/rng.hpp"

namespace hsfc {

namespace {

void check_config(const HsfcConfig& cfg, Index n) {
  if (cfg.K < 2) throw InvariantError("HsfcConfig: K must be >= 2");
  if (static_cast<Index>(cfg.K) > n) {
    throw InvariantError("HsfcConfig: K exceeds number of objects");
  }
  if (!(cfg.epsilon > 0.0) || !(cfg.gamma0 > 0.0) || !(cfg.tau0 > 0.0)) {
    throw InvariantError("HsfcConfig: epsilon, gamma0, tau0 must be > 0");
  }
  auto in_unit = [](double r) { return r > 0.0 && r < 1.0; };
  if (!in_unit(cfg.rho1) || !in_unit(cfg.rho2) || !in_unit(cfg.rho3)) {
    throw InvariantError("HsfcConfig: shrink factors must lie in (0, 1)");
  }
  if (cfg.outer_iters < 1) throw InvariantError("HsfcConfig: N must be >= 1");
}

// K distinct row indices, sampled uniformly without replacement.
Matrix sample_initial_centroids(const DataMatrix& X, int K, Rng& rng) {
  std::vector<Index> pool(static_cast<std::size_t>(X.n()));
  std::iota(pool.begin(), pool.end(), Index{0});
  Matrix g(K, X.p());
  for (int k = 0; k < K; ++k) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(pool.size()));
    g.row(k) = X.row(pool[j]);
    pool[j] = pool.back();
    pool.pop_back();
  }
  return g;
}

}  // namespace

MembershipMatrix extract_memberships(const DataMatrix& X, const CentroidMatrix& G,
                                     const SmoothingParams& prm) {
  prm.validate();
  if (X.p() != G.p()) throw DimensionError("extract_memberships: p mismatch");
  Matrix mu(X.n(), G.K());
  for (Index i = 0; i < X.n(); ++i) {
    const Vector t = theta_row(X.values(), i, G.g(), prm.gamma);
    double dmin = t.minCoeff();
    const ZSolveEntry e = solve_z_from_thetas(t, prm, dmin);
    for (Index k = 0; k < G.K(); ++k) {
      mu(i, k) = psi(e.z - t(k), prm.tau) / prm.epsilon;
    }
  }
  return MembershipMatrix(std::move(mu));
}

ClusteringResult hsfc_fit(const DataMatrix& X, const HsfcConfig& cfg) {
  check_config(cfg, X.n());
  Rng rng(cfg.seed);

  CentroidMatrix G(sample_initial_centroids(X, cfg.K, rng));
  SmoothingParams prm{cfg.gamma0, cfg.tau0, cfg.epsilon};

  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(cfg.outer_iters));
  bool flagged = false;
  for (int l = 0; l < cfg.outer_iters; ++l) {
    MinimizeResult inner = minimize_smoothed(G, X, prm);
    G = std::move(inner.G);
    trace.push_back(inner.f);
    flagged = flagged || inner.line_search_failed;
    prm.gamma *= cfg.rho1;
    prm.tau *= cfg.rho2;
    if (!cfg.epsilon_fixed) prm.epsilon *= cfg.rho3;
  }

  MembershipMatrix U = extract_memberships(X, G, prm);

  ClusteringResult result{std::move(G), std::move(U)};
  result.objective = within_ss(X, result.memberships, result.centroids);
  result.objective_trace = std::move(trace);
  result.iterations = cfg.outer_iters;
  result.seed = cfg.seed;
  result.method_tag = MethodTag::HSFC;
  result.solver_flagged = flagged;
  return result;
}

}  // namespace hsfc
