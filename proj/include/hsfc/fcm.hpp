#pragma once

#include <cstdint>

#include "hsfc/data.hpp"

namespace hsfc {

/// Raised when a cluster's total (mu^m) weight vanishes and the centroid
/// update has no defined value.
class DegenerateClusterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FcmConfig {
  int K = 2;
  double m = 2.0;        // fuzziness exponent, > 1
  double tol = 1e-9;     // absolute objective-improvement threshold
  int max_iter = 300;
  std::uint64_t seed = 0;
};

/// Fuzzy criterion sum_i sum_k mu_ik^m ||x_i - g_k||^2.
double fcm_objective(const DataMatrix& X, const MembershipMatrix& U,
                     const CentroidMatrix& G, double m);

/// g_k = sum_i mu_ik^m x_i / sum_i mu_ik^m. Throws DegenerateClusterError
/// when some column's weight sum is zero.
CentroidMatrix fcm_update_centroids(const DataMatrix& X,
                                    const MembershipMatrix& U, double m);

/// mu_ik = [ sum_j (||x_i-g_k||^2 / ||x_i-g_j||^2)^(1/(m-1)) ]^-1.
/// An object within 1e-30 squared distance of a centroid gets the pointwise
/// limit: membership 1 on the nearest such centroid (lowest index on ties).
MembershipMatrix fcm_update_memberships(const DataMatrix& X,
                                        const CentroidMatrix& G, double m);

/// Alternates centroid and membership updates from a seeded random
/// membership matrix until the objective improves by less than cfg.tol or
/// max_iter is hit. objective_trace holds the criterion after each sweep.
ClusteringResult fcm_fit(const DataMatrix& X, const FcmConfig& cfg);

}  // namespace hsfc
