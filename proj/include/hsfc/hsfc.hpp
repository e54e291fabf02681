#pragma once

#include <cstdint>

#include "hsfc/smoothing.hpp"

namespace hsfc {

struct HsfcConfig {
  int K = 2;
  double epsilon = 0.01;   // fuzziness parameter
  double gamma0 = 0.001;   // initial distance smoothing
  double tau0 = 0.001;     // initial hinge smoothing
  double rho1 = 0.25;      // gamma shrink factor
  double rho2 = 0.25;      // tau shrink factor
  double rho3 = 0.25;      // epsilon shrink factor, used when !epsilon_fixed
  int outer_iters = 10;    // N
  bool epsilon_fixed = true;
  std::uint64_t seed = 0;
};

/// Memberships mu_ik = psi(z_i - theta(x_i, g_k, gamma), tau) / epsilon with
/// z_i from the root solve. Rows sum to 1 up to the root tolerance / epsilon
/// and every entry lies in (0, 1).
MembershipMatrix extract_memberships(const DataMatrix& X, const CentroidMatrix& G,
                                     const SmoothingParams& prm);

/// Outer driver: starts from K distinct sampled rows of X, repeatedly
/// minimizes f(G) while gamma and tau shrink by rho1/rho2 each step (and
/// epsilon by rho3 when not fixed), then extracts memberships at the final
/// shrunk parameters. objective_trace holds f(G) per outer step; the
/// objective field is the fuzzy within-SS of the returned (G, U).
ClusteringResult hsfc_fit(const DataMatrix& X, const HsfcConfig& cfg);

}  // namespace hsfc
