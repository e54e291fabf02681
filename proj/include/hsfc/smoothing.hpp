#pragma once

#include <cmath>
#include <vector>

#include "hsfc/data.hpp"

namespace hsfc {

/// Raised when a per-object root solve fails to reach tolerance (should be
/// unreachable thanks to the bisection safeguard; kept as a hard check).
class RootSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SmoothingParams {
  double gamma = 1e-3;    // distance smoothing, > 0
  double tau = 1e-3;      // hinge smoothing, > 0
  double epsilon = 1e-2;  // perturbation / fuzziness, > 0

  void validate() const {
    if (!(gamma > 0.0) || !(tau > 0.0) || !(epsilon > 0.0)) {
      throw InvariantError("SmoothingParams: gamma, tau, epsilon must be > 0");
    }
  }
};

/// Smooth hinge (y + sqrt(y^2 + tau^2)) / 2: strictly positive, strictly
/// increasing, within tau/2 above max(0, y). The y < 0 branch is computed
/// as tau^2 / (2 (sqrt(y^2+tau^2) - y)) to avoid cancellation in the tail.
inline double psi(double y, double tau) {
  const double s = std::hypot(y, tau);
  return y >= 0.0 ? 0.5 * (y + s) : 0.5 * tau * tau / (s - y);
}

/// d/dy psi = (1 + y / sqrt(y^2 + tau^2)) / 2, in (0, 1) for tau > 0.
inline double psi_prime(double y, double tau) {
  const double s = std::hypot(y, tau);
  return y >= 0.0 ? 0.5 * (1.0 + y / s) : 0.5 * tau * tau / (s * (s - y));
}

/// Smoothed distance sqrt(||x - g||^2 + gamma^2); >= gamma, and the plain
/// Euclidean distance when gamma = 0.
double theta(VectorRef x, VectorRef g, double gamma);

/// Smoothed distances from one object to every centroid.
Vector theta_row(const Matrix& X, Index i, const Matrix& G, double gamma);

/// Constraint function h_i(z, G) = sum_k psi(z - theta_ik, tau) - epsilon,
/// strictly increasing in z. The smoothed distance theta is used inside psi
/// so the root is consistent with the membership extraction step.
double constraint_h(double z, VectorRef x_i, const CentroidMatrix& G,
                    const SmoothingParams& prm);

struct ZSolveEntry {
  double z = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Per-object roots of h_i(z_i, G) = 0 for a whole data set.
struct ZSolve {
  std::vector<double> z;
  std::vector<double> residuals;
  std::vector<int> newton_iters;
};

inline constexpr double kRootTolScale = 1e-12;
inline constexpr int kRootMaxIter = 100;

/// Finds the unique root of z -> sum_k psi(z - theta_k, tau) - epsilon given
/// the precomputed smoothed distances. Newton-Raphson from z0 with a
/// maintained bracket; steps leaving the bracket fall back to bisection.
/// Guarantees |h(z)| <= 1e-12 * max(1, epsilon).
ZSolveEntry solve_z_from_thetas(const Vector& thetas, const SmoothingParams& prm,
                                double z0);

/// Same solve for one object of X; z0 defaults to the minimum raw distance
/// min_k ||x_i - g_k|| when not given (pass a negative z0 for the default).
ZSolveEntry solve_z(VectorRef x_i, const CentroidMatrix& G,
                    const SmoothingParams& prm, double z0 = -1.0);

/// f(G) = sum_i z_i^2 with every z_i solved at the current params.
struct SmoothedObjective {
  double f = 0.0;
  ZSolve zs;
};

SmoothedObjective smoothed_objective(const CentroidMatrix& G, const DataMatrix& X,
                                     const SmoothingParams& prm);

/// Analytic gradient of f via implicit differentiation of h_i(z_i(G), G)=0:
///   df/dg_kj = sum_i 2 z_i [ -psi'(z_i - theta_ik) (x_ij - g_kj)/theta_ik ]
///              / sum_l psi'(z_i - theta_il)
Matrix smoothed_gradient(const CentroidMatrix& G, const DataMatrix& X,
                         const SmoothingParams& prm, const ZSolve& zs);

struct MinimizeOptions {
  int max_iter = 200;
  double grad_tol = 1e-6;  // on ||grad||_inf relative to max(1, f)
};

struct MinimizeResult {
  CentroidMatrix G;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
  std::vector<double> f_trace;  // f at G0, then after each accepted step
};

/// BFGS with backtracking Armijo line search on vec(G). Never returns an
/// iterate worse than G0; a stalled line search stops early with the best
/// iterate and the line_search_failed flag set.
MinimizeResult minimize_smoothed(const CentroidMatrix& G0, const DataMatrix& X,
                                 const SmoothingParams& prm,
                                 const MinimizeOptions& opts = {});

}  // namespace hsfc
