#include "hsfc/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hsfc {

namespace {

double root_tol(const SmoothingParams& prm) {
  return kRootTolScale * std::max(1.0, prm.epsilon);
}

double h_of_thetas(double z, const Vector& thetas, const SmoothingParams& prm) {
  double s = 0.0;
  for (Index k = 0; k < thetas.size(); ++k) s += psi(z - thetas(k), prm.tau);
  return s - prm.epsilon;
}

double h_slope(double z, const Vector& thetas, double tau) {
  double s = 0.0;
  for (Index k = 0; k < thetas.size(); ++k) s += psi_prime(z - thetas(k), tau);
  return s;
}

}  // namespace

double theta(VectorRef x, VectorRef g, double gamma) {
  if (x.size() != g.size()) {
    std::ostringstream os;
    os << "theta: length mismatch " << x.size() << " vs " << g.size();
    throw DimensionError(os.str());
  }
  return std::sqrt((x - g).squaredNorm() + gamma * gamma);
}

Vector theta_row(const Matrix& X, Index i, const Matrix& G, double gamma) {
  Vector t(G.rows());
  for (Index k = 0; k < G.rows(); ++k) {
    t(k) = std::sqrt((X.row(i) - G.row(k)).squaredNorm() + gamma * gamma);
  }
  return t;
}

double constraint_h(double z, VectorRef x_i, const CentroidMatrix& G,
                    const SmoothingParams& prm) {
  prm.validate();
  Vector t(G.K());
  for (Index k = 0; k < G.K(); ++k) {
    t(k) = theta(x_i, G.row(k).transpose(), prm.gamma);
  }
  return h_of_thetas(z, t, prm);
}

ZSolveEntry solve_z_from_thetas(const Vector& thetas, const SmoothingParams& prm,
                                double z0) {
  prm.validate();
  const double tol = root_tol(prm);
  const double theta_min = thetas.minCoeff();

  // psi(y, tau) > max(0, y), so h(theta_min + epsilon) > 0 always: analytic
  // upper bracket. The lower end only needs h < 0; grow geometrically.
  double hi = theta_min + prm.epsilon;
  double lo = std::min(z0, theta_min);
  double h_lo = h_of_thetas(lo, thetas, prm);
  double step = std::max({prm.tau, prm.epsilon, 1e-3});
  while (h_lo >= 0.0) {
    lo -= step;
    step *= 2.0;
    h_lo = h_of_thetas(lo, thetas, prm);
  }

  double z = std::clamp(z0, lo, hi);
  ZSolveEntry entry;
  double hv = h_of_thetas(z, thetas, prm);
  for (int it = 1; it <= kRootMaxIter; ++it) {
    // Polish until the iteration stalls at machine precision; the extra
    // digits beyond the formal tolerance keep finite differences of f(G)
    // clean. Bracket updates guarantee the stall arrives.
    if (hv == 0.0) break;
    if (hv > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    const double slope = h_slope(z, thetas, prm.tau);
    double znew = z - hv / slope;
    if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
    if (znew == z) break;
    z = znew;
    hv = h_of_thetas(z, thetas, prm);
    entry.iterations = it;
  }
  entry.z = z;
  entry.residual = std::abs(hv);
  if (entry.residual > tol) {
    std::ostringstream os;
    os << "root solve stalled: |h| = " << entry.residual << " > " << tol
       << " after " << entry.iterations << " iterations (K=" << thetas.size()
       << ", tau=" << prm.tau << ", epsilon=" << prm.epsilon << ")";
    throw RootSolveError(os.str());
  }
  // z > 0 whenever epsilon > K tau / 2 (then h(0) < 0); with epsilon below
  // that the unique root can sit at or below zero, which is still a valid
  // solve, so no positivity check here.
  return entry;
}

ZSolveEntry solve_z(VectorRef x_i, const CentroidMatrix& G,
                    const SmoothingParams& prm, double z0) {
  Vector t(G.K());
  double dmin = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < G.K(); ++k) {
    const double d = (x_i - G.row(k).transpose()).norm();
    dmin = std::min(dmin, d);
    t(k) = std::sqrt(d * d + prm.gamma * prm.gamma);
  }
  return solve_z_from_thetas(t, prm, z0 >= 0.0 ? z0 : dmin);
}

SmoothedObjective smoothed_objective(const CentroidMatrix& G, const DataMatrix& X,
                                     const SmoothingParams& prm) {
  prm.validate();
  if (X.p() != G.p()) throw DimensionError("smoothed_objective: p mismatch");
  SmoothedObjective out;
  const Index n = X.n();
  out.zs.z.resize(static_cast<std::size_t>(n));
  out.zs.residuals.resize(static_cast<std::size_t>(n));
  out.zs.newton_iters.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const ZSolveEntry e = solve_z(X.row(i).transpose(), G, prm);
    out.zs.z[static_cast<std::size_t>(i)] = e.z;
    out.zs.residuals[static_cast<std::size_t>(i)] = e.residual;
    out.zs.newton_iters[static_cast<std::size_t>(i)] = e.iterations;
    out.f += e.z * e.z;
  }
  return out;
}

Matrix smoothed_gradient(const CentroidMatrix& G, const DataMatrix& X,
                         const SmoothingParams& prm, const ZSolve& zs) {
  prm.validate();
  if (X.p() != G.p()) throw DimensionError("smoothed_gradient: p mismatch");
  if (static_cast<Index>(zs.z.size()) != X.n()) {
    throw DimensionError("smoothed_gradient: z count does not match n");
  }
  Matrix grad = Matrix::Zero(G.K(), G.p());
  for (Index i = 0; i < X.n(); ++i) {
    const double z = zs.z[static_cast<std::size_t>(i)];
    const Vector t = theta_row(X.values(), i, G.g(), prm.gamma);
    double slope_sum = 0.0;
    Vector w(G.K());
    for (Index k = 0; k < G.K(); ++k) {
      w(k) = psi_prime(z - t(k), prm.tau);
      slope_sum += w(k);
    }
    const double scale = 2.0 * z / slope_sum;
    for (Index k = 0; k < G.K(); ++k) {
      // d z_i / d g_k = -psi'_ik (x_i - g_k) / (theta_ik * slope_sum) ... sign
      // folded into (g_k - x_i)
      grad.row(k) += scale * (w(k) / t(k)) * (G.row(k) - X.row(i));
    }
  }
  return grad;
}

MinimizeResult minimize_smoothed(const CentroidMatrix& G0, const DataMatrix& X,
                                 const SmoothingParams& prm,
                                 const MinimizeOptions& opts) {
  prm.validate();
  if (X.p() != G0.p()) throw DimensionError("minimize_smoothed: p mismatch");
  const Index K = G0.K(), p = G0.p();
  const Index D = K * p;

  auto unpack = [&](const Vector& v) {
    Matrix g(K, p);
    for (Index k = 0; k < K; ++k) g.row(k) = v.segment(k * p, p).transpose();
    return CentroidMatrix(std::move(g));
  };
  auto eval_f = [&](const Vector& v, ZSolve* zs_out) {
    const SmoothedObjective so = smoothed_objective(unpack(v), X, prm);
    if (zs_out) *zs_out = so.zs;
    return so.f;
  };
  // Gradient at a point whose roots were already solved by eval_f.
  auto eval_grad = [&](const Vector& v, const ZSolve& zs) {
    const Matrix gm = smoothed_gradient(unpack(v), X, prm, zs);
    Vector out(D);
    for (Index k = 0; k < K; ++k) out.segment(k * p, p) = gm.row(k).transpose();
    return out;
  };

  Vector x(D);
  for (Index k = 0; k < K; ++k) x.segment(k * p, p) = G0.row(k).transpose();

  ZSolve zs;
  double f = eval_f(x, &zs);
  Vector grad = eval_grad(x, zs);

  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(D, D);
  MinimizeResult result{unpack(x)};
  result.f_trace.push_back(f);
  bool first_update = true;

  constexpr double kArmijo = 1e-4;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= opts.grad_tol * std::max(1.0, std::abs(f))) {
      result.converged = true;
      break;
    }

    Vector dir = -(H * grad);
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      H.setIdentity();
      first_update = true;
      dir = -grad;
      slope = grad.dot(dir);
    }

    double alpha = 1.0;
    double f_new = f;
    Vector x_new = x;
    ZSolve zs_new;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + alpha * dir;
      f_new = eval_f(x_new, &zs_new);
      if (f_new <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      result.line_search_failed = true;
      break;
    }

    const Vector grad_new = eval_grad(x_new, zs_new);
    const Vector s = x_new - x;
    const Vector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (first_update) {
        H *= sy / y.squaredNorm();  // standard initial scaling
        first_update = false;
      }
      const double rho = 1.0 / sy;
      const Vector Hy = H * y;
      const double yHy = y.dot(Hy);
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      H.noalias() -= rho * (Hy * s.transpose() + s * Hy.transpose());
      H.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
    }

    x = x_new;
    f = f_new;
    grad = grad_new;
    result.f_trace.push_back(f);
  }

  result.G = unpack(x);
  result.f = f;
  result.grad_inf_norm = grad.lpNorm<Eigen::Infinity>();
  result.iterations = it;
  return result;
}

}  // namespace hsfc
