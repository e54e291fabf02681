#include <doctest.h>

#include <cmath>
#include <limits>

#include "hsfc/rng.hpp"
#include "hsfc/smoothing.hpp"
#include "test_helpers.hpp"

using namespace hsfc;
using testhelpers::random_matrix;

namespace {

// Closed-form inversion of psi(y, tau) = c for c > tau/2... valid whenever
// c > 0: y = c - tau^2 / (4c).
double psi_inverse(double c, double tau) { return c - tau * tau / (4.0 * c); }

double fd_gradient_entry(const CentroidMatrix& G, const DataMatrix& X,
                         const SmoothingParams& prm, Index k, Index j,
                         double step) {
  Matrix gp = G.g(), gm = G.g();
  gp(k, j) += step;
  gm(k, j) -= step;
  const double fp = smoothed_objective(CentroidMatrix{gp}, X, prm).f;
  const double fm = smoothed_objective(CentroidMatrix{gm}, X, prm).f;
  return (fp - fm) / (2.0 * step);
}

}  // namespace

TEST_CASE("psi: closed values and smoothing bounds") {
  CHECK(psi(0.0, 0.001) == doctest::Approx(0.0005).epsilon(1e-14));
  CHECK(psi(3.0, 4.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(psi(-3.0, 4.0) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const double y = -50.0 + 100.0 * rng.uniform01();
    const double tau = 1e-6 + rng.uniform01();
    const double v = psi(y, tau);
    CHECK(v > std::max(0.0, y));
    CHECK(v - std::max(0.0, y) <= tau / 2.0 + 1e-15);
  }
}

TEST_CASE("psi: stable far-negative tail") {
  // (y + sqrt(y^2 + tau^2))/2 in naive form loses all digits here; the
  // stable branch must agree with the algebraic tail tau^2 / (4 |y|).
  const double tau = 1e-3;
  const double y = -1e9;
  CHECK(psi(y, tau) == doctest::Approx(tau * tau / (4.0 * 1e9)).epsilon(1e-9));
  CHECK(psi(y, tau) > 0.0);
}

TEST_CASE("psi_prime: closed values, range, finite-difference oracle") {
  CHECK(psi_prime(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(psi_prime(3.0, 4.0) == doctest::Approx(0.8).epsilon(1e-14));

  const double y = 1.7, tau = 0.3, h = 1e-6;
  const double fd = (psi(y + h, tau) - psi(y - h, tau)) / (2.0 * h);
  CHECK(psi_prime(y, tau) == doctest::Approx(fd).epsilon(1e-8));

  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const double yy = -20.0 + 40.0 * rng.uniform01();
    const double tt = 1e-9 + rng.uniform01();
    const double d = psi_prime(yy, tt);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("theta: smoothed distance") {
  Vector x(2), g(2);
  x << 0, 0;
  g << 3, 4;
  CHECK(theta(x, x, 0.7) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(theta(x, g, 0.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(theta(x, g, std::sqrt(11.0)) == doctest::Approx(6.0).epsilon(1e-15));

  Vector bad(3);
  bad.setZero();
  CHECK_THROWS_AS(theta(x, bad, 0.1), DimensionError);
}

TEST_CASE("constraint h: limits and closed-form zero") {
  SmoothingParams prm{0.0, 0.001, 0.01};  // gamma set per case below
  prm.gamma = 1e-12;

  SUBCASE("far-negative z approaches -epsilon") {
    CentroidMatrix G{(Matrix(2, 1) << 0.0, 10.0).finished()};
    Vector x(1);
    x << 3.0;
    CHECK(constraint_h(-1e12, x, G, prm) == doctest::Approx(-prm.epsilon).epsilon(1e-9));
  }

  SUBCASE("K=1 at z = theta gives tau/2 - epsilon") {
    CentroidMatrix G{(Matrix(1, 1) << 4.0).finished()};
    Vector x(1);
    x << 1.0;
    const double th = std::sqrt(9.0 + prm.gamma * prm.gamma);
    CHECK(constraint_h(th, x, G, prm) ==
          doctest::Approx(prm.tau / 2.0 - prm.epsilon).epsilon(1e-12));
  }

  SUBCASE("K=1 closed-form root: theta=5, eps=0.01, tau=0.001") {
    // x=(0,0), g=(3,4), gamma ~ 0 so theta = 5
    CentroidMatrix G{(Matrix(1, 2) << 3.0, 4.0).finished()};
    Vector x(2);
    x << 0.0, 0.0;
    const double z = 5.0 + psi_inverse(prm.epsilon, prm.tau);
    CHECK(z == doctest::Approx(5.009975).epsilon(1e-9));
    CHECK(constraint_h(z, x, G, prm) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("h is strictly increasing with slope in (0, K)") {
  Rng rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const Index K = 1 + static_cast<Index>(rng.uniform_index(4));
    const Matrix Gv = random_matrix(K, 2, rng);
    SmoothingParams prm{0.01 + rng.uniform01(), 0.01 + rng.uniform01(),
                        0.01 + rng.uniform01()};
    Vector x(2);
    x << rng.uniform01(), rng.uniform01();
    CentroidMatrix G{Gv};
    double prev = -std::numeric_limits<double>::infinity();
    for (double z = -3.0; z <= 3.0; z += 0.25) {
      const double v = constraint_h(z, x, G, prm);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("solve_z: closed forms for K=1 and the symmetric K=2 case") {
  SmoothingParams prm{1e-12, 0.001, 0.01};

  SUBCASE("K=1") {
    CentroidMatrix G{(Matrix(1, 2) << 3.0, 4.0).finished()};
    Vector x(2);
    x << 0.0, 0.0;
    const ZSolveEntry e = solve_z(x, G, prm);
    CHECK(e.z == doctest::Approx(5.0 + psi_inverse(prm.epsilon, prm.tau))
                     .epsilon(1e-10));
    CHECK(e.residual <= 1e-12 * std::max(1.0, prm.epsilon));
  }

  SUBCASE("K=2 equidistant") {
    CentroidMatrix G{(Matrix(2, 1) << -2.0, 2.0).finished()};
    Vector x(1);
    x << 0.0;
    const ZSolveEntry e = solve_z(x, G, prm);
    // both psi terms equal: psi(z - theta, tau) = eps/2
    const double want = 2.0 + psi_inverse(prm.epsilon / 2.0, prm.tau);
    CHECK(e.z == doctest::Approx(want).epsilon(1e-10));
  }

  SUBCASE("random instances satisfy the residual bound") {
    Rng rng(19);
    for (int rep = 0; rep < 100; ++rep) {
      const Index K = 1 + static_cast<Index>(rng.uniform_index(4));
      const Matrix Gv = random_matrix(K, 3, rng);
      Vector x(3);
      x << rng.uniform01(), rng.uniform01(), rng.uniform01();
      // epsilon > K tau / 2 throughout, so z > 0 is guaranteed
      SmoothingParams p2{1e-4 + 0.1 * rng.uniform01(),
                         1e-4 + 0.01 * rng.uniform01(),
                         0.05 + 0.5 * rng.uniform01()};
      const ZSolveEntry e = solve_z(x, CentroidMatrix{Gv}, p2);
      CHECK(e.residual <= 1e-12 * std::max(1.0, p2.epsilon));
      CHECK(e.z > 0.0);
    }
  }
}

TEST_CASE("solve_z: limit consistency with the crisp minimum distance") {
  SmoothingParams prm{1e-12, 1e-12, 1e-12};
  Rng rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const Index K = 1 + static_cast<Index>(rng.uniform_index(3));
    const Matrix Gv = random_matrix(K, 2, rng);
    Vector x(2);
    x << rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < K; ++k) {
      dmin = std::min(dmin, (x.transpose() - Gv.row(k)).norm());
    }
    if (dmin < 1e-3) continue;  // stay away from coincidences
    const ZSolveEntry e = solve_z(x, CentroidMatrix{Gv}, prm);
    CHECK(e.z == doctest::Approx(dmin).epsilon(1e-6));
  }
}

TEST_CASE("smoothed_objective: coincident-point limit and root residuals") {
  SUBCASE("all points on the single centroid") {
    Matrix Xv(5, 2);
    for (Index i = 0; i < 5; ++i) Xv.row(i) << 1.0, -1.0;
    SmoothingParams prm{1e-9, 1e-9, 0.05};
    const auto so = smoothed_objective(CentroidMatrix{Xv.topRows(1)},
                                       DataMatrix{Xv}, prm);
    // each z_i -> eps as gamma, tau -> 0, so f -> n eps^2
    CHECK(so.f == doctest::Approx(5.0 * 0.05 * 0.05).epsilon(1e-6));
  }

  SUBCASE("row sums of extracted psi values equal epsilon at the root") {
    Rng rng(33);
    const Matrix Xv = random_matrix(10, 2, rng);
    const Matrix Gv = random_matrix(3, 2, rng);
    SmoothingParams prm{0.001, 0.001, 0.01};
    const auto so = smoothed_objective(CentroidMatrix{Gv}, DataMatrix{Xv}, prm);
    for (Index i = 0; i < 10; ++i) {
      const Vector t = theta_row(Xv, i, Gv, prm.gamma);
      double sum = 0.0;
      for (Index k = 0; k < 3; ++k) {
        sum += psi(so.zs.z[static_cast<std::size_t>(i)] - t(k), prm.tau);
      }
      CHECK(sum == doctest::Approx(prm.epsilon).epsilon(1e-10));
    }
  }
}

TEST_CASE("smoothed objective approaches the crisp SS along the schedule") {
  Rng rng(41);
  const Matrix Xv = random_matrix(10, 2, rng, -4.0, 4.0);
  const Matrix Gv = random_matrix(2, 2, rng, -3.0, 3.0);
  DataMatrix X{Xv};
  CentroidMatrix G{Gv};

  double crisp_ss = 0.0;
  for (Index i = 0; i < Xv.rows(); ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < Gv.rows(); ++k) {
      dmin = std::min(dmin, (Xv.row(i) - Gv.row(k)).squaredNorm());
    }
    crisp_ss += dmin;
  }

  SmoothingParams prm;  // defaults 0.001 / 0.001 / 0.01
  for (int step = 0; step < 10; ++step) {
    prm.gamma *= 0.25;
    prm.tau *= 0.25;
    prm.epsilon *= 0.25;
  }
  const double f = smoothed_objective(G, X, prm).f;
  CHECK(std::abs(f - crisp_ss) / f <= 1e-3);
}

TEST_CASE("smoothed_gradient: symmetry zeros") {
  SmoothingParams prm{0.001, 0.001, 0.01};

  SUBCASE("point coincides with its only centroid") {
    Matrix Xv(1, 2);
    Xv << 2.0, 3.0;
    const auto so = smoothed_objective(CentroidMatrix{Xv}, DataMatrix{Xv}, prm);
    const Matrix g = smoothed_gradient(CentroidMatrix{Xv}, DataMatrix{Xv}, prm, so.zs);
    CHECK(g.cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("two symmetric points cancel at the midpoint") {
    Matrix Xv(2, 1);
    Xv << -1.0, 1.0;
    Matrix Gv(1, 1);
    Gv << 0.0;
    const auto so = smoothed_objective(CentroidMatrix{Gv}, DataMatrix{Xv}, prm);
    const Matrix g = smoothed_gradient(CentroidMatrix{Gv}, DataMatrix{Xv}, prm, so.zs);
    CHECK(std::abs(g(0, 0)) <= 1e-12);
  }
}

TEST_CASE("smoothed_gradient matches central finite differences") {
  Rng rng(55);
  int tested = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = 3 + static_cast<Index>(rng.uniform_index(8));   // <= 10
    const Index p = 1 + static_cast<Index>(rng.uniform_index(3));   // <= 3
    const Index K = 1 + static_cast<Index>(rng.uniform_index(3));   // <= 3
    const Matrix Xv = random_matrix(n, p, rng, -2.0, 2.0);
    const Matrix Gv = random_matrix(K, p, rng, -2.0, 2.0);
    // tau well above the 1e-6 step keeps central-difference truncation
    // (third derivative ~ 1/tau^2) below the 1e-5 comparison grade
    SmoothingParams prm{5e-3 + 0.05 * rng.uniform01(),
                        5e-3 + 0.05 * rng.uniform01(),
                        5e-3 + 0.05 * rng.uniform01()};
    DataMatrix X{Xv};
    CentroidMatrix G{Gv};
    const auto so = smoothed_objective(G, X, prm);
    const Matrix grad = smoothed_gradient(G, X, prm, so.zs);
    for (Index k = 0; k < K; ++k) {
      for (Index j = 0; j < p; ++j) {
        const double fd = fd_gradient_entry(G, X, prm, k, j, 1e-6);
        const double denom =
            std::max({std::abs(grad(k, j)), std::abs(fd), 1e-8});
        CHECK(std::abs(grad(k, j) - fd) / denom <= 1e-5);
        ++tested;
      }
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("minimize_smoothed: stationary start stays put") {
  Matrix Xv(2, 1);
  Xv << -1.0, 1.0;
  Matrix Gv(1, 1);
  Gv << 0.0;  // midpoint is optimal for a single centroid
  SmoothingParams prm{1e-6, 1e-6, 0.01};
  const auto res = minimize_smoothed(CentroidMatrix{Gv}, DataMatrix{Xv}, prm);
  CHECK(res.converged);
  CHECK(std::abs(res.G.g()(0, 0)) <= 1e-8);
  const double f0 = smoothed_objective(CentroidMatrix{Gv}, DataMatrix{Xv}, prm).f;
  CHECK(res.f <= f0 + 1e-10);
  CHECK(std::abs(res.f - f0) <= 1e-10);
}

TEST_CASE("minimize_smoothed: recovers two separated blob means") {
  Rng rng(66);
  Matrix Xv(20, 1);
  for (Index i = 0; i < 10; ++i) Xv(i, 0) = -10.0 + 0.1 * rng.normal();
  for (Index i = 10; i < 20; ++i) Xv(i, 0) = 10.0 + 0.1 * rng.normal();
  const double mean_left = Xv.topRows(10).mean();
  const double mean_right = Xv.bottomRows(10).mean();

  Matrix Gv(2, 1);
  Gv << mean_left + 0.4, mean_right - 0.3;

  SmoothingParams prm{1e-3, 1e-3, 1e-2};
  CentroidMatrix G{Gv};
  for (int step = 0; step < 10; ++step) {
    G = minimize_smoothed(G, DataMatrix{Xv}, prm).G;
    prm.gamma *= 0.25;
    prm.tau *= 0.25;
    prm.epsilon *= 0.25;
  }
  const double lo = std::min(G.g()(0, 0), G.g()(1, 0));
  const double hi = std::max(G.g()(0, 0), G.g()(1, 0));
  CHECK(lo == doctest::Approx(mean_left).epsilon(1e-3));
  CHECK(hi == doctest::Approx(mean_right).epsilon(1e-3));
}

TEST_CASE("minimize_smoothed: accepted steps strictly descend") {
  Rng rng(77);
  const Matrix Xv = random_matrix(25, 2, rng, -5.0, 5.0);
  const Matrix Gv = random_matrix(3, 2, rng, -5.0, 5.0);
  SmoothingParams prm{1e-3, 1e-3, 1e-2};
  const auto res = minimize_smoothed(CentroidMatrix{Gv}, DataMatrix{Xv}, prm);
  REQUIRE(res.f_trace.size() >= 2);
  for (std::size_t t = 1; t < res.f_trace.size(); ++t) {
    CHECK(res.f_trace[t] < res.f_trace[t - 1]);
  }
}
