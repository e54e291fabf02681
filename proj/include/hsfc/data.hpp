#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hsfc/matrix.hpp"

namespace hsfc {

/// Raised when companion matrices disagree on n, p or K.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix violates its type invariants (non-finite entries,
/// membership rows not summing to 1, ...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n x p observation matrix, immutable after construction. Row i is object
/// x_i. All entries must be finite.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values, std::vector<std::string> feature_names = {});

  Index n() const { return values_.rows(); }
  Index p() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  auto row(Index i) const { return values_.row(i); }

  /// Column names from the CSV header; empty when the source had none.
  const std::vector<std::string>& feature_names() const { return feature_names_; }

 private:
  Matrix values_;
  std::vector<std::string> feature_names_;
};

/// n x K fuzzy membership matrix. Entries in [0,1] (values within 1e-9
/// outside are treated as solver noise and clamped), every row sums to 1
/// within 1e-6. Column sums are not constrained here: a fully crisp result
/// may leave a cluster empty, and the centroid update reports that case.
class MembershipMatrix {
 public:
  static constexpr double kRowSumTol = 1e-6;

  explicit MembershipMatrix(Matrix mu);

  Index n() const { return mu_.rows(); }
  Index K() const { return mu_.cols(); }
  const Matrix& mu() const { return mu_; }
  double operator()(Index i, Index k) const { return mu_(i, k); }

 private:
  Matrix mu_;
};

/// K x p cluster centers, one row per cluster. All entries finite.
class CentroidMatrix {
 public:
  explicit CentroidMatrix(Matrix g);

  Index K() const { return g_.rows(); }
  Index p() const { return g_.cols(); }
  const Matrix& g() const { return g_; }
  auto row(Index k) const { return g_.row(k); }

 private:
  Matrix g_;
};

enum class MethodTag { FCM, HSFC };

std::string to_string(MethodTag tag);

/// Outcome of one clustering fit.
struct ClusteringResult {
  CentroidMatrix centroids;
  MembershipMatrix memberships;
  /// Final value of the method's own criterion at (centroids, memberships):
  /// Eq-style fuzzy objective for FCM, fuzzy within-SS for HSFC.
  double objective = 0.0;
  std::vector<double> objective_trace;
  int iterations = 0;
  std::uint64_t seed = 0;
  MethodTag method_tag = MethodTag::FCM;
  /// Set when an inner solve hit its iteration cap or a line search stalled;
  /// the result is then the best iterate seen.
  bool solver_flagged = false;
};

/// Checks X.p == G.p, X.n == U.n and G.K == U.K; throws DimensionError
/// naming the offending pair otherwise.
void validate_dims(const DataMatrix& X, const CentroidMatrix& G,
                   const MembershipMatrix& U);

}  // namespace hsfc
