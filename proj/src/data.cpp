#include "hsfc/data.hpp"

#include <cmath>
#include <sstream>

namespace hsfc {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (!std::isfinite(m(i, j))) {
          std::ostringstream os;
          os << what << ": non-finite entry at (" << i << ", " << j << ")";
          throw InvariantError(os.str());
        }
      }
    }
  }
}

}  // namespace

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> feature_names)
    : values_(std::move(values)), feature_names_(std::move(feature_names)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw InvariantError("DataMatrix: need n >= 1 and p >= 1");
  }
  require_finite(values_, "DataMatrix");
  if (!feature_names_.empty() &&
      static_cast<Index>(feature_names_.size()) != values_.cols()) {
    throw InvariantError("DataMatrix: feature name count does not match p");
  }
}

MembershipMatrix::MembershipMatrix(Matrix mu) : mu_(std::move(mu)) {
  if (mu_.rows() < 1 || mu_.cols() < 1) {
    throw InvariantError("MembershipMatrix: need n >= 1 and K >= 1");
  }
  require_finite(mu_, "MembershipMatrix");
  // Solver output carries root-tolerance noise; absorb it, reject real
  // violations.
  constexpr double kSlack = 1e-9;
  if ((mu_.array() < -kSlack).any() || (mu_.array() > 1.0 + kSlack).any()) {
    throw InvariantError("MembershipMatrix: entries must lie in [0, 1]");
  }
  mu_ = mu_.cwiseMax(0.0).cwiseMin(1.0);
  for (Index i = 0; i < mu_.rows(); ++i) {
    const double s = mu_.row(i).sum();
    if (std::abs(s - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "MembershipMatrix: row " << i << " sums to " << s
         << ", expected 1 within " << kRowSumTol;
      throw InvariantError(os.str());
    }
  }
}

CentroidMatrix::CentroidMatrix(Matrix g) : g_(std::move(g)) {
  if (g_.rows() < 1 || g_.cols() < 1) {
    throw InvariantError("CentroidMatrix: need K >= 1 and p >= 1");
  }
  require_finite(g_, "CentroidMatrix");
}

std::string to_string(MethodTag tag) {
  return tag == MethodTag::FCM ? "fcm" : "hsfc";
}

void validate_dims(const DataMatrix& X, const CentroidMatrix& G,
                   const MembershipMatrix& U) {
  std::ostringstream os;
  if (X.p() != G.p()) {
    os << "p mismatch: data has p=" << X.p() << ", centroids have p=" << G.p();
    throw DimensionError(os.str());
  }
  if (X.n() != U.n()) {
    os << "n mismatch: data has n=" << X.n() << ", memberships have n=" << U.n();
    throw DimensionError(os.str());
  }
  if (G.K() != U.K()) {
    os << "K mismatch: centroids have K=" << G.K() << ", memberships have K="
       << U.K();
    throw DimensionError(os.str());
  }
}

}  // namespace hsfc
