#pragma once

#include <Eigen/Dense>

namespace hsfc {

// Row-major throughout: inner loops iterate objects x clusters and read
// whole rows, so rows must be contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

using MatrixRef = Eigen::Ref<const Matrix>;
using VectorRef = Eigen::Ref<const Vector>;

}  // namespace hsfc
