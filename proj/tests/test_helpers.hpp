#pragma once

#include <filesystem>

#include "hsfc/data.hpp"
#include "hsfc/rng.hpp"

namespace hsfc::testhelpers {

inline std::filesystem::path data_dir() { return HSFC_DATA_DIR; }

inline Matrix random_matrix(Index rows, Index cols, Rng& rng, double lo = -2.0,
                            double hi = 2.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = lo + (hi - lo) * rng.uniform01();
    }
  }
  return m;
}

}  // namespace hsfc::testhelpers
