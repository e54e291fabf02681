#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsfc/data.hpp"
#include "hsfc/evaluation.hpp"

namespace hsfc {

/// One factor combination of the simulated benchmark: object count,
/// cluster count, equal/unequal cardinalities and equal/unequal spreads.
struct TableSpec {
  int n = 105;
  int K = 3;
  bool equal_card = true;
  bool equal_sd = true;
  int p = 2;
  double separation = 10.0;  // minimum distance between cluster centers
  std::uint64_t seed = 0;

  void validate() const;
};

/// Maps the benchmark codes "T1".."T16" onto their factor combinations.
/// Throws std::invalid_argument for anything else.
TableSpec spec_from_code(const std::string& code, std::uint64_t seed = 0);

/// All sixteen codes in order.
std::vector<std::string> all_table_codes();

/// Cluster sizes for a spec. Equal cardinality gives n/K per cluster;
/// otherwise cluster 0 takes round(n/2) and the rest split the remainder
/// evenly, lowest indices absorbing leftover units.
std::vector<int> cardinalities(const TableSpec& spec);

/// Cluster centers on a regular K-gon with circumradius chosen so adjacent
/// vertices sit exactly `separation` apart.
Matrix cluster_centers(const TableSpec& spec);

struct GeneratedTable {
  DataMatrix X;
  HardPartition truth;
};

/// Seeded Gaussian sample: cluster k contributes cardinality(k) points
/// around its center, per-coordinate SD 1 except cluster 0 in unequal-SD
/// designs, which uses SD 3. Points are emitted cluster by cluster.
GeneratedTable generate(const TableSpec& spec);

}  // namespace hsfc
