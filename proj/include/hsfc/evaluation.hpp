#pragma once

#include <vector>

#include "hsfc/data.hpp"

namespace hsfc {

/// Hard assignment of each object to one of K clusters.
struct HardPartition {
  std::vector<int> labels;
  int K = 0;
};

/// Within-class sum-of-squares W = sum_k sum_i mu_ik ||x_i - g_k||^2.
/// Membership exponent is 1 here regardless of any fuzziness exponent used
/// to fit; with a hard U this is the classic k-means within-cluster SS.
double within_ss(const DataMatrix& X, const MembershipMatrix& U,
                 const CentroidMatrix& G);

/// Argmax crisping of a fuzzy membership matrix; ties go to the lowest
/// cluster index.
HardPartition crisp(const MembershipMatrix& U);

/// Class means of a hard partition. Empty clusters are rejected.
CentroidMatrix partition_means(const DataMatrix& X, const HardPartition& P);

/// W of the hard partition itself: each object against its own class mean.
/// This is the comparison criterion reported for fitted models after
/// crisping, so both fuzzy methods are scored on the same crisp scale.
/// Empty clusters are allowed here (they contribute no terms); a collapsed
/// fit scores as the partition it actually induces.
double partition_within_ss(const DataMatrix& X, const HardPartition& P);

/// Fraction of object pairs on which the two partitions agree (both
/// together or both apart). Symmetric, in [0, 1].
double rand_index(const HardPartition& a, const HardPartition& b);

/// Hubert-Arabie adjusted Rand index via the contingency table, with exact
/// 64-bit pair counting. Equals 1 iff the partitions are identical up to
/// relabeling. When both partitions are all-singletons or both are a single
/// cluster the adjustment degenerates; then 1 is returned if the partitions
/// are equal and 0 otherwise.
double adjusted_rand_index(const HardPartition& a, const HardPartition& b);

}  // namespace hsfc
