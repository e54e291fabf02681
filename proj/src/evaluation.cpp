#include "hsfc/evaluation.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace hsfc {

namespace {

void check_lengths(const HardPartition& a, const HardPartition& b) {
  if (a.labels.size() != b.labels.size()) {
    std::ostringstream os;
    os << "partition length mismatch: " << a.labels.size() << " vs "
       << b.labels.size();
    throw DimensionError(os.str());
  }
  if (a.labels.empty()) {
    throw InvariantError("empty partitions cannot be compared");
  }
}

std::int64_t pairs2(std::int64_t x) { return x * (x - 1) / 2; }

struct PairCounts {
  std::int64_t together_in_both = 0;  // sum_ij C(n_ij, 2)
  std::int64_t together_in_a = 0;     // sum_i C(a_i, 2)
  std::int64_t together_in_b = 0;     // sum_j C(b_j, 2)
  std::int64_t total = 0;             // C(n, 2)
};

PairCounts contingency_counts(const HardPartition& a, const HardPartition& b) {
  check_lengths(a, b);
  const int Ka = a.K, Kb = b.K;
  std::vector<std::int64_t> table(static_cast<std::size_t>(Ka) * Kb, 0);
  std::vector<std::int64_t> ra(Ka, 0), rb(Kb, 0);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    const int la = a.labels[i], lb = b.labels[i];
    if (la < 0 || la >= Ka || lb < 0 || lb >= Kb) {
      throw InvariantError("partition label out of range");
    }
    ++table[static_cast<std::size_t>(la) * Kb + lb];
    ++ra[la];
    ++rb[lb];
  }
  PairCounts c;
  for (const auto v : table) c.together_in_both += pairs2(v);
  for (const auto v : ra) c.together_in_a += pairs2(v);
  for (const auto v : rb) c.together_in_b += pairs2(v);
  c.total = pairs2(static_cast<std::int64_t>(a.labels.size()));
  return c;
}

// Same grouping structure, i.e. equal up to relabeling.
bool same_partition(const HardPartition& a, const HardPartition& b) {
  std::vector<int> map_ab(a.K, -1), map_ba(b.K, -1);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    const int la = a.labels[i], lb = b.labels[i];
    if (map_ab[la] == -1) map_ab[la] = lb;
    if (map_ba[lb] == -1) map_ba[lb] = la;
    if (map_ab[la] != lb || map_ba[lb] != la) return false;
  }
  return true;
}

}  // namespace

double within_ss(const DataMatrix& X, const MembershipMatrix& U,
                 const CentroidMatrix& G) {
  validate_dims(X, G, U);
  double total = 0.0;
  for (Index i = 0; i < X.n(); ++i) {
    for (Index k = 0; k < G.K(); ++k) {
      total += U(i, k) * (X.row(i) - G.row(k)).squaredNorm();
    }
  }
  return total;
}

HardPartition crisp(const MembershipMatrix& U) {
  HardPartition part;
  part.K = static_cast<int>(U.K());
  part.labels.resize(static_cast<std::size_t>(U.n()));
  for (Index i = 0; i < U.n(); ++i) {
    Index best = 0;
    for (Index k = 1; k < U.K(); ++k) {
      if (U(i, k) > U(i, best)) best = k;  // strict: ties keep lowest index
    }
    part.labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return part;
}

CentroidMatrix partition_means(const DataMatrix& X, const HardPartition& P) {
  if (static_cast<Index>(P.labels.size()) != X.n()) {
    throw DimensionError("partition length does not match data n");
  }
  Matrix means = Matrix::Zero(P.K, X.p());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(P.K), 0);
  for (Index i = 0; i < X.n(); ++i) {
    const int k = P.labels[static_cast<std::size_t>(i)];
    means.row(k) += X.row(i);
    ++counts[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < P.K; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) {
      std::ostringstream os;
      os << "partition cluster " << k << " is empty";
      throw InvariantError(os.str());
    }
    means.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);
  }
  return CentroidMatrix(std::move(means));
}

double partition_within_ss(const DataMatrix& X, const HardPartition& P) {
  // Empty clusters contribute nothing, so compute means inline instead of
  // through partition_means (which rejects them); a collapsed fit still has
  // a well-defined within-class SS.
  if (static_cast<Index>(P.labels.size()) != X.n()) {
    throw DimensionError("partition length does not match data n");
  }
  Matrix means = Matrix::Zero(P.K, X.p());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(P.K), 0);
  for (Index i = 0; i < X.n(); ++i) {
    const int k = P.labels[static_cast<std::size_t>(i)];
    means.row(k) += X.row(i);
    ++counts[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < P.K; ++k) {
    if (counts[static_cast<std::size_t>(k)] > 0) {
      means.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);
    }
  }
  double total = 0.0;
  for (Index i = 0; i < X.n(); ++i) {
    total += (X.row(i) - means.row(P.labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

double rand_index(const HardPartition& a, const HardPartition& b) {
  const PairCounts c = contingency_counts(a, b);
  if (c.total == 0) return 1.0;  // single object: trivially identical
  const std::int64_t agreements =
      c.total - c.together_in_a - c.together_in_b + 2 * c.together_in_both;
  return static_cast<double>(agreements) / static_cast<double>(c.total);
}

double adjusted_rand_index(const HardPartition& a, const HardPartition& b) {
  const PairCounts c = contingency_counts(a, b);
  const bool both_singletons = c.together_in_a == 0 && c.together_in_b == 0;
  const bool both_one_cluster =
      c.together_in_a == c.total && c.together_in_b == c.total;
  if (c.total == 0 || both_singletons || both_one_cluster) {
    return same_partition(a, b) ? 1.0 : 0.0;
  }
  const double expected = static_cast<double>(c.together_in_a) *
                          static_cast<double>(c.together_in_b) /
                          static_cast<double>(c.total);
  const double max_index =
      0.5 * static_cast<double>(c.together_in_a + c.together_in_b);
  return (static_cast<double>(c.together_in_both) - expected) /
         (max_index - expected);
}

}  // namespace hsfc
