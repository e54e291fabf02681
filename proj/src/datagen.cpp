#include "hsfc/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "hsfc/rng.hpp"

namespace hsfc {

void TableSpec::validate() const {
  if (n < 1) throw InvariantError("TableSpec: n must be >= 1");
  if (K < 2) throw InvariantError("TableSpec: K must be >= 2");
  if (K > n) throw InvariantError("TableSpec: K exceeds n");
  if (p < 2) throw InvariantError("TableSpec: regular-polygon centers need p >= 2");
  if (!(separation > 0.0)) throw InvariantError("TableSpec: separation must be > 0");
}

TableSpec spec_from_code(const std::string& code, std::uint64_t seed) {
  // T1..T16 enumerate {card =, card !=} x {SD =, SD !=} x {n, K}:
  //   T1..T8  card(=),  T9..T16 card(!=)
  //   within each block of 4: SD(=) then SD(!=)
  //   within each pair: n=525 then n=105; K alternates 3, 7
  if (code.size() < 2 || code[0] != 'T') {
    throw std::invalid_argument("unknown table code '" + code + "'");
  }
  int num = 0;
  try {
    size_t pos = 0;
    num = std::stoi(code.substr(1), &pos);
    if (pos + 1 != code.size()) num = 0;
  } catch (const std::exception&) {
    num = 0;
  }
  if (num < 1 || num > 16) {
    throw std::invalid_argument("unknown table code '" + code + "'");
  }
  const int idx = num - 1;
  TableSpec spec;
  spec.equal_card = idx < 8;
  spec.equal_sd = (idx % 8) < 4;
  spec.n = (idx % 4) < 2 ? 525 : 105;
  spec.K = (idx % 2) == 0 ? 3 : 7;
  spec.seed = seed;
  return spec;
}

std::vector<std::string> all_table_codes() {
  std::vector<std::string> codes;
  for (int i = 1; i <= 16; ++i) codes.push_back("T" + std::to_string(i));
  return codes;
}

std::vector<int> cardinalities(const TableSpec& spec) {
  spec.validate();
  std::vector<int> card(static_cast<std::size_t>(spec.K), 0);
  if (spec.equal_card) {
    if (spec.n % spec.K != 0) {
      throw InvariantError("TableSpec: equal cardinality needs K | n");
    }
    for (auto& c : card) c = spec.n / spec.K;
    return card;
  }
  const int big = static_cast<int>(std::lround(spec.n / 2.0));
  card[0] = big;
  const int rest = spec.n - big;
  const int small = rest / (spec.K - 1);
  int leftover = rest % (spec.K - 1);
  for (int k = 1; k < spec.K; ++k) {
    card[static_cast<std::size_t>(k)] = small + (leftover > 0 ? 1 : 0);
    if (leftover > 0) --leftover;
  }
  return card;
}

Matrix cluster_centers(const TableSpec& spec) {
  spec.validate();
  // Regular K-gon in the first two coordinates; adjacent vertices are the
  // closest pair, so side length = separation gives min pairwise distance
  // exactly `separation`.
  const double radius = spec.separation / (2.0 * std::sin(M_PI / spec.K));
  Matrix centers = Matrix::Zero(spec.K, spec.p);
  for (int k = 0; k < spec.K; ++k) {
    const double angle = 2.0 * M_PI * k / spec.K;
    centers(k, 0) = radius * std::cos(angle);
    centers(k, 1) = radius * std::sin(angle);
  }
  return centers;
}

GeneratedTable generate(const TableSpec& spec) {
  spec.validate();
  const std::vector<int> card = cardinalities(spec);
  const Matrix centers = cluster_centers(spec);
  Rng rng(spec.seed);

  Matrix X(spec.n, spec.p);
  HardPartition truth;
  truth.K = spec.K;
  truth.labels.reserve(static_cast<std::size_t>(spec.n));

  Index row = 0;
  for (int k = 0; k < spec.K; ++k) {
    const double sd = (!spec.equal_sd && k == 0) ? 3.0 : 1.0;
    for (int c = 0; c < card[static_cast<std::size_t>(k)]; ++c, ++row) {
      for (Index j = 0; j < spec.p; ++j) {
        X(row, j) = centers(k, j) + sd * rng.normal();
      }
      truth.labels.push_back(k);
    }
  }
  return GeneratedTable{DataMatrix(std::move(X)), std::move(truth)};
}

}  // namespace hsfc
