#include "mreak/pair_training.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mreak {

PairTrainingMatrix::PairTrainingMatrix(int columns)
    : columns_(columns), data_(columns) {
  if (columns < 1) throw std::invalid_argument("matrix needs columns");
}

void PairTrainingMatrix::add_row(const BitString& row) {
  if (row.size() != static_cast<std::size_t>(columns_)) {
    throw std::invalid_argument("row length does not match column count");
  }
  const std::size_t word = static_cast<std::size_t>(rows_) >> 6;
  const std::uint64_t mask = std::uint64_t{1} << (rows_ & 63);
  for (int c = 0; c < columns_; ++c) {
    auto& col = data_[c];
    if (col.size() <= word) col.resize(word + 1, 0);
    if (row.test(c)) col[word] |= mask;
  }
  ++rows_;
}

void PairTrainingMatrix::add_row(std::span<const std::uint8_t> row) {
  if (row.size() != static_cast<std::size_t>(columns_)) {
    throw std::invalid_argument("row length does not match column count");
  }
  BitString bits(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] > 1) throw std::invalid_argument("matrix entries must be 0/1");
    if (row[c]) bits.set(c);
  }
  add_row(bits);
}

std::int64_t PairTrainingMatrix::ones(int column) const {
  std::int64_t n = 0;
  for (std::uint64_t w : data_[column]) n += std::popcount(w);
  return n;
}

double PairTrainingMatrix::mean(int column) const {
  return rows_ == 0 ? 0.0 : static_cast<double>(ones(column)) / rows_;
}

double PairTrainingMatrix::correlation(int a, int b) const {
  const std::int64_t k = rows_;
  const std::int64_t ca = ones(a);
  const std::int64_t cb = ones(b);
  std::int64_t both = 0;
  const auto& wa = data_[a];
  const auto& wb = data_[b];
  for (std::size_t i = 0; i < wa.size(); ++i) both += std::popcount(wa[i] & wb[i]);
  // All terms are integers, so the value does not depend on row order.
  const double va = static_cast<double>(k * ca - ca * ca);
  const double vb = static_cast<double>(k * cb - cb * cb);
  if (va == 0.0 || vb == 0.0) return 0.0;
  return static_cast<double>(k * both - ca * cb) / std::sqrt(va * vb);
}

PairTrainingResult train_pairs(const PairTrainingMatrix& matrix, int n,
                               const PairTrainingOptions& options) {
  if (n < 0 || n > matrix.columns() || n > kAllPairCount) {
    throw std::invalid_argument("requested pair count out of range");
  }
  if (matrix.rows() < 2) {
    throw std::invalid_argument("pair training needs at least two rows");
  }
  if (!(options.relax_step > 0.0)) {
    throw std::invalid_argument("relax step must be positive");
  }

  const int columns = matrix.columns();
  std::vector<double> distance(columns);
  for (int c = 0; c < columns; ++c) {
    distance[c] = std::abs(matrix.mean(c) - 0.5);
  }
  std::vector<int> order(columns);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return distance[a] < distance[b];
  });

  PairTrainingResult result;
  std::vector<bool> taken(columns, false);
  double threshold = options.correlation_threshold;
  while (static_cast<int>(result.columns.size()) < n) {
    for (int c : order) {
      if (static_cast<int>(result.columns.size()) == n) break;
      if (taken[c]) continue;
      bool ok = true;
      for (int accepted : result.columns) {
        if (std::abs(matrix.correlation(c, accepted)) >= threshold) {
          ok = false;
          break;
        }
      }
      if (ok) {
        taken[c] = true;
        result.columns.push_back(c);
        result.final_threshold = threshold;
      }
    }
    if (static_cast<int>(result.columns.size()) < n) {
      threshold += options.relax_step;
    }
  }

  if (columns == kAllPairCount) {
    const auto pairs = all_pairs();
    for (int c : result.columns) result.pairs.pairs.push_back(pairs[c]);
  }
  return result;
}

}  // namespace mreak
