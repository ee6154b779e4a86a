#ifndef MREAK_PAIR_TRAINING_H_
#define MREAK_PAIR_TRAINING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mreak/descriptor.h"

namespace mreak {

// Binary keypoint-by-column matrix, stored column-major with 64 rows per
// word so that column statistics reduce to popcounts. Column c stands for
// all_pairs()[c] when the matrix is built from descriptors.
class PairTrainingMatrix {
 public:
  explicit PairTrainingMatrix(int columns = kAllPairCount);

  // Appends one keypoint; `row` must hold exactly columns() bits.
  void add_row(const BitString& row);
  void add_row(std::span<const std::uint8_t> row);

  int rows() const { return rows_; }
  int columns() const { return columns_; }

  bool at(int row, int column) const {
    return (column_words(column)[row >> 6] >> (row & 63)) & 1u;
  }
  std::int64_t ones(int column) const;
  double mean(int column) const;

  // Exact Pearson correlation of two columns; 0 when either column is
  // constant (its covariance with anything is zero).
  double correlation(int a, int b) const;

  std::span<const std::uint64_t> column_words(int column) const {
    return std::span<const std::uint64_t>(data_[column]);
  }

 private:
  int columns_;
  int rows_ = 0;
  std::vector<std::vector<std::uint64_t>> data_;
};

struct PairTrainingOptions {
  double correlation_threshold = 0.7;
  double relax_step = 0.1;
};

struct PairTrainingResult {
  // Column indices in acceptance order.
  std::vector<int> columns;
  // Pairs for those columns (all_pairs() mapping).
  PairSet pairs;
  // Threshold in force when the last column was accepted; every accepted
  // pair has |correlation| below it.
  double final_threshold = 0.0;
};

// Greedy selection: columns ordered by |mean - 0.5| (ties by index), each
// accepted when its |correlation| with every accepted column is below the
// threshold; the threshold relaxes by relax_step after a full scan falls
// short.
PairTrainingResult train_pairs(const PairTrainingMatrix& matrix, int n,
                               const PairTrainingOptions& options = {});

}  // namespace mreak

#endif  // MREAK_PAIR_TRAINING_H_
