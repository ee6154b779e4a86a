#ifndef MREAK_MATCHER_H_
#define MREAK_MATCHER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mreak/descriptor.h"

namespace mreak {

struct Match {
  int query_index = 0;
  int train_index = 0;
  int distance = 0;  // Hamming bits
  // Nearest / second-nearest distance; 0 when there is no second neighbour.
  double ratio = 0.0;
  Branch branch = Branch::kBaseline;
  double x_a = 0.0;
  double y_a = 0.0;
  double x_b = 0.0;
  double y_b = 0.0;

  bool operator==(const Match&) const = default;
};

struct MatchOptions {
  double ratio_threshold = 0.75;
  // Keep only mutual nearest neighbours.
  bool cross_check = false;

  void validate() const;
};

struct MatchSet {
  Branch branch = Branch::kBaseline;
  // One entry per query that found a neighbour.
  std::vector<Match> all;
  // Entries of `all` with ratio < threshold.
  std::vector<Match> best;

  std::size_t total() const { return all.size(); }
  std::size_t best_count() const { return best.size(); }
  bool operator==(const MatchSet&) const = default;
};

// popcount(a XOR b); throws std::invalid_argument on length mismatch.
int hamming(const BitString& a, const BitString& b);
int hamming(const Descriptor& a, const Descriptor& b);

// Brute-force nearest and second-nearest neighbour search with the ratio
// test. Ties go to the lower train index.
MatchSet match(std::span<const Descriptor> queries,
               std::span<const Descriptor> trains,
               const MatchOptions& options = {});

// Open-branch best matches first, then every close-branch best match whose
// two endpoints are not both within dedup_radius of an already kept match.
MatchSet merge(const MatchSet& open, const MatchSet& close,
               double dedup_radius = 2.0);

// One line per match: branch, x_a, y_a, x_b, y_b, distance, ratio.
std::string matches_to_tsv(std::span<const Match> matches);
std::vector<Match> matches_from_tsv(std::string_view text);

}  // namespace mreak

#endif  // MREAK_MATCHER_H_
