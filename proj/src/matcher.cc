#include "mreak/matcher.h"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mreak/parallel.h"

namespace mreak {

void MatchOptions::validate() const {
  if (!(ratio_threshold > 0.0 && ratio_threshold <= 1.0)) {
    throw std::invalid_argument("ratio threshold must lie in (0, 1]");
  }
}

int hamming(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("descriptor lengths differ");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  int d = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) d += std::popcount(wa[i] ^ wb[i]);
  return d;
}

int hamming(const Descriptor& a, const Descriptor& b) {
  return hamming(a.bits, b.bits);
}

namespace {

struct Neighbours {
  int first = -1;
  int d1 = std::numeric_limits<int>::max();
  int d2 = std::numeric_limits<int>::max();
};

// Descriptors copied into one contiguous block of words.
std::vector<std::uint64_t> pack(std::span<const Descriptor> ds,
                                std::size_t words) {
  std::vector<std::uint64_t> packed;
  packed.reserve(ds.size() * words);
  for (const Descriptor& d : ds) {
    packed.insert(packed.end(), d.bits.words().begin(), d.bits.words().end());
  }
  return packed;
}

Neighbours nearest(const std::uint64_t* query,
                   const std::vector<std::uint64_t>& trains,
                   std::size_t words) {
  Neighbours nb;
  const std::size_t count = trains.size() / words;
  const std::uint64_t* t = trains.data();
  for (std::size_t j = 0; j < count; ++j, t += words) {
    int d = 0;
    for (std::size_t w = 0; w < words; ++w) d += std::popcount(query[w] ^ t[w]);
    if (d < nb.d1) {
      nb.d2 = nb.d1;
      nb.d1 = d;
      nb.first = static_cast<int>(j);
    } else if (d < nb.d2) {
      nb.d2 = d;
    }
  }
  return nb;
}

}  // namespace

MatchSet match(std::span<const Descriptor> queries,
               std::span<const Descriptor> trains,
               const MatchOptions& options) {
  options.validate();
  if (queries.empty() || trains.empty()) {
    throw std::invalid_argument("match needs non-empty descriptor lists");
  }
  const std::size_t bits = queries.front().bits.size();
  for (const auto& list : {queries, trains}) {
    for (const Descriptor& d : list) {
      if (d.bits.size() != bits) {
        throw std::invalid_argument("descriptor lengths differ");
      }
    }
  }
  const std::size_t words = (bits + 63) / 64;
  const auto packed_q = pack(queries, words);
  const auto packed_t = pack(trains, words);

  std::vector<Neighbours> forward(queries.size());
  parallel_for(queries.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      forward[i] = nearest(packed_q.data() + i * words, packed_t, words);
    }
  });

  std::vector<Neighbours> backward;
  if (options.cross_check) {
    backward.resize(trains.size());
    parallel_for(trains.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        backward[j] = nearest(packed_t.data() + j * words, packed_q, words);
      }
    });
  }

  MatchSet out;
  out.branch = queries.front().branch;
  const bool has_second = trains.size() > 1;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Neighbours& nb = forward[i];
    if (options.cross_check &&
        backward[nb.first].first != static_cast<int>(i)) {
      continue;
    }
    Match m;
    m.query_index = static_cast<int>(i);
    m.train_index = nb.first;
    m.distance = nb.d1;
    if (!has_second) {
      m.ratio = 0.0;
    } else if (nb.d2 == 0) {
      m.ratio = 1.0;  // duplicate train descriptors at distance 0
    } else {
      m.ratio = static_cast<double>(nb.d1) / nb.d2;
    }
    m.branch = out.branch;
    const Keypoint& a = queries[i].keypoint;
    const Keypoint& b = trains[nb.first].keypoint;
    m.x_a = a.x;
    m.y_a = a.y;
    m.x_b = b.x;
    m.y_b = b.y;
    out.all.push_back(m);
    if (m.ratio < options.ratio_threshold) out.best.push_back(m);
  }
  return out;
}

MatchSet merge(const MatchSet& open, const MatchSet& close,
               double dedup_radius) {
  MatchSet out;
  out.branch = Branch::kMerged;
  out.best = open.best;
  const double r2 = dedup_radius * dedup_radius;
  auto near = [r2](double x0, double y0, double x1, double y1) {
    return (x0 - x1) * (x0 - x1) + (y0 - y1) * (y0 - y1) <= r2;
  };
  for (const Match& m : close.best) {
    bool duplicate = false;
    for (const Match& k : out.best) {
      if (near(m.x_a, m.y_a, k.x_a, k.y_a) && near(m.x_b, m.y_b, k.x_b, k.y_b)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.best.push_back(m);
  }
  out.all = out.best;
  return out;
}

std::string matches_to_tsv(std::span<const Match> matches) {
  std::string out;
  char line[256];
  for (const Match& m : matches) {
    std::snprintf(line, sizeof(line), "%s\t%.3f\t%.3f\t%.3f\t%.3f\t%d\t%.3f\n",
                  std::string(branch_name(m.branch)).c_str(), m.x_a, m.y_a,
                  m.x_b, m.y_b, m.distance, m.ratio);
    out += line;
  }
  return out;
}

std::vector<Match> matches_from_tsv(std::string_view text) {
  std::vector<Match> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string branch;
    Match m;
    if (!(fields >> branch >> m.x_a >> m.y_a >> m.x_b >> m.y_b >> m.distance >>
          m.ratio)) {
      throw FormatError("malformed match line " + std::to_string(line_no));
    }
    try {
      m.branch = parse_branch(branch);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    m.query_index = m.train_index = static_cast<int>(out.size());
    out.push_back(m);
  }
  return out;
}

}  // namespace mreak
