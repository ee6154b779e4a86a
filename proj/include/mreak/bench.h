#ifndef MREAK_BENCH_H_
#define MREAK_BENCH_H_

#include <span>
#include <string>
#include <vector>

#include "mreak/pipeline.h"

namespace mreak {

struct ImagePair {
  std::string name;
  Image a;
  Image b;
};

// Per-keypoint figures for one method on one image pair, averaged over the
// timed repeats.
struct MethodSample {
  double description_ms_per_keypoint = 0.0;
  double matching_ms_per_keypoint = 0.0;
  double keypoints_per_image = 0.0;
};

struct PairBench {
  std::string name;
  MethodSample baseline;
  MethodSample mreak;
  MethodSample float_l2;
};

struct BenchResult {
  std::vector<PairBench> pairs;
  // Means over pairs.
  MethodSample baseline;
  MethodSample mreak;
  MethodSample float_l2;
  int repeats = 0;
};

struct BenchOptions {
  // Timed runs per pair, after one discarded warmup run.
  int repeats = 1;
};

// Each binary descriptor as one row of bit_count floats in {0, 1}.
std::vector<float> embed_as_floats(std::span<const Descriptor> descriptors);

// Nearest train row of each query row under squared Euclidean distance
// (ties to the lower index); the float-descriptor matching control.
std::vector<int> float_l2_nearest(std::span<const float> queries,
                                  std::span<const float> trains,
                                  std::size_t dim);

// Runs baseline, MREAK and the float-L2 control single threaded on every
// pair and reports per-keypoint description and matching times.
BenchResult bench(std::span<const ImagePair> pairs,
                  const PipelineConfig& config,
                  const BenchOptions& options = {});

}  // namespace mreak

#endif  // MREAK_BENCH_H_
