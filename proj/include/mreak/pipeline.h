#ifndef MREAK_PIPELINE_H_
#define MREAK_PIPELINE_H_

#include <optional>
#include <vector>

#include "mreak/descriptor.h"
#include "mreak/detector.h"
#include "mreak/matcher.h"
#include "mreak/morphology.h"
#include "mreak/raster.h"
#include "mreak/retina.h"

namespace mreak {

struct PipelineConfig {
  StructuringElement se = StructuringElement::square(3);
  DetectorParams detector;
  // One geometry per branch so each branch can be tuned on its own.
  PatternParams base_pattern;
  PatternParams open_pattern;
  PatternParams close_pattern;
  // Trained pairs; each branch falls back to default_pairs() of its own
  // pattern when unset.
  std::optional<PairSet> pairs;
  int descriptor_bits = kDefaultDescriptorBits;
  MatchOptions matching;
  double dedup_radius = 2.0;
};

// Wall time of one stage and the number of keypoints it handled.
struct StageTiming {
  double total_ms = 0.0;
  std::size_t keypoints = 0;

  double per_keypoint_ms() const {
    return keypoints == 0 ? 0.0 : total_ms / static_cast<double>(keypoints);
  }
  StageTiming& operator+=(const StageTiming& o) {
    total_ms += o.total_ms;
    keypoints += o.keypoints;
    return *this;
  }
};

// Preprocessed image plus its keypoints and descriptors for one branch.
struct Features {
  Branch branch = Branch::kBaseline;
  Image gray;
  int margin = 0;
  std::vector<Descriptor> descriptors;
  double preprocess_ms = 0.0;
  double detect_ms = 0.0;
  StageTiming description;
};

struct BranchReport {
  Branch branch = Branch::kBaseline;
  std::size_t keypoints_a = 0;
  std::size_t keypoints_b = 0;
  MatchSet matches;
  // Description covers both images; matching counts query keypoints.
  StageTiming description;
  StageTiming matching;
};

struct MethodTiming {
  StageTiming description;
  StageTiming matching;
};

struct MatchReport {
  std::optional<BranchReport> open;
  std::optional<BranchReport> close;
  std::optional<MatchSet> merged;
  std::optional<BranchReport> baseline;
  std::optional<MethodTiming> mreak_timing;
  std::optional<MethodTiming> baseline_timing;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  const SamplingPattern& pattern(Branch branch) const;
  const PairSet& pairs(Branch branch) const;
  const OrientationPairSet& orientation_pairs(Branch branch) const;

  // Morphology for the branch (per channel), grayscale conversion, Harris
  // detection inside the pattern margin, description with the branch
  // pattern. With apply_morphology false the image is only converted to
  // grayscale.
  Features extract(const Image& img, Branch branch,
                   bool apply_morphology = true) const;

  BranchReport match_features(const Features& a, const Features& b) const;

  // Opening and closing branches plus their merge.
  MatchReport run_mreak(const Image& a, const Image& b) const;
  // Unmodified image with the base pattern.
  MatchReport run_baseline(const Image& a, const Image& b) const;
  // Both of the above in one report.
  MatchReport run_all(const Image& a, const Image& b) const;

 private:
  struct Extractor {
    SamplingPattern pattern;
    PairSet pairs;
    OrientationPairSet opairs;
  };
  const Extractor& extractor(Branch branch) const;

  PipelineConfig config_;
  std::vector<Extractor> extractors_;  // baseline, open, close
};

MatchReport run_mreak(const Image& a, const Image& b,
                      const PipelineConfig& config);
MatchReport run_baseline(const Image& a, const Image& b,
                         const PipelineConfig& config);

// Branch preprocessing alone: morphology (if any) then grayscale.
Image preprocess(const Image& img, Branch branch, const StructuringElement& se);

}  // namespace mreak

#endif  // MREAK_PIPELINE_H_
