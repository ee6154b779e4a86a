#include "mreak/pipeline.h"

#include <chrono>
#include <stdexcept>

#include "mreak/parallel.h"

namespace mreak {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

int branch_slot(Branch branch) {
  switch (branch) {
    case Branch::kBaseline:
      return 0;
    case Branch::kOpen:
      return 1;
    case Branch::kClose:
      return 2;
    case Branch::kMerged:
      break;
  }
  throw std::invalid_argument("merged has no extractor");
}

}  // namespace

Image preprocess(const Image& img, Branch branch,
                 const StructuringElement& se) {
  switch (branch) {
    case Branch::kOpen:
      return to_gray(open(img, se));
    case Branch::kClose:
      return to_gray(close(img, se));
    default:
      return to_gray(img);
  }
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.detector.validate();
  config_.matching.validate();
  if (config_.pairs) {
    config_.pairs->validate();
  } else if (config_.descriptor_bits < 1 ||
             config_.descriptor_bits > kAllPairCount) {
    throw std::invalid_argument("descriptor bits must lie in [1, 903]");
  }
  const std::pair<PatternVariant, const PatternParams*> variants[] = {
      {PatternVariant::kBase, &config_.base_pattern},
      {PatternVariant::kOpening, &config_.open_pattern},
      {PatternVariant::kClosing, &config_.close_pattern},
  };
  for (const auto& [variant, params] : variants) {
    SamplingPattern pattern(variant, *params);
    PairSet pairs = config_.pairs ? *config_.pairs
                                  : default_pairs(pattern,
                                                  config_.descriptor_bits);
    OrientationPairSet opairs = make_orientation_pairs(pattern);
    extractors_.push_back(
        {std::move(pattern), std::move(pairs), std::move(opairs)});
  }
}

const Pipeline::Extractor& Pipeline::extractor(Branch branch) const {
  return extractors_[branch_slot(branch)];
}

const SamplingPattern& Pipeline::pattern(Branch branch) const {
  return extractor(branch).pattern;
}

const PairSet& Pipeline::pairs(Branch branch) const {
  return extractor(branch).pairs;
}

const OrientationPairSet& Pipeline::orientation_pairs(Branch branch) const {
  return extractor(branch).opairs;
}

Features Pipeline::extract(const Image& img, Branch branch,
                           bool apply_morphology) const {
  const Extractor& ex = extractor(branch);
  Features f;
  f.branch = branch;
  f.margin = ex.pattern.margin();

  auto start = Clock::now();
  f.gray = apply_morphology ? preprocess(img, branch, config_.se)
                            : to_gray(img);
  f.preprocess_ms = elapsed_ms(start);

  start = Clock::now();
  std::vector<Keypoint> keypoints;
  if (f.gray.width() > 2 * f.margin && f.gray.height() > 2 * f.margin) {
    keypoints = detect(f.gray, config_.detector, f.margin);
  }
  f.detect_ms = elapsed_ms(start);

  start = Clock::now();
  if (!keypoints.empty()) {
    const IntegralImage ii(f.gray);
    f.descriptors.resize(keypoints.size());
    parallel_for(keypoints.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        f.descriptors[i] =
            describe(ii, keypoints[i], ex.pattern, ex.pairs, ex.opairs);
      }
    });
  }
  f.description = {elapsed_ms(start), keypoints.size()};
  return f;
}

BranchReport Pipeline::match_features(const Features& a,
                                      const Features& b) const {
  BranchReport r;
  r.branch = a.branch;
  r.keypoints_a = a.descriptors.size();
  r.keypoints_b = b.descriptors.size();
  r.matches.branch = a.branch;
  r.description = a.description;
  r.description += b.description;
  if (!a.descriptors.empty() && !b.descriptors.empty()) {
    const auto start = Clock::now();
    r.matches = match(a.descriptors, b.descriptors, config_.matching);
    r.matching = {elapsed_ms(start), a.descriptors.size()};
  }
  return r;
}

MatchReport Pipeline::run_mreak(const Image& a, const Image& b) const {
  MatchReport report;
  report.open = match_features(extract(a, Branch::kOpen),
                               extract(b, Branch::kOpen));
  report.close = match_features(extract(a, Branch::kClose),
                                extract(b, Branch::kClose));
  // Morphology moves no pixels, so branch coordinates are already in the
  // original image frame.
  report.merged =
      merge(report.open->matches, report.close->matches, config_.dedup_radius);
  MethodTiming timing;
  for (const BranchReport* r : {&*report.open, &*report.close}) {
    timing.description += r->description;
    timing.matching += r->matching;
  }
  report.mreak_timing = timing;
  return report;
}

MatchReport Pipeline::run_baseline(const Image& a, const Image& b) const {
  MatchReport report;
  report.baseline = match_features(extract(a, Branch::kBaseline),
                                   extract(b, Branch::kBaseline));
  report.baseline_timing =
      MethodTiming{report.baseline->description, report.baseline->matching};
  return report;
}

MatchReport Pipeline::run_all(const Image& a, const Image& b) const {
  MatchReport report = run_mreak(a, b);
  MatchReport base = run_baseline(a, b);
  report.baseline = std::move(base.baseline);
  report.baseline_timing = base.baseline_timing;
  return report;
}

MatchReport run_mreak(const Image& a, const Image& b,
                      const PipelineConfig& config) {
  return Pipeline(config).run_mreak(a, b);
}

MatchReport run_baseline(const Image& a, const Image& b,
                         const PipelineConfig& config) {
  return Pipeline(config).run_baseline(a, b);
}

}  // namespace mreak
