#include "mreak/bench.h"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "mreak/parallel.h"

namespace mreak {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct Timed {
  StageTiming description;
  StageTiming matching;
  std::size_t keypoints = 0;  // described, over both images
};

Timed time_binary(const Pipeline& pipeline, const ImagePair& pair,
                  std::initializer_list<Branch> branches) {
  Timed t;
  for (Branch branch : branches) {
    const Features fa = pipeline.extract(pair.a, branch);
    const Features fb = pipeline.extract(pair.b, branch);
    const BranchReport r = pipeline.match_features(fa, fb);
    t.description += r.description;
    t.matching += r.matching;
    t.keypoints += fa.descriptors.size() + fb.descriptors.size();
  }
  return t;
}

Timed time_float_l2(const Pipeline& pipeline, const ImagePair& pair) {
  Timed t;
  const Features fa = pipeline.extract(pair.a, Branch::kBaseline);
  const Features fb = pipeline.extract(pair.b, Branch::kBaseline);
  t.keypoints = fa.descriptors.size() + fb.descriptors.size();
  if (fa.descriptors.empty() || fb.descriptors.empty()) return t;
  const std::size_t dim = fa.descriptors.front().bits.size();

  auto start = Clock::now();
  const auto qa = embed_as_floats(fa.descriptors);
  const auto qb = embed_as_floats(fb.descriptors);
  t.description = fa.description;
  t.description += fb.description;
  t.description.total_ms += elapsed_ms(start);

  start = Clock::now();
  const auto nn = float_l2_nearest(qa, qb, dim);
  t.matching = {elapsed_ms(start), nn.size()};
  return t;
}

MethodSample to_sample(const Timed& sum, int repeats) {
  MethodSample s;
  s.description_ms_per_keypoint = sum.description.per_keypoint_ms();
  s.matching_ms_per_keypoint = sum.matching.per_keypoint_ms();
  s.keypoints_per_image = static_cast<double>(sum.keypoints) / (2.0 * repeats);
  return s;
}

void accumulate(Timed& into, const Timed& t) {
  into.description += t.description;
  into.matching += t.matching;
  into.keypoints += t.keypoints;
}

void add_mean(MethodSample& into, const MethodSample& s, double n) {
  into.description_ms_per_keypoint += s.description_ms_per_keypoint / n;
  into.matching_ms_per_keypoint += s.matching_ms_per_keypoint / n;
  into.keypoints_per_image += s.keypoints_per_image / n;
}

}  // namespace

std::vector<float> embed_as_floats(std::span<const Descriptor> descriptors) {
  if (descriptors.empty()) return {};
  const std::size_t dim = descriptors.front().bits.size();
  std::vector<float> out(descriptors.size() * dim);
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    for (std::size_t a = 0; a < dim; ++a) {
      out[i * dim + a] = descriptors[i].bits.test(a) ? 1.0f : 0.0f;
    }
  }
  return out;
}

std::vector<int> float_l2_nearest(std::span<const float> queries,
                                  std::span<const float> trains,
                                  std::size_t dim) {
  const std::size_t nq = queries.size() / dim;
  const std::size_t nt = trains.size() / dim;
  std::vector<int> nearest(nq, -1);
  for (std::size_t i = 0; i < nq; ++i) {
    const float* q = queries.data() + i * dim;
    float d1 = std::numeric_limits<float>::max();
    float d2 = std::numeric_limits<float>::max();
    for (std::size_t j = 0; j < nt; ++j) {
      const float* t = trains.data() + j * dim;
      float d = 0.0f;
      for (std::size_t k = 0; k < dim; ++k) {
        const float diff = q[k] - t[k];
        d += diff * diff;
      }
      if (d < d1) {
        d2 = d1;
        d1 = d;
        nearest[i] = static_cast<int>(j);
      } else if (d < d2) {
        d2 = d;
      }
    }
  }
  return nearest;
}

BenchResult bench(std::span<const ImagePair> pairs,
                  const PipelineConfig& config, const BenchOptions& options) {
  if (pairs.empty()) throw std::invalid_argument("bench needs image pairs");
  if (options.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  // Per-keypoint figures are only comparable without branch parallelism.
  const ScopedThreadLimit single_thread(1);
  const Pipeline pipeline(config);

  BenchResult result;
  result.repeats = options.repeats;
  const double n = static_cast<double>(pairs.size());
  for (const ImagePair& pair : pairs) {
    time_binary(pipeline, pair, {Branch::kBaseline});
    time_binary(pipeline, pair, {Branch::kOpen, Branch::kClose});
    time_float_l2(pipeline, pair);

    Timed base, mreak, l2;
    for (int r = 0; r < options.repeats; ++r) {
      accumulate(base, time_binary(pipeline, pair, {Branch::kBaseline}));
      accumulate(mreak,
                 time_binary(pipeline, pair, {Branch::kOpen, Branch::kClose}));
      accumulate(l2, time_float_l2(pipeline, pair));
    }
    PairBench pb{pair.name, to_sample(base, options.repeats),
                 to_sample(mreak, options.repeats),
                 to_sample(l2, options.repeats)};
    // The MREAK run describes each image twice (open and close branches).
    pb.mreak.keypoints_per_image /= 2.0;
    add_mean(result.baseline, pb.baseline, n);
    add_mean(result.mreak, pb.mreak, n);
    add_mean(result.float_l2, pb.float_l2, n);
    result.pairs.push_back(std::move(pb));
  }
  return result;
}

}  // namespace mreak
