#include "mreak/report.h"

#include <cmath>
#include <string>

namespace mreak {

namespace {

double ms4(double v) { return std::round(v * 1e4) / 1e4; }

nlohmann::json matches_json(const std::vector<Match>& matches) {
  nlohmann::json out = nlohmann::json::array();
  for (const Match& m : matches) out.push_back(to_json(m));
  return out;
}

nlohmann::json timing_json(const StageTiming& t) {
  return {{"total_ms", ms4(t.total_ms)},
          {"keypoints", t.keypoints},
          {"per_keypoint_ms", ms4(t.per_keypoint_ms())}};
}

nlohmann::json branch_json(const BranchReport& r) {
  return {{"keypoints_a", r.keypoints_a},
          {"keypoints_b", r.keypoints_b},
          {"total_matches", r.matches.total()},
          {"best_matches", r.matches.best_count()},
          {"description", timing_json(r.description)},
          {"matching", timing_json(r.matching)},
          {"best", matches_json(r.matches.best)}};
}

nlohmann::json method_json(const MethodTiming& t) {
  return {{"description", timing_json(t.description)},
          {"matching", timing_json(t.matching)}};
}

nlohmann::json sample_json(const MethodSample& s) {
  return {{"description_ms_per_keypoint", ms4(s.description_ms_per_keypoint)},
          {"matching_ms_per_keypoint", ms4(s.matching_ms_per_keypoint)},
          {"keypoints_per_image", s.keypoints_per_image}};
}

}  // namespace

nlohmann::json to_json(const Match& m) {
  return {{"branch", std::string(branch_name(m.branch))},
          {"query", m.query_index},
          {"train", m.train_index},
          {"x_a", m.x_a},
          {"y_a", m.y_a},
          {"x_b", m.x_b},
          {"y_b", m.y_b},
          {"distance", m.distance},
          {"ratio", m.ratio}};
}

nlohmann::json to_json(const MatchReport& report) {
  nlohmann::json branches = nlohmann::json::object();
  if (report.open) branches["open"] = branch_json(*report.open);
  if (report.close) branches["close"] = branch_json(*report.close);
  if (report.baseline) branches["baseline"] = branch_json(*report.baseline);

  nlohmann::json out = {{"branches", branches}};
  if (report.merged) {
    out["merged"] = {{"count", report.merged->best_count()},
                     {"matches", matches_json(report.merged->best)}};
  }
  nlohmann::json timing = nlohmann::json::object();
  if (report.mreak_timing) timing["mreak"] = method_json(*report.mreak_timing);
  if (report.baseline_timing) {
    timing["baseline"] = method_json(*report.baseline_timing);
  }
  out["timing"] = timing;
  return out;
}

nlohmann::json to_json(const BenchResult& result) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairBench& p : result.pairs) {
    pairs.push_back({{"name", p.name},
                     {"baseline", sample_json(p.baseline)},
                     {"mreak", sample_json(p.mreak)},
                     {"float_l2", sample_json(p.float_l2)}});
  }
  return {{"repeats", result.repeats},
          {"pairs", pairs},
          {"mean",
           {{"baseline", sample_json(result.baseline)},
            {"mreak", sample_json(result.mreak)},
            {"float_l2", sample_json(result.float_l2)}}}};
}

}  // namespace mreak
