// Command-line front end for the MREAK toolkit.
//
// Exit codes: 0 success, 1 usage error (bad flags or values), 2 I/O or file
// format error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mreak/bench.h"
#include "mreak/descriptor.h"
#include "mreak/detector.h"
#include "mreak/draw.h"
#include "mreak/io.h"
#include "mreak/matcher.h"
#include "mreak/morphology.h"
#include "mreak/pair_training.h"
#include "mreak/pipeline.h"
#include "mreak/raster.h"
#include "mreak/report.h"
#include "mreak/retina.h"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kIoError = 2;

// Flags shared by every subcommand that builds a pipeline.
struct ConfigFlags {
  int kernel = 3;
  int max_kp = 2000;
  double kappa = 0.4;
  double ratio = 0.75;
  double dedup = 2.0;
  int bits = mreak::kDefaultDescriptorBits;
  bool cross_check = false;
  std::string pairs = "default";

  void add_detector(CLI::App* app) {
    app->add_option("--max-kp", max_kp, "Maximum keypoints per image")
        ->check(CLI::PositiveNumber);
  }
  void add_description(CLI::App* app) {
    add_detector(app);
    app->add_option("--kernel", kernel, "Structuring element side (odd)")
        ->check(CLI::PositiveNumber);
    app->add_option("--kappa", kappa, "Radial modulation strength in (0,1)")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--pairs", pairs, "Pair file (MRP1) or 'default'");
    app->add_option("--bits", bits, "Descriptor length for default pairs")
        ->check(CLI::Range(1, mreak::kAllPairCount));
  }
  void add_matching(CLI::App* app) {
    app->add_option("--ratio", ratio, "Lowe ratio threshold in (0,1]")
        ->check(CLI::Range(0.0, 1.0));
    app->add_flag("--cross-check", cross_check, "Keep mutual matches only");
  }
  void add_pipeline(CLI::App* app) {
    add_description(app);
    add_matching(app);
    app->add_option("--dedup", dedup, "Merge dedup radius in pixels")
        ->check(CLI::NonNegativeNumber);
  }

  mreak::PipelineConfig config() const {
    mreak::PipelineConfig cfg;
    cfg.se = mreak::StructuringElement::square(kernel);
    cfg.detector.max_keypoints = max_kp;
    cfg.open_pattern.kappa = kappa;
    cfg.close_pattern.kappa = kappa;
    cfg.base_pattern.kappa = kappa;
    cfg.matching.ratio_threshold = ratio;
    cfg.matching.cross_check = cross_check;
    cfg.dedup_radius = dedup;
    cfg.descriptor_bits = bits;
    if (pairs != "default") {
      cfg.pairs = mreak::decode_pairs(mreak::read_file(pairs));
    }
    return cfg;
  }
};

std::string read_text(const std::string& path) {
  const auto bytes = mreak::read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_text(const std::string& path, const std::string& text) {
  mreak::write_file(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()),
                              text.size()));
}

mreak::Branch variant_branch(const std::string& variant) {
  return mreak::branch_for(mreak::parse_variant(variant));
}

bool is_pnm(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::vector<mreak::ImagePair> read_pair_list(const std::string& list_path) {
  const fs::path base = fs::path(list_path).parent_path();
  std::istringstream in(read_text(list_path));
  std::vector<mreak::ImagePair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    if (a.front() == '#') continue;
    if (!(fields >> b)) {
      throw mreak::FormatError("pair list line needs two paths: " + line);
    }
    auto resolve = [&](const std::string& p) {
      return fs::path(p).is_absolute() ? fs::path(p) : base / p;
    };
    pairs.push_back({a + " " + b, mreak::read_pnm_file(resolve(a).string()),
                     mreak::read_pnm_file(resolve(b).string())});
  }
  return pairs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MREAK binary keypoint descriptor toolkit"};
  app.require_subcommand(1);

  // morph
  auto* morph = app.add_subcommand("morph", "Opening or closing of an image");
  std::string morph_op, morph_in, morph_out;
  int morph_kernel = 3;
  morph->add_option("--op", morph_op, "open|close")
      ->required()
      ->check(CLI::IsMember({"open", "close"}));
  morph->add_option("--kernel", morph_kernel, "Structuring element side")
      ->check(CLI::PositiveNumber);
  morph->add_option("input", morph_in)->required();
  morph->add_option("output", morph_out)->required();

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Harris keypoints as TSV");
  ConfigFlags detect_flags;
  detect_flags.add_detector(detect_cmd);
  int detect_margin = -1;
  std::string detect_in;
  detect_cmd->add_option("--margin", detect_margin,
                         "Border margin (default: pattern margin)")
      ->check(CLI::NonNegativeNumber);
  detect_cmd->add_option("input", detect_in)->required();

  // describe
  auto* describe_cmd =
      app.add_subcommand("describe", "Detect and describe keypoints (MRK1)");
  ConfigFlags describe_flags;
  describe_flags.add_description(describe_cmd);
  std::string describe_variant = "base", describe_in, describe_out;
  bool describe_no_morph = false;
  describe_cmd->add_option("--variant", describe_variant, "base|open|close")
      ->check(CLI::IsMember({"base", "open", "close"}));
  describe_cmd->add_flag("--no-morph", describe_no_morph,
                         "Skip the variant's morphology step");
  describe_cmd->add_option("input", describe_in)->required();
  describe_cmd->add_option("output", describe_out)->required();

  // match
  auto* match_cmd = app.add_subcommand("match", "Match two MRK1 dumps");
  ConfigFlags match_flags;
  match_flags.add_matching(match_cmd);
  bool match_all = false;
  std::string match_a, match_b;
  match_cmd->add_flag("--all", match_all, "Emit every match, not only best");
  match_cmd->add_option("a", match_a)->required();
  match_cmd->add_option("b", match_b)->required();

  // pipeline
  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "Full MREAK and baseline run");
  ConfigFlags pipeline_flags;
  pipeline_flags.add_pipeline(pipeline_cmd);
  std::string pipeline_a, pipeline_b, pipeline_out, pipeline_render;
  pipeline_cmd->add_option("--out", pipeline_out, "JSON report path");
  pipeline_cmd->add_option("--render", pipeline_render,
                           "Merged matches drawn on the originals (PPM)");
  pipeline_cmd->add_option("a", pipeline_a)->required();
  pipeline_cmd->add_option("b", pipeline_b)->required();

  // train-pairs
  auto* train_cmd =
      app.add_subcommand("train-pairs", "Select descriptor pairs from images");
  ConfigFlags train_flags;
  train_flags.add_detector(train_cmd);
  std::string train_corpus, train_out, train_variant = "base";
  int train_n = mreak::kDefaultDescriptorBits;
  int train_kernel = 3;
  double train_kappa = 0.4;
  train_cmd->add_option("--corpus", train_corpus, "Directory of PGM/PPM")
      ->required();
  train_cmd->add_option("--n", train_n, "Pairs to select")
      ->check(CLI::Range(1, mreak::kAllPairCount));
  train_cmd->add_option("--variant", train_variant, "base|open|close")
      ->check(CLI::IsMember({"base", "open", "close"}));
  train_cmd->add_option("--kernel", train_kernel)->check(CLI::PositiveNumber);
  train_cmd->add_option("--kappa", train_kappa)->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("output", train_out)->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Per-keypoint timing table");
  ConfigFlags bench_flags;
  bench_flags.add_pipeline(bench_cmd);
  std::string bench_list, bench_out;
  int bench_repeats = 1;
  bench_cmd->remove_option(bench_cmd->get_option("--pairs"));
  bench_cmd->add_option("--pairs", bench_list,
                        "Text file, one 'a b' image pair per line")
      ->required();
  bench_cmd->add_option("--descriptor-pairs", bench_flags.pairs,
                        "Pair file (MRP1) or 'default'");
  bench_cmd->add_option("--out", bench_out, "JSON output path");
  bench_cmd->add_option("--repeats", bench_repeats)
      ->check(CLI::PositiveNumber);

  // render
  auto* render_cmd = app.add_subcommand("render", "Draw a match list");
  std::string render_a, render_b, render_tsv, render_out;
  render_cmd->add_option("a", render_a)->required();
  render_cmd->add_option("b", render_b)->required();
  render_cmd->add_option("matches", render_tsv)->required();
  render_cmd->add_option("output", render_out)->required();

  // pattern
  auto* pattern_cmd =
      app.add_subcommand("pattern", "Print sampling pattern geometry");
  std::string pattern_variant = "base";
  double pattern_kappa = 0.4;
  pattern_cmd->add_option("--variant", pattern_variant, "base|open|close")
      ->check(CLI::IsMember({"base", "open", "close"}));
  pattern_cmd->add_option("--kappa", pattern_kappa)
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*morph) {
      const auto se = mreak::StructuringElement::square(morph_kernel);
      const mreak::Image img = mreak::read_pnm_file(morph_in);
      mreak::write_pnm_file(morph_out, morph_op == "open"
                                           ? mreak::open(img, se)
                                           : mreak::close(img, se));
    } else if (*detect_cmd) {
      const mreak::PipelineConfig cfg = detect_flags.config();
      const mreak::Image gray =
          mreak::to_gray(mreak::read_pnm_file(detect_in));
      const int margin =
          detect_margin >= 0
              ? detect_margin
              : mreak::SamplingPattern(mreak::PatternVariant::kBase,
                                       cfg.base_pattern)
                    .margin();
      char line[128];
      for (const auto& kp : mreak::detect(gray, cfg.detector, margin)) {
        std::snprintf(line, sizeof(line), "%.0f\t%.0f\t%.6g\n", kp.x, kp.y,
                      kp.response);
        std::cout << line;
      }
    } else if (*describe_cmd) {
      const mreak::Pipeline pipeline(describe_flags.config());
      const mreak::Branch branch = variant_branch(describe_variant);
      const mreak::Image img = mreak::read_pnm_file(describe_in);
      mreak::Features f = pipeline.extract(img, branch, !describe_no_morph);
      mreak::DescriptorFile file{
          branch, static_cast<std::uint32_t>(pipeline.pairs(branch).size()),
          std::move(f.descriptors)};
      mreak::write_file(describe_out, mreak::encode_descriptors(file));
    } else if (*match_cmd) {
      const auto fa = mreak::decode_descriptors(mreak::read_file(match_a));
      const auto fb = mreak::decode_descriptors(mreak::read_file(match_b));
      if (fa.bit_count != fb.bit_count) {
        throw mreak::FormatError("descriptor files have different lengths");
      }
      mreak::MatchSet set;
      if (!fa.descriptors.empty() && !fb.descriptors.empty()) {
        const mreak::PipelineConfig cfg = match_flags.config();
        set = mreak::match(fa.descriptors, fb.descriptors, cfg.matching);
      }
      std::cout << mreak::matches_to_tsv(match_all ? set.all : set.best);
    } else if (*pipeline_cmd) {
      const mreak::Pipeline pipeline(pipeline_flags.config());
      const mreak::Image a = mreak::read_pnm_file(pipeline_a);
      const mreak::Image b = mreak::read_pnm_file(pipeline_b);
      const mreak::MatchReport report = pipeline.run_all(a, b);
      const std::string json = mreak::to_json(report).dump(2) + "\n";
      if (pipeline_out.empty()) {
        std::cout << json;
      } else {
        write_text(pipeline_out, json);
      }
      if (!pipeline_render.empty()) {
        mreak::write_pnm_file(pipeline_render,
                              mreak::draw_matches(a, b, report.merged->best));
      }
    } else if (*train_cmd) {
      mreak::PatternParams params;
      params.kappa = train_kappa;
      const auto variant = mreak::parse_variant(train_variant);
      const mreak::SamplingPattern pattern(variant, params);
      const auto opairs = mreak::make_orientation_pairs(pattern);
      const auto se = mreak::StructuringElement::square(train_kernel);
      const mreak::PipelineConfig cfg = train_flags.config();

      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(train_corpus)) {
        if (entry.is_regular_file() && is_pnm(entry.path())) {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      mreak::PairTrainingMatrix matrix;
      for (const fs::path& path : files) {
        const mreak::Image gray = mreak::preprocess(
            mreak::read_pnm_file(path.string()), mreak::branch_for(variant),
            se);
        if (gray.width() <= 2 * pattern.margin() ||
            gray.height() <= 2 * pattern.margin()) {
          continue;
        }
        const mreak::IntegralImage ii(gray);
        for (const auto& kp :
             mreak::detect(gray, cfg.detector, pattern.margin())) {
          matrix.add_row(mreak::describe_all_pairs(ii, kp, pattern, opairs));
        }
      }
      const auto result = mreak::train_pairs(matrix, train_n);
      mreak::write_file(train_out, mreak::encode_pairs(result.pairs));
      std::cerr << "trained " << result.pairs.size() << " pairs from "
                << matrix.rows() << " keypoints, final threshold "
                << result.final_threshold << "\n";
    } else if (*bench_cmd) {
      const auto pairs = read_pair_list(bench_list);
      mreak::BenchOptions options;
      options.repeats = bench_repeats;
      const auto result = mreak::bench(pairs, bench_flags.config(), options);
      const std::string json = mreak::to_json(result).dump(2) + "\n";
      if (!bench_out.empty()) write_text(bench_out, json);
      char line[160];
      std::printf("%-10s %14s %14s %10s\n", "method", "describe(ms)",
                  "match(ms)", "kp/image");
      const std::pair<const char*, const mreak::MethodSample*> rows[] = {
          {"baseline", &result.baseline},
          {"mreak", &result.mreak},
          {"float-l2", &result.float_l2}};
      for (const auto& [name, s] : rows) {
        std::snprintf(line, sizeof(line), "%-10s %14.4f %14.4f %10.1f\n", name,
                      s->description_ms_per_keypoint,
                      s->matching_ms_per_keypoint, s->keypoints_per_image);
        std::cout << line;
      }
    } else if (*render_cmd) {
      const mreak::Image a = mreak::read_pnm_file(render_a);
      const mreak::Image b = mreak::read_pnm_file(render_b);
      const auto matches = mreak::matches_from_tsv(read_text(render_tsv));
      mreak::write_pnm_file(render_out, mreak::draw_matches(a, b, matches));
    } else if (*pattern_cmd) {
      mreak::PatternParams params;
      params.kappa = pattern_kappa;
      std::cout << mreak::pattern_table(mreak::SamplingPattern(
          mreak::parse_variant(pattern_variant), params));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return 0;
}
