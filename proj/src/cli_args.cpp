#include "streamveil/cli_args.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <cctype>
#include <sstream>

#include "CLI11.hpp"

namespace streamveil {

namespace {

DataFormat infer_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".arff") return DataFormat::Arff;
  if (ext == ".csv") return DataFormat::Csv;
  throw UsageError("cannot infer --format from '" + path.string() +
                       "'; pass --format arff|csv\n",
                   1);
}

}  // namespace

PipelineConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"tuple-value perturbation and windowed clustering over data streams"};
  app.name("streamveil");

  std::string input;
  std::string format;
  std::vector<std::string> sensitive;
  int k = 5;
  std::size_t window = 3000;
  std::uint64_t seed = 42;
  std::string stats_mode = "two-pass";
  std::size_t limit = 0;
  bool cluster_on_zscores = false;
  std::string out_dir = "streamveil-out";

  app.add_option("--input", input, "input dataset path")->required();
  app.add_option("--format", format, "input format (inferred from extension when omitted)")
      ->check(CLI::IsMember({"arff", "csv"}));
  app.add_option("--sensitive", sensitive,
                 "comma-separated numeric attributes to perturb")
      ->required()
      ->delimiter(',');
  const auto positive_int = CLI::Range(std::int64_t{1},
                                       std::numeric_limits<std::int64_t>::max());
  app.add_option("--k", k, "clusters per window")->check(positive_int);
  app.add_option("--window", window, "tumbling window size")->check(positive_int);
  app.add_option("--seed", seed, "RNG seed shared by both streams");
  app.add_option("--stats-mode", stats_mode, "z-score statistics mode")
      ->check(CLI::IsMember({"two-pass", "incremental"}));
  app.add_option("--limit", limit, "process only the first N instances")
      ->check(positive_int);
  app.add_flag("--cluster-on-zscores", cluster_on_zscores,
               "standardize feature columns per window before clustering");
  app.add_option("--out", out_dir, "output directory for the report files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    const int code = app.exit(e, out, out);
    throw UsageError(out.str(), code);
  }

  PipelineConfig cfg;
  cfg.source.path = input;
  if (format.empty())
    cfg.source.format = infer_format(cfg.source.path);
  else
    cfg.source.format = format == "arff" ? DataFormat::Arff : DataFormat::Csv;
  cfg.sensitive_attributes = sensitive;
  cfg.k = k;
  cfg.window = window;
  cfg.seed = seed;
  cfg.stats_mode =
      stats_mode == "two-pass" ? StatsMode::TwoPass : StatsMode::Incremental;
  if (limit > 0) cfg.limit = limit;
  cfg.cluster_on_zscores = cluster_on_zscores;
  cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace streamveil
