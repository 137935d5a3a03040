#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "streamveil/ingest.hpp"
#include "streamveil/metrics.hpp"
#include "streamveil/perturb.hpp"

namespace streamveil {

struct PipelineConfig {
  DatasetSource source;
  std::vector<std::string> sensitive_attributes;
  int k = 5;
  std::size_t window = 3000;
  std::uint64_t seed = 42;
  StatsMode stats_mode = StatsMode::TwoPass;
  std::optional<std::size_t> limit;  // head-of-stream truncation
  bool cluster_on_zscores = false;
  std::filesystem::path out_dir = "streamveil-out";
};

/// Count-weighted means over windows (weights = window sizes).
struct AggregateMetrics {
  double accuracy_pct = 0.0;
  double misclassification_pct = 0.0;
  double precision_orig = 0.0;
  double recall_orig = 0.0;
  double precision_pert = 0.0;
  double recall_pert = 0.0;

  bool operator==(const AggregateMetrics&) const = default;
};

struct StageTimings {
  double load_seconds = 0.0;
  double stats_seconds = 0.0;
  double process_seconds = 0.0;
  double total_seconds = 0.0;
};

struct RunReport {
  PipelineConfig config;
  std::vector<WindowReport> per_window;
  AggregateMetrics aggregate;
  StageTimings timing;
};

/// Worker cap for per-window fan-out: STREAMVEIL_THREADS when set (must be a
/// positive integer), hardware concurrency otherwise, never more than `jobs`.
unsigned worker_count(std::size_t jobs);

/// Full run: load (applying the limit), perturb, cluster original and
/// perturbed streams over aligned tumbling windows with a shared seed, and
/// evaluate CMM accuracy plus precision/recall per window. Deterministic for
/// a fixed config, including across worker counts.
RunReport run_pipeline(const PipelineConfig& cfg);

/// Same, over an already-loaded stream (cfg.source is echoed, not read).
RunReport run_pipeline(const PipelineConfig& cfg, const Schema& schema,
                       std::span<const Instance> stream);

/// Writes report.json, windows.csv and summary.txt into dir.
void emit_report(const RunReport& report, const std::filesystem::path& dir);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
std::string windows_csv(const RunReport& report);
std::string summary_text(const RunReport& report);

}  // namespace streamveil
