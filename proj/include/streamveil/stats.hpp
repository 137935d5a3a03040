#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamveil/schema.hpp"

namespace streamveil {

/// Online per-attribute accumulator: count, running mean and sum of squared
/// deviations from the mean (Welford form). Values are immutable snapshots;
/// updates return new values.
struct RunningStats {
  std::int64_t n = 0;
  double mean = 0.0;
  double ssd = 0.0;

  double variance() const { return n >= 2 ? ssd / static_cast<double>(n - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }

  bool operator==(const RunningStats&) const = default;
};

/// Folds one observation into `s`. Throws ValidationError for non-finite x.
RunningStats stats_update(RunningStats s, double x);

/// Combines two accumulators as if their observation sets were concatenated.
RunningStats stats_merge(RunningStats a, RunningStats b);

/// (x - mean) / stddev. Returns 0.0 when the attribute is constant (stddev 0
/// or fewer than two observations). Throws ValidationError when n == 0.
double zscore(double x, const RunningStats& s);

/// Per-attribute statistics for every numeric feature of a schema.
/// Single writer (observe), any number of readers on frozen copies.
class StatsTable {
 public:
  explicit StatsTable(const Schema& schema);

  /// Folds every numeric value of the instance into its attribute's stats.
  void observe(const Instance& inst);

  const RunningStats& at_slot(std::size_t slot) const { return stats_.at(slot); }
  const RunningStats& at(const std::string& attribute_name) const;
  std::size_t size() const { return stats_.size(); }

 private:
  std::vector<RunningStats> stats_;  // aligned with schema numeric slots
  std::unordered_map<std::string, std::size_t> slot_by_name_;
};

}  // namespace streamveil
