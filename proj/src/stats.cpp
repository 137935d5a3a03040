#include "streamveil/stats.hpp"

namespace streamveil {

RunningStats stats_update(RunningStats s, double x) {
  if (!std::isfinite(x)) {
    throw ValidationError("stats_update: non-finite observation");
  }
  ++s.n;
  const double delta = x - s.mean;
  s.mean += delta / static_cast<double>(s.n);
  s.ssd += delta * (x - s.mean);
  return s;
}

RunningStats stats_merge(RunningStats a, RunningStats b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  RunningStats out;
  out.n = a.n + b.n;
  const double delta = b.mean - a.mean;
  const double nb_over_n = static_cast<double>(b.n) / static_cast<double>(out.n);
  out.mean = a.mean + delta * nb_over_n;
  out.ssd = a.ssd + b.ssd + delta * delta * static_cast<double>(a.n) * nb_over_n;
  return out;
}

double zscore(double x, const RunningStats& s) {
  if (s.n == 0) {
    throw ValidationError("zscore: normalization attempted before any observation");
  }
  const double sd = s.stddev();
  if (sd == 0.0) return 0.0;
  return (x - s.mean) / sd;
}

StatsTable::StatsTable(const Schema& schema) : stats_(schema.numeric_count()) {
  for (std::size_t slot = 0; slot < schema.numeric_count(); ++slot) {
    slot_by_name_.emplace(schema.numeric_name(slot), slot);
  }
}

void StatsTable::observe(const Instance& inst) {
  if (inst.numeric.size() != stats_.size()) {
    throw ValidationError("stats table: instance " + std::to_string(inst.sequence_id) +
                          " has " + std::to_string(inst.numeric.size()) +
                          " numeric values, table expects " + std::to_string(stats_.size()));
  }
  for (std::size_t slot = 0; slot < stats_.size(); ++slot) {
    stats_[slot] = stats_update(stats_[slot], inst.numeric[slot]);
  }
}

const RunningStats& StatsTable::at(const std::string& attribute_name) const {
  auto it = slot_by_name_.find(attribute_name);
  if (it == slot_by_name_.end()) {
    throw ValidationError("stats table: no entry for attribute '" + attribute_name + "'");
  }
  return stats_[it->second];
}

}  // namespace streamveil
