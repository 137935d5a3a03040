#include "streamveil/perturb.hpp"

#include <algorithm>

namespace streamveil {

void validate_perturbation_config(const Schema& schema, const PerturbationConfig& cfg) {
  if (cfg.sensitive_attributes.empty()) {
    throw ValidationError("perturbation config: sensitive attribute set is empty");
  }
  for (const auto& name : cfg.sensitive_attributes) {
    schema.numeric_slot(name);  // throws unless a numeric feature
  }
  for (const auto& name : cfg.pre_normalized) {
    schema.numeric_slot(name);
  }
}

double tuple_value(const Instance& inst, const Schema& schema, const StatsTable& stats,
                   const std::vector<std::string>& pre_normalized) {
  const std::size_t n = schema.numeric_count();
  if (n == 0) {
    throw ValidationError("tuple_value: schema has no contributing numeric attributes");
  }
  if (stats.size() != n) {
    throw ValidationError("tuple_value: stats table does not cover the schema");
  }
  double sum = 0.0;
  for (std::size_t slot = 0; slot < n; ++slot) {
    const bool raw = std::find(pre_normalized.begin(), pre_normalized.end(),
                               schema.numeric_name(slot)) != pre_normalized.end();
    sum += raw ? inst.numeric[slot] : zscore(inst.numeric[slot], stats.at_slot(slot));
  }
  return sum / static_cast<double>(n);
}

std::pair<Instance, TupleValueRecord> perturb_instance(const Instance& inst,
                                                       const Schema& schema,
                                                       const StatsTable& stats,
                                                       const PerturbationConfig& cfg) {
  const double tv = tuple_value(inst, schema, stats, cfg.pre_normalized);

  Instance out = inst;
  TupleValueRecord record;
  record.sequence_id = inst.sequence_id;
  record.tuple_value = tv;
  for (const auto& name : cfg.sensitive_attributes) {
    const std::size_t slot = schema.numeric_slot(name);
    record.original_sensitive[name] = inst.numeric[slot];
    out.numeric[slot] = tv * inst.numeric[slot];
    record.perturbed_sensitive[name] = out.numeric[slot];
  }
  return {std::move(out), std::move(record)};
}

PerturbedStream perturb_stream(std::span<const Instance> stream, const Schema& schema,
                               const PerturbationConfig& cfg) {
  if (stream.empty()) {
    throw ValidationError("perturb_stream: stream is empty");
  }
  validate_perturbation_config(schema, cfg);
  for (const Instance& inst : stream) schema.validate_instance(inst);

  StatsTable stats(schema);
  if (cfg.stats_mode == StatsMode::TwoPass) {
    for (const Instance& inst : stream) stats.observe(inst);
  }

  PerturbedStream out;
  out.instances.reserve(stream.size());
  out.records.reserve(stream.size());
  for (const Instance& inst : stream) {
    if (cfg.stats_mode == StatsMode::Incremental) stats.observe(inst);
    auto [perturbed, record] = perturb_instance(inst, schema, stats, cfg);
    out.instances.push_back(std::move(perturbed));
    out.records.push_back(std::move(record));
  }
  return out;
}

}  // namespace streamveil
