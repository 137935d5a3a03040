#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streamveil/stats.hpp"

namespace streamveil {

/// Whether attribute statistics are frozen over the whole stream before any
/// instance is perturbed (TwoPass) or folded in as each instance arrives,
/// just before that instance is perturbed (Incremental).
enum class StatsMode { TwoPass, Incremental };

struct PerturbationConfig {
  std::vector<std::string> sensitive_attributes;  // non-empty, numeric features
  StatsMode stats_mode = StatsMode::TwoPass;
  std::vector<std::string> pre_normalized;  // attributes used raw, not z-scored
};

/// Audit record of one instance's transformation. The perturbed value of every
/// sensitive attribute equals tuple_value times its original value, exactly.
struct TupleValueRecord {
  std::int64_t sequence_id = 0;
  double tuple_value = 0.0;
  std::map<std::string, double> original_sensitive;
  std::map<std::string, double> perturbed_sensitive;
};

/// Throws ValidationError unless every sensitive attribute is a numeric
/// feature of the schema and pre_normalized names only numeric features.
void validate_perturbation_config(const Schema& schema, const PerturbationConfig& cfg);

/// The instance's multiplicative noise factor: the arithmetic mean of the
/// z-scored numeric feature values. Pre-normalized attributes contribute
/// their raw value; nominal features and the class label never contribute.
double tuple_value(const Instance& inst, const Schema& schema, const StatsTable& stats,
                   const std::vector<std::string>& pre_normalized = {});

/// Multiplies each sensitive attribute value by the instance's tuple value.
/// Everything else, the class label included, is copied through untouched.
std::pair<Instance, TupleValueRecord> perturb_instance(const Instance& inst,
                                                       const Schema& schema,
                                                       const StatsTable& stats,
                                                       const PerturbationConfig& cfg);

struct PerturbedStream {
  std::vector<Instance> instances;
  std::vector<TupleValueRecord> records;
};

/// Perturbs a whole stream. TwoPass builds the statistics table over the full
/// stream first and perturbs against the frozen table; Incremental folds each
/// instance into the table before perturbing it. Output preserves order and
/// length. Throws ValidationError for an empty stream or an instance that
/// violates the schema (the message names its sequence id).
PerturbedStream perturb_stream(std::span<const Instance> stream, const Schema& schema,
                               const PerturbationConfig& cfg);

}  // namespace streamveil
