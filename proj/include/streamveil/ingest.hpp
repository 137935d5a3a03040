#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "streamveil/schema.hpp"

namespace streamveil {

enum class DataFormat { Arff, Csv };

struct DatasetSource {
  std::filesystem::path path;
  DataFormat format = DataFormat::Csv;
  std::optional<Schema> declared_schema;  // overrides derived roles/domain
};

struct Dataset {
  Schema schema;
  std::vector<Instance> instances;
};

/// Dense (non-sparse) ARFF subset: @relation / @attribute / @data sections,
/// numeric and nominal attribute kinds only. The last nominal attribute
/// becomes the class label unless a declared schema overrides. Missing
/// values ("?"), sparse rows, and string/date attributes are rejected.
/// Failures raise ParseError with the offending line number.
Dataset load_arff(const DatasetSource& source);

/// CSV with a mandatory header row, comma delimiter, "." decimal separator,
/// optional CRLF. Column types are inferred (a column is numeric when every
/// row parses as a real) unless a declared schema overrides; the last column
/// is the class label by default.
Dataset load_csv(const DatasetSource& source);

/// Dispatches on source.format.
Dataset load(const DatasetSource& source);

/// Canonical CSV serialization: header of attribute names, then one row per
/// instance. Numerics are written shortest-round-trip so a reload recovers
/// the exact values.
void write_csv(const Schema& schema, std::span<const Instance> instances,
               const std::filesystem::path& path);

}  // namespace streamveil
