#include <algorithm>
#include <charconv>
#include <fstream>

#include "streamveil/ingest.hpp"
#include "parse_common.hpp"

namespace streamveil {

namespace {

using detail::parse_double;
using detail::split_fields;
using detail::trim;

struct RawRow {
  std::vector<std::string> fields;
  std::size_t line_no = 0;
};

std::string quote_if_needed(const std::string& tok) {
  if (tok.find_first_of(",\"' \t") == std::string::npos) return tok;
  std::string out = "\"";
  out += tok;
  out += '"';
  return out;
}

}  // namespace

Dataset load_csv(const DatasetSource& source) {
  std::ifstream in(source.path);
  if (!in) throw IoError("cannot open " + source.path.string());

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    header = split_fields(text, line_no);
    break;
  }
  if (header.empty()) throw ParseError("empty file: no header row", 1);

  std::vector<RawRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    RawRow row{split_fields(text, line_no), line_no};
    if (row.fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " values, got " +
                           std::to_string(row.fields.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < row.fields.size(); ++c) {
      if (row.fields[c].empty() || row.fields[c] == "?") {
        throw ParseError("missing value in column '" + header[c] + "'", line_no);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", line_no == 0 ? 1 : line_no);

  Schema schema = [&] {
    if (source.declared_schema) {
      if (source.declared_schema->attributes().size() != header.size()) {
        throw ParseError("declared schema has " +
                             std::to_string(source.declared_schema->attributes().size()) +
                             " attributes, file has " + std::to_string(header.size()),
                         1);
      }
      return *source.declared_schema;
    }
    // a column is numeric when every row parses as a real; last column is the class
    std::vector<AttributeDescriptor> attrs(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      attrs[c].name = header[c];
      if (c + 1 == header.size()) {
        attrs[c].role = AttributeRole::ClassLabel;
        continue;
      }
      bool numeric = true;
      for (const auto& row : rows) {
        double ignored = 0.0;
        if (!parse_double(row.fields[c], ignored)) {
          numeric = false;
          break;
        }
      }
      attrs[c].role = numeric ? AttributeRole::NumericFeature : AttributeRole::NominalFeature;
    }
    std::vector<std::string> domain;  // class tokens in order of first appearance
    for (const auto& row : rows) {
      const std::string& tok = row.fields.back();
      if (std::find(domain.begin(), domain.end(), tok) == domain.end()) domain.push_back(tok);
    }
    return Schema(std::move(attrs), std::move(domain));
  }();

  const auto layout = detail::column_layout(schema);
  std::vector<Instance> instances;
  instances.reserve(rows.size());
  std::int64_t next_id = 0;
  for (const auto& row : rows) {
    Instance inst;
    inst.sequence_id = next_id++;
    inst.numeric.resize(schema.numeric_count());
    inst.nominal.resize(schema.nominal_count());
    for (std::size_t c = 0; c < row.fields.size(); ++c) {
      const std::string& tok = row.fields[c];
      const auto [role, slot] = layout[c];
      switch (role) {
        case AttributeRole::NumericFeature: {
          double value = 0.0;
          if (!parse_double(tok, value)) {
            throw ParseError("cannot parse '" + tok + "' as a number for column '" +
                                 header[c] + "'",
                             row.line_no);
          }
          inst.numeric[slot] = value;
          break;
        }
        case AttributeRole::NominalFeature:
          inst.nominal[slot] = tok;
          break;
        case AttributeRole::ClassLabel:
          if (!schema.is_class_token(tok)) {
            throw ParseError("class value '" + tok + "' not in the class domain", row.line_no);
          }
          inst.label = tok;
          break;
      }
    }
    instances.push_back(std::move(inst));
  }
  return {std::move(schema), std::move(instances)};
}

Dataset load(const DatasetSource& source) {
  return source.format == DataFormat::Arff ? load_arff(source) : load_csv(source);
}

void write_csv(const Schema& schema, std::span<const Instance> instances,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  const auto& attrs = schema.attributes();
  for (std::size_t c = 0; c < attrs.size(); ++c) {
    if (c) out << ',';
    out << quote_if_needed(attrs[c].name);
  }
  out << '\n';

  const auto layout = detail::column_layout(schema);
  char buf[64];
  for (const Instance& inst : instances) {
    for (std::size_t c = 0; c < attrs.size(); ++c) {
      if (c) out << ',';
      const auto [role, slot] = layout[c];
      switch (role) {
        case AttributeRole::NumericFeature: {
          const auto res = std::to_chars(buf, buf + sizeof buf, inst.numeric[slot]);
          out.write(buf, res.ptr - buf);
          break;
        }
        case AttributeRole::NominalFeature:
          out << quote_if_needed(inst.nominal[slot]);
          break;
        case AttributeRole::ClassLabel:
          out << quote_if_needed(inst.label);
          break;
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace streamveil
