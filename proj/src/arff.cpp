#include <algorithm>
#include <cctype>
#include <fstream>

#include "streamveil/ingest.hpp"
#include "parse_common.hpp"

namespace streamveil {

namespace {

using detail::lower;
using detail::parse_double;
using detail::split_fields;
using detail::trim;

struct ArffColumn {
  std::string name;
  bool numeric = false;
  std::vector<std::string> domain;  // nominal columns only
};

// "@attribute <name> <type>" where name may be quoted and type is either a
// numeric keyword or a {v1,v2,...} domain.
ArffColumn parse_attribute_line(const std::string& rest, std::size_t line_no) {
  ArffColumn col;
  std::size_t pos = 0;
  while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
  if (pos >= rest.size()) throw ParseError("@attribute without a name", line_no);

  if (rest[pos] == '\'' || rest[pos] == '"') {
    const char quote = rest[pos];
    const auto close = rest.find(quote, pos + 1);
    if (close == std::string::npos) throw ParseError("unterminated attribute name", line_no);
    col.name = rest.substr(pos + 1, close - pos - 1);
    pos = close + 1;
  } else {
    const auto end = rest.find_first_of(" \t", pos);
    if (end == std::string::npos) throw ParseError("@attribute without a type", line_no);
    col.name = rest.substr(pos, end - pos);
    pos = end;
  }
  const std::string type = trim(rest.substr(pos));
  if (type.empty()) throw ParseError("@attribute without a type", line_no);

  if (type.front() == '{') {
    if (type.back() != '}') throw ParseError("unterminated nominal domain", line_no);
    col.domain = split_fields(type.substr(1, type.size() - 2), line_no);
    for (auto& v : col.domain) {
      if (v.empty()) throw ParseError("empty value in nominal domain", line_no);
    }
    if (col.domain.empty()) throw ParseError("empty nominal domain", line_no);
    return col;
  }
  const std::string kind = lower(type);
  if (kind == "numeric" || kind == "real" || kind == "integer") {
    col.numeric = true;
    return col;
  }
  if (kind == "string" || kind.rfind("date", 0) == 0 || kind == "relational") {
    throw ParseError("unsupported attribute type '" + type + "'", line_no);
  }
  throw ParseError("unknown attribute type '" + type + "'", line_no);
}

Schema derive_schema(const std::vector<ArffColumn>& columns, std::size_t data_line) {
  std::size_t class_column = columns.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (!columns[c].numeric) class_column = c;  // last nominal wins
  }
  if (class_column == columns.size()) {
    throw ParseError("no nominal attribute available as class label", data_line);
  }
  std::vector<AttributeDescriptor> attrs;
  attrs.reserve(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    AttributeRole role = columns[c].numeric ? AttributeRole::NumericFeature
                                            : AttributeRole::NominalFeature;
    if (c == class_column) role = AttributeRole::ClassLabel;
    attrs.push_back({columns[c].name, role, false});
  }
  return Schema(std::move(attrs), columns[class_column].domain);
}

}  // namespace

Dataset load_arff(const DatasetSource& source) {
  std::ifstream in(source.path);
  if (!in) throw IoError("cannot open " + source.path.string());

  std::vector<ArffColumn> columns;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  bool saw_relation = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '%') continue;
    if (text.front() != '@') {
      throw ParseError("expected a header directive before @data", line_no);
    }
    const auto space = text.find_first_of(" \t");
    const std::string directive = lower(space == std::string::npos ? text : text.substr(0, space));
    const std::string rest = space == std::string::npos ? "" : text.substr(space + 1);
    if (directive == "@relation") {
      saw_relation = true;
    } else if (directive == "@attribute") {
      columns.push_back(parse_attribute_line(rest, line_no));
    } else if (directive == "@data") {
      saw_data = true;
      break;
    } else {
      throw ParseError("unknown directive '" + directive + "'", line_no);
    }
  }
  if (!saw_relation) throw ParseError("missing @relation", line_no);
  if (!saw_data) throw ParseError("missing @data section", line_no);
  if (columns.empty()) throw ParseError("no @attribute declarations", line_no);

  Schema schema = [&] {
    if (source.declared_schema) {
      if (source.declared_schema->attributes().size() != columns.size()) {
        throw ParseError("declared schema has " +
                             std::to_string(source.declared_schema->attributes().size()) +
                             " attributes, file has " + std::to_string(columns.size()),
                         line_no);
      }
      return *source.declared_schema;
    }
    return derive_schema(columns, line_no);
  }();

  const auto layout = detail::column_layout(schema);
  std::vector<Instance> instances;
  std::int64_t next_id = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '%') continue;
    if (text.front() == '{') {
      throw ParseError("sparse ARFF rows are not supported", line_no);
    }
    const auto fields = split_fields(text, line_no);
    if (fields.size() != columns.size()) {
      throw ParseError("expected " + std::to_string(columns.size()) + " values, got " +
                           std::to_string(fields.size()),
                       line_no);
    }

    Instance inst;
    inst.sequence_id = next_id++;
    inst.numeric.resize(schema.numeric_count());
    inst.nominal.resize(schema.nominal_count());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& tok = fields[c];
      if (tok == "?") throw ParseError("missing value in attribute '" + columns[c].name + "'", line_no);
      const auto [role, slot] = layout[c];
      if (role == AttributeRole::NumericFeature) {
        double value = 0.0;
        if (!parse_double(tok, value)) {
          throw ParseError("cannot parse '" + tok + "' as a number for attribute '" +
                               columns[c].name + "'",
                           line_no);
        }
        inst.numeric[slot] = value;
      } else {
        // honor the file-declared domain when the column was nominal in the file
        if (!columns[c].numeric && !columns[c].domain.empty()) {
          const auto& dom = columns[c].domain;
          if (std::find(dom.begin(), dom.end(), tok) == dom.end()) {
            throw ParseError("value '" + tok + "' outside the domain of attribute '" +
                                 columns[c].name + "'",
                             line_no);
          }
        }
        if (role == AttributeRole::ClassLabel) {
          if (!schema.is_class_token(tok)) {
            throw ParseError("class value '" + tok + "' not in the class domain", line_no);
          }
          inst.label = tok;
        } else {
          inst.nominal[slot] = tok;
        }
      }
    }
    instances.push_back(std::move(inst));
  }
  return {std::move(schema), std::move(instances)};
}

}  // namespace streamveil
