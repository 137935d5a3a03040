#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "streamveil/error.hpp"
#include "streamveil/schema.hpp"

namespace streamveil::detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

/// Splits one delimited line into fields. Single or double quotes protect
/// embedded commas and are stripped; unquoted fields are trimmed.
inline std::vector<std::string> split_fields(const std::string& line, std::size_t line_no) {
  std::vector<std::string> raw;
  std::string cur;
  char quote = 0;
  for (char ch : line) {
    if (quote != 0) {
      cur += ch;
      if (ch == quote) quote = 0;
    } else if (ch == '\'' || ch == '"') {
      cur += ch;
      quote = ch;
    } else if (ch == ',') {
      raw.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quote != 0) throw ParseError("unterminated quote", line_no);
  raw.push_back(std::move(cur));

  for (auto& f : raw) {
    f = trim(f);
    if (f.size() >= 2 && (f.front() == '\'' || f.front() == '"') && f.back() == f.front()) {
      f = f.substr(1, f.size() - 2);
    }
  }
  return raw;
}

/// Strict full-token parse of a real number. Rejects partial parses and
/// non-finite results.
inline bool parse_double(std::string_view tok, double& out) {
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

/// Per-column (role, slot-within-role) layout of a schema, by column position.
inline std::vector<std::pair<AttributeRole, std::size_t>> column_layout(const Schema& schema) {
  std::vector<std::pair<AttributeRole, std::size_t>> layout(
      schema.attributes().size(), {AttributeRole::ClassLabel, 0});
  for (std::size_t slot = 0; slot < schema.numeric_indices().size(); ++slot) {
    layout[schema.numeric_indices()[slot]] = {AttributeRole::NumericFeature, slot};
  }
  for (std::size_t slot = 0; slot < schema.nominal_indices().size(); ++slot) {
    layout[schema.nominal_indices()[slot]] = {AttributeRole::NominalFeature, slot};
  }
  return layout;
}

}  // namespace streamveil::detail
