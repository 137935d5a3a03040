#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "streamveil/error.hpp"

namespace streamveil {

enum class AttributeRole { NumericFeature, NominalFeature, ClassLabel };

struct AttributeDescriptor {
  std::string name;
  AttributeRole role = AttributeRole::NumericFeature;
  bool sensitive = false;  // only meaningful for numeric features

  bool operator==(const AttributeDescriptor&) const = default;
};

/// One tuple of the stream. Values are stored by role: `numeric` holds the
/// numeric-feature values in schema order, `nominal` the nominal-feature
/// tokens in schema order, `label` the class value.
struct Instance {
  std::vector<double> numeric;
  std::vector<std::string> nominal;
  std::string label;
  std::int64_t sequence_id = 0;

  bool operator==(const Instance&) const = default;
};

/// Attribute layout of a stream: exactly one class-label attribute, at least
/// one numeric feature, unique non-empty names. Immutable after construction.
class Schema {
 public:
  Schema(std::vector<AttributeDescriptor> attributes,
         std::vector<std::string> class_domain);

  const std::vector<AttributeDescriptor>& attributes() const { return attributes_; }
  const std::vector<std::string>& class_domain() const { return class_domain_; }

  std::size_t numeric_count() const { return numeric_indices_.size(); }
  std::size_t nominal_count() const { return nominal_indices_.size(); }
  std::size_t class_index() const { return class_index_; }

  /// Schema positions of the numeric-feature attributes, in schema order.
  const std::vector<std::size_t>& numeric_indices() const { return numeric_indices_; }
  const std::vector<std::size_t>& nominal_indices() const { return nominal_indices_; }

  bool has_attribute(const std::string& name) const;
  const AttributeDescriptor& attribute(const std::string& name) const;

  /// Index of `name` within the numeric-feature block. Throws ValidationError
  /// if the attribute is missing or not a numeric feature.
  std::size_t numeric_slot(const std::string& name) const;
  const std::string& numeric_name(std::size_t slot) const;

  bool is_class_token(const std::string& token) const;
  std::size_t class_token_index(const std::string& token) const;

  /// Checks arity, finiteness of numeric values and class-domain membership.
  /// Throws ValidationError naming the instance's sequence id.
  void validate_instance(const Instance& inst) const;

  /// Copy of this schema with the sensitive flag set on exactly the named
  /// attributes. Every name must be a numeric feature.
  Schema with_sensitive(const std::vector<std::string>& names) const;

  bool operator==(const Schema& other) const {
    return attributes_ == other.attributes_ && class_domain_ == other.class_domain_;
  }

 private:
  std::vector<AttributeDescriptor> attributes_;
  std::vector<std::string> class_domain_;
  std::vector<std::size_t> numeric_indices_;
  std::vector<std::size_t> nominal_indices_;
  std::size_t class_index_ = 0;
  std::unordered_map<std::string, std::size_t> index_by_name_;
  std::unordered_map<std::string, std::size_t> numeric_slot_by_name_;
  std::unordered_map<std::string, std::size_t> class_token_index_;
};

}  // namespace streamveil
