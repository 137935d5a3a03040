#include "streamveil/schema.hpp"

#include <cmath>
#include <utility>

namespace streamveil {

Schema::Schema(std::vector<AttributeDescriptor> attributes,
               std::vector<std::string> class_domain)
    : attributes_(std::move(attributes)), class_domain_(std::move(class_domain)) {
  std::size_t class_count = 0;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const auto& attr = attributes_[i];
    if (attr.name.empty()) {
      throw ValidationError("schema: attribute " + std::to_string(i) + " has an empty name");
    }
    if (!index_by_name_.emplace(attr.name, i).second) {
      throw ValidationError("schema: duplicate attribute name '" + attr.name + "'");
    }
    switch (attr.role) {
      case AttributeRole::NumericFeature:
        numeric_slot_by_name_.emplace(attr.name, numeric_indices_.size());
        numeric_indices_.push_back(i);
        break;
      case AttributeRole::NominalFeature:
        nominal_indices_.push_back(i);
        break;
      case AttributeRole::ClassLabel:
        class_index_ = i;
        ++class_count;
        break;
    }
    if (attr.sensitive && attr.role != AttributeRole::NumericFeature) {
      throw ValidationError("schema: attribute '" + attr.name +
                            "' marked sensitive but is not a numeric feature");
    }
  }
  if (class_count != 1) {
    throw ValidationError("schema: expected exactly one class-label attribute, found " +
                          std::to_string(class_count));
  }
  if (numeric_indices_.empty()) {
    throw ValidationError("schema: at least one numeric-feature attribute is required");
  }
  for (std::size_t j = 0; j < class_domain_.size(); ++j) {
    if (!class_token_index_.emplace(class_domain_[j], j).second) {
      throw ValidationError("schema: duplicate class token '" + class_domain_[j] + "'");
    }
  }
  if (class_domain_.empty()) {
    throw ValidationError("schema: class domain must not be empty");
  }
}

bool Schema::has_attribute(const std::string& name) const {
  return index_by_name_.count(name) != 0;
}

const AttributeDescriptor& Schema::attribute(const std::string& name) const {
  auto it = index_by_name_.find(name);
  if (it == index_by_name_.end()) {
    throw ValidationError("schema: unknown attribute '" + name + "'");
  }
  return attributes_[it->second];
}

std::size_t Schema::numeric_slot(const std::string& name) const {
  auto it = numeric_slot_by_name_.find(name);
  if (it == numeric_slot_by_name_.end()) {
    throw ValidationError("schema: '" + name + "' is not a numeric-feature attribute");
  }
  return it->second;
}

const std::string& Schema::numeric_name(std::size_t slot) const {
  return attributes_[numeric_indices_.at(slot)].name;
}

bool Schema::is_class_token(const std::string& token) const {
  return class_token_index_.count(token) != 0;
}

std::size_t Schema::class_token_index(const std::string& token) const {
  auto it = class_token_index_.find(token);
  if (it == class_token_index_.end()) {
    throw ValidationError("schema: '" + token + "' is not in the class domain");
  }
  return it->second;
}

void Schema::validate_instance(const Instance& inst) const {
  const std::string where = "instance " + std::to_string(inst.sequence_id);
  if (inst.numeric.size() != numeric_count()) {
    throw ValidationError(where + ": expected " + std::to_string(numeric_count()) +
                          " numeric values, got " + std::to_string(inst.numeric.size()));
  }
  if (inst.nominal.size() != nominal_count()) {
    throw ValidationError(where + ": expected " + std::to_string(nominal_count()) +
                          " nominal values, got " + std::to_string(inst.nominal.size()));
  }
  for (std::size_t s = 0; s < inst.numeric.size(); ++s) {
    if (!std::isfinite(inst.numeric[s])) {
      throw ValidationError(where + ": non-finite value for attribute '" +
                            numeric_name(s) + "'");
    }
  }
  if (!is_class_token(inst.label)) {
    throw ValidationError(where + ": class value '" + inst.label +
                          "' is not in the class domain");
  }
}

Schema Schema::with_sensitive(const std::vector<std::string>& names) const {
  auto attrs = attributes_;
  for (auto& a : attrs) a.sensitive = false;
  for (const auto& name : names) {
    auto it = index_by_name_.find(name);
    if (it == index_by_name_.end()) {
      throw ValidationError("sensitive attribute '" + name + "' not in schema");
    }
    auto& a = attrs[it->second];
    if (a.role != AttributeRole::NumericFeature) {
      throw ValidationError("sensitive attribute '" + name + "' is not a numeric feature");
    }
    a.sensitive = true;
  }
  return Schema(std::move(attrs), class_domain_);
}

}  // namespace streamveil
