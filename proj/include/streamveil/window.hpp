#pragma once

#include <span>
#include <vector>

#include "streamveil/matrix.hpp"
#include "streamveil/schema.hpp"

namespace streamveil {

/// One tumbling-window segment of a stream. Non-owning view; the underlying
/// instance buffer must outlive the window.
struct Window {
  std::size_t index = 0;
  std::span<const Instance> instances;

  std::size_t size() const { return instances.size(); }
};

/// Consecutive non-overlapping windows of length w, in stream order. Only the
/// final window may be shorter. Throws ValidationError when w == 0.
std::vector<Window> window_partition(std::span<const Instance> stream, std::size_t w);

/// One row per instance, one column per numeric-feature attribute in schema
/// order. Nominal features and the class label are excluded.
/// Throws ValidationError for an empty window.
Matrix feature_matrix(const Window& window, const Schema& schema);

/// In-place column-wise z-scoring with the matrix's own batch statistics
/// (sample stddev). Constant columns become all zeros.
void standardize_columns(Matrix& m);

}  // namespace streamveil
