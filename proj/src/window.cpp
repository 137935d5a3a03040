#include "streamveil/window.hpp"

#include "streamveil/stats.hpp"

namespace streamveil {

std::vector<Window> window_partition(std::span<const Instance> stream, std::size_t w) {
  if (w == 0) {
    throw ValidationError("window_partition: window size must be at least 1");
  }
  std::vector<Window> windows;
  windows.reserve((stream.size() + w - 1) / w);
  for (std::size_t start = 0; start < stream.size(); start += w) {
    const std::size_t len = std::min(w, stream.size() - start);
    windows.push_back(Window{windows.size(), stream.subspan(start, len)});
  }
  return windows;
}

Matrix feature_matrix(const Window& window, const Schema& schema) {
  if (window.instances.empty()) {
    throw ValidationError("feature_matrix: window " + std::to_string(window.index) +
                          " is empty");
  }
  Matrix m(window.size(), schema.numeric_count());
  for (std::size_t r = 0; r < window.size(); ++r) {
    const Instance& inst = window.instances[r];
    if (inst.numeric.size() != schema.numeric_count()) {
      throw ValidationError("feature_matrix: instance " +
                            std::to_string(inst.sequence_id) + " does not match schema");
    }
    double* row = m.row(r);
    for (std::size_t c = 0; c < inst.numeric.size(); ++c) row[c] = inst.numeric[c];
  }
  return m;
}

void standardize_columns(Matrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    RunningStats s;
    for (std::size_t r = 0; r < m.rows(); ++r) s = stats_update(s, m(r, c));
    const double sd = s.stddev();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      m(r, c) = sd == 0.0 ? 0.0 : (m(r, c) - s.mean) / sd;
    }
  }
}

}  // namespace streamveil
