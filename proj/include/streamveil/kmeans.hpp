#pragma once

#include <cstdint>
#include <vector>

#include "streamveil/matrix.hpp"

namespace streamveil {

/// Fitted k-means state for one window.
struct KMeansModel {
  int k = 0;
  Matrix centroids;  // k x d
  std::uint64_t seed = 0;
  int iterations = 0;
  double sse = 0.0;

  bool operator==(const KMeansModel&) const = default;
};

/// Per-instance cluster memberships, aligned with the window's instance order.
struct Assignment {
  std::vector<int> cluster_ids;

  std::size_t size() const { return cluster_ids.size(); }
  bool operator==(const Assignment&) const = default;
};

inline constexpr int kDefaultMaxIterations = 100;
inline constexpr double kDefaultTolerance = 1e-6;

/// Lloyd's algorithm with k-means++ seeding from the given seed, run as a
/// small fixed number of independently seeded restarts; the lowest-SSE model
/// wins. Deterministic for fixed inputs. Each run terminates when the
/// assignment reaches a fixed point or the maximum centroid shift drops to
/// `tol`, whichever first. An empty cluster is re-seeded at the point farthest
/// from its centroid, pulled out of a donor cluster with at least two members.
/// `sse_trace`, when given, receives the winning run's SSE at each assignment
/// step.
KMeansModel kmeans_fit(const Matrix& points, int k, std::uint64_t seed,
                       int max_iter = kDefaultMaxIterations,
                       double tol = kDefaultTolerance,
                       std::vector<double>* sse_trace = nullptr);

/// Nearest-centroid memberships by Euclidean distance; ties resolve to the
/// lowest cluster index. Throws ValidationError on dimension mismatch.
Assignment kmeans_assign(const Matrix& points, const KMeansModel& model);

}  // namespace streamveil
