#include "streamveil/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "streamveil/error.hpp"
#include "rng_util.hpp"

namespace streamveil {

using detail::uniform01;
using detail::uniform_index;

namespace {

double squared_distance(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

// k-means++: first centroid uniform; each later one drawn by squared-distance
// weighting, greedily keeping the best of a few candidate draws (the variant
// that samples several candidates per step and commits the one minimizing the
// resulting potential).
Matrix seed_centroids(const Matrix& points, int k, std::mt19937_64& rng) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  Matrix centroids(static_cast<std::size_t>(k), d);

  const std::size_t first = uniform_index(rng, n);
  for (std::size_t c = 0; c < d; ++c) centroids(0, c) = points(first, c);

  std::vector<double> min_dist(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    min_dist[i] = squared_distance(points.row(i), centroids.row(0), d);
    total += min_dist[i];
  }

  const int candidates = 2 + static_cast<int>(std::log(static_cast<double>(k)));
  std::vector<double> cand_dist(n);
  std::vector<double> best_dist(n);
  for (int j = 1; j < k; ++j) {
    std::size_t best_pick = n;
    double best_potential = std::numeric_limits<double>::infinity();
    if (total > 0.0) {
      for (int t = 0; t < candidates; ++t) {
        const double target = uniform01(rng) * total;
        double cumulative = 0.0;
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          cumulative += min_dist[i];
          if (cumulative > target) {
            pick = i;
            break;
          }
        }
        double potential = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cand_dist[i] =
              std::min(min_dist[i], squared_distance(points.row(i), points.row(pick), d));
          potential += cand_dist[i];
        }
        if (potential < best_potential) {
          best_potential = potential;
          best_pick = pick;
          best_dist.swap(cand_dist);
        }
      }
    } else {
      // all remaining points coincide with chosen centroids
      best_pick = uniform_index(rng, n);
      best_dist = min_dist;
      best_potential = 0.0;
    }
    for (std::size_t c = 0; c < d; ++c) centroids(j, c) = points(best_pick, c);
    min_dist.swap(best_dist);
    total = best_potential;
  }
  return centroids;
}

// Nearest centroid per point (ties to the lowest index); returns total SSE.
double assign_points(const Matrix& points, const Matrix& centroids,
                     std::vector<int>& out) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  const std::size_t k = centroids.rows();
  out.resize(n);
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = points.row(i);
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dist = squared_distance(p, centroids.row(j), d);
      if (dist < best) {
        best = dist;
        best_j = static_cast<int>(j);
      }
    }
    out[i] = best_j;
    sse += best;
  }
  return sse;
}

struct LloydRun {
  Matrix centroids;
  double sse = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> trace;
};

LloydRun lloyd_once(const Matrix& points, int k, std::uint64_t seed, int max_iter,
                    double tol) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();

  std::mt19937_64 rng(seed);
  Matrix centroids = seed_centroids(points, k, rng);

  std::vector<int> assignment;
  std::vector<int> previous;
  std::vector<double> sums(static_cast<std::size_t>(k) * d);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k));
  LloydRun run;

  for (int iter = 0; iter < max_iter; ++iter) {
    const double sse = assign_points(points, centroids, assignment);
    run.trace.push_back(sse);
    run.iterations = iter + 1;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = points.row(i);
      double* s = sums.data() + static_cast<std::size_t>(assignment[i]) * d;
      for (std::size_t c = 0; c < d; ++c) s[c] += p[c];
      ++counts[static_cast<std::size_t>(assignment[i])];
    }

    // Re-seed each empty cluster at the point farthest from its stale
    // centroid, moving that point out of its donor cluster so every centroid
    // stays the mean of its members (keeps the SSE trace non-increasing).
    // Donors are restricted to clusters with >= 2 members; n >= k guarantees
    // one exists while any cluster is empty.
    bool repaired = false;
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] != 0) continue;
      double farthest = -1.0;
      std::size_t pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(assignment[i])] < 2) continue;
        const double dist = squared_distance(points.row(i), centroids.row(j), d);
        if (dist > farthest) {
          farthest = dist;
          pick = i;
        }
      }
      if (pick == n) throw Error("kmeans_fit: empty-cluster repair found no donor");
      const auto donor = static_cast<std::size_t>(assignment[pick]);
      double* sj = sums.data() + static_cast<std::size_t>(j) * d;
      double* sdonor = sums.data() + donor * d;
      const double* p = points.row(pick);
      for (std::size_t c = 0; c < d; ++c) {
        sj[c] = p[c];
        sdonor[c] -= p[c];
      }
      counts[static_cast<std::size_t>(j)] = 1;
      --counts[donor];
      assignment[pick] = j;
      repaired = true;
    }

    double movement = 0.0;
    for (int j = 0; j < k; ++j) {
      const double* s = sums.data() + static_cast<std::size_t>(j) * d;
      const double inv = 1.0 / static_cast<double>(counts[static_cast<std::size_t>(j)]);
      double shift = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double updated = s[c] * inv;
        const double diff = updated - centroids(static_cast<std::size_t>(j), c);
        shift += diff * diff;
        centroids(static_cast<std::size_t>(j), c) = updated;
      }
      movement = std::max(movement, std::sqrt(shift));
    }

    const bool fixed_point = !previous.empty() && assignment == previous;
    previous = assignment;
    if (!repaired && (fixed_point || movement <= tol)) break;
  }

  run.centroids = std::move(centroids);
  run.sse = assign_points(points, run.centroids, assignment);
  return run;
}

// Independently seeded restarts per fit; the lowest final SSE wins (first on
// ties). Lifts the chance of reaching the global optimum on small instances
// well past a single k-means++ draw while staying deterministic in `seed`.
constexpr int kRestarts = 8;

}  // namespace

KMeansModel kmeans_fit(const Matrix& points, int k, std::uint64_t seed,
                       int max_iter, double tol, std::vector<double>* sse_trace) {
  const std::size_t n = points.rows();
  if (k < 1) throw ValidationError("kmeans_fit: k must be at least 1");
  if (max_iter < 1) throw ValidationError("kmeans_fit: max_iter must be at least 1");
  if (tol < 0.0) throw ValidationError("kmeans_fit: tol must be non-negative");
  if (n < static_cast<std::size_t>(k)) {
    throw ValidationError("kmeans_fit: " + std::to_string(n) + " points for k=" +
                          std::to_string(k));
  }
  for (double v : points.data()) {
    if (!std::isfinite(v)) throw ValidationError("kmeans_fit: non-finite input value");
  }

  std::mt19937_64 master(seed);
  LloydRun best;
  for (int r = 0; r < kRestarts; ++r) {
    LloydRun run = lloyd_once(points, k, master(), max_iter, tol);
    if (run.sse < best.sse) best = std::move(run);
  }

  if (sse_trace) *sse_trace = std::move(best.trace);

  KMeansModel model;
  model.k = k;
  model.centroids = std::move(best.centroids);
  model.seed = seed;
  model.iterations = best.iterations;
  model.sse = best.sse;
  return model;
}

Assignment kmeans_assign(const Matrix& points, const KMeansModel& model) {
  if (points.cols() != model.centroids.cols()) {
    throw ValidationError("kmeans_assign: point dimensionality " +
                          std::to_string(points.cols()) + " does not match centroids (" +
                          std::to_string(model.centroids.cols()) + ")");
  }
  Assignment out;
  assign_points(points, model.centroids, out.cluster_ids);
  return out;
}

}  // namespace streamveil
