#include "streamveil/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rng_util.hpp"

namespace streamveil {

namespace {

using detail::uniform01;

// Box-Muller standard normals; deterministic for a fixed engine state.
class GaussianSource {
 public:
  explicit GaussianSource(std::mt19937_64& rng) : rng_(rng) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01(rng_);  // (0, 1]
    const double u2 = uniform01(rng_);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64& rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<std::vector<double>> place_centers(int num_clusters, int dims,
                                               double separation,
                                               std::mt19937_64& rng) {
  // uniform rejection sampling in a box wide enough to make placement easy
  const double side =
      2.0 * separation * std::max(2.0, std::ceil(std::pow(num_clusters, 1.0 / dims)));
  constexpr int kAttemptsPerCenter = 500;
  constexpr int kRestarts = 100;

  for (int restart = 0; restart < kRestarts; ++restart) {
    std::vector<std::vector<double>> centers;
    centers.reserve(num_clusters);
    bool failed = false;
    for (int c = 0; c < num_clusters && !failed; ++c) {
      bool placed = false;
      for (int attempt = 0; attempt < kAttemptsPerCenter; ++attempt) {
        std::vector<double> candidate(dims);
        for (int d = 0; d < dims; ++d) candidate[d] = uniform01(rng) * side;
        bool ok = true;
        for (const auto& existing : centers) {
          double dist2 = 0.0;
          for (int d = 0; d < dims; ++d) {
            const double diff = candidate[d] - existing[d];
            dist2 += diff * diff;
          }
          if (dist2 < separation * separation) {
            ok = false;
            break;
          }
        }
        if (ok) {
          centers.push_back(std::move(candidate));
          placed = true;
          break;
        }
      }
      if (!placed) failed = true;
    }
    if (!failed) return centers;
  }
  throw ValidationError("synth_gaussian_stream: could not place " +
                        std::to_string(num_clusters) + " centers at separation " +
                        std::to_string(separation));
}

}  // namespace

Dataset synth_gaussian_stream(int num_clusters, int dims, int per_cluster,
                              double separation, double spread, std::uint64_t seed,
                              std::vector<std::vector<double>>* centers_out) {
  if (num_clusters < 1) throw ValidationError("synth_gaussian_stream: num_clusters must be >= 1");
  if (dims < 1) throw ValidationError("synth_gaussian_stream: dims must be >= 1");
  if (per_cluster < 1) throw ValidationError("synth_gaussian_stream: per_cluster must be >= 1");
  if (!(separation > 0.0)) throw ValidationError("synth_gaussian_stream: separation must be > 0");
  if (!(spread > 0.0)) throw ValidationError("synth_gaussian_stream: spread must be > 0");

  std::mt19937_64 rng(seed);
  const auto centers = place_centers(num_clusters, dims, separation, rng);
  if (centers_out) *centers_out = centers;

  std::vector<AttributeDescriptor> attrs;
  attrs.reserve(static_cast<std::size_t>(dims) + 1);
  for (int d = 0; d < dims; ++d) {
    attrs.push_back({"x" + std::to_string(d), AttributeRole::NumericFeature, false});
  }
  attrs.push_back({"class", AttributeRole::ClassLabel, false});
  std::vector<std::string> domain;
  domain.reserve(num_clusters);
  for (int c = 0; c < num_clusters; ++c) domain.push_back("c" + std::to_string(c));
  Schema schema(std::move(attrs), std::move(domain));

  GaussianSource gauss(rng);
  std::vector<Instance> instances;
  instances.reserve(static_cast<std::size_t>(num_clusters) * per_cluster);
  std::int64_t next_id = 0;
  for (int i = 0; i < per_cluster; ++i) {
    for (int c = 0; c < num_clusters; ++c) {
      Instance inst;
      inst.sequence_id = next_id++;
      inst.numeric.resize(dims);
      for (int d = 0; d < dims; ++d) {
        inst.numeric[d] = centers[c][d] + spread * gauss.next();
      }
      inst.label = schema.class_domain()[c];
      instances.push_back(std::move(inst));
    }
  }
  return {std::move(schema), std::move(instances)};
}

}  // namespace streamveil
