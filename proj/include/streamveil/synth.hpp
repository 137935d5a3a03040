#pragma once

#include <cstdint>
#include <vector>

#include "streamveil/ingest.hpp"

namespace streamveil {

/// Labeled synthetic stream: num_clusters isotropic Gaussian blobs with
/// centers mutually at least `separation` apart and standard deviation
/// `spread`, interleaved round-robin. The class label is the generating blob
/// id ("c0".."c{n-1}"); numeric features are named "x0".."x{d-1}".
/// Deterministic per seed. Throws ValidationError when separated centers
/// cannot be placed within a bounded number of retries. When centers_out is
/// non-null it receives the generating centers, indexed by blob id.
Dataset synth_gaussian_stream(int num_clusters, int dims, int per_cluster,
                              double separation, double spread, std::uint64_t seed,
                              std::vector<std::vector<double>>* centers_out = nullptr);

}  // namespace streamveil
