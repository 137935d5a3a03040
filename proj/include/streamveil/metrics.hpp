#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamveil/kmeans.hpp"

namespace streamveil {

/// Cluster Membership Matrix: freq(i, j) counts instances assigned to cluster
/// i of the original stream and cluster j of the perturbed stream.
struct Cmm {
  std::size_t k_orig = 0;
  std::size_t k_pert = 0;
  std::vector<std::int64_t> freq;  // row-major k_orig x k_pert

  std::int64_t at(std::size_t i, std::size_t j) const { return freq[i * k_pert + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return freq[i * k_pert + j]; }
  std::int64_t total() const;
};

/// Injective cluster correspondence from the smaller side of the CMM.
/// pert_of_orig[i] is the perturbed cluster matched to original cluster i,
/// or -1 when i is unmatched.
struct ClusterMatching {
  std::vector<int> pert_of_orig;
  std::int64_t matched_count = 0;
};

/// Cluster-by-class weight matrix feeding the precision/recall measures.
struct ContingencyTable {
  std::size_t clusters = 0;
  std::size_t classes = 0;
  std::vector<std::int64_t> weight;  // row-major clusters x classes

  std::int64_t at(std::size_t i, std::size_t j) const { return weight[i * classes + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return weight[i * classes + j]; }
  std::int64_t row_sum(std::size_t i) const;
  std::int64_t col_sum(std::size_t j) const;
  std::int64_t total() const;
};

/// Per-window metric bundle emitted by the pipeline.
struct WindowReport {
  std::size_t window_index = 0;
  std::size_t n = 0;
  double precision_orig = 0.0;
  double recall_orig = 0.0;
  double precision_pert = 0.0;
  double recall_pert = 0.0;
  double accuracy_pct = 0.0;
  double misclassification_pct = 0.0;

  bool operator==(const WindowReport&) const = default;
};

/// Cross-tabulates two instance-aligned assignments.
/// Throws ValidationError on length mismatch or out-of-range cluster ids.
Cmm build_cmm(const Assignment& orig, const Assignment& pert, int k_orig, int k_pert);

/// Maximum-agreement injective assignment between original and perturbed
/// clusters (optimal linear assignment on the CMM).
ClusterMatching best_matching(const Cmm& cmm);

/// 100 * matchedCount / total. Throws ValidationError on an empty CMM.
double cmm_accuracy(const Cmm& cmm, const ClusterMatching& m);

/// 100 - cmm_accuracy.
double misclassification(const Cmm& cmm, const ClusterMatching& m);

/// Counts instances per (cluster, class) pair; classes are indexed by their
/// position in class_domain. Throws ValidationError on unknown labels.
ContingencyTable contingency(const Assignment& assign,
                             const std::vector<std::string>& labels, int k,
                             const std::vector<std::string>& class_domain);

/// Average, over non-empty clusters, of the F1 between each cluster and its
/// majority class. In [0, 1]. Throws ValidationError on an empty table.
double precision_measure(const ContingencyTable& ct);

/// Average, over classes present in the window, of the best F1 any cluster
/// achieves for that class. In [0, 1]. Throws ValidationError on an empty table.
double recall_measure(const ContingencyTable& ct);

}  // namespace streamveil
