#include "streamveil/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "streamveil/error.hpp"

namespace streamveil {

std::int64_t Cmm::total() const {
  return std::accumulate(freq.begin(), freq.end(), std::int64_t{0});
}

std::int64_t ContingencyTable::row_sum(std::size_t i) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < classes; ++j) s += at(i, j);
  return s;
}

std::int64_t ContingencyTable::col_sum(std::size_t j) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < clusters; ++i) s += at(i, j);
  return s;
}

std::int64_t ContingencyTable::total() const {
  return std::accumulate(weight.begin(), weight.end(), std::int64_t{0});
}

Cmm build_cmm(const Assignment& orig, const Assignment& pert, int k_orig, int k_pert) {
  if (orig.size() != pert.size()) {
    throw ValidationError("build_cmm: assignment lengths differ (" +
                          std::to_string(orig.size()) + " vs " +
                          std::to_string(pert.size()) + ")");
  }
  if (k_orig < 1 || k_pert < 1) {
    throw ValidationError("build_cmm: cluster counts must be at least 1");
  }
  Cmm cmm;
  cmm.k_orig = static_cast<std::size_t>(k_orig);
  cmm.k_pert = static_cast<std::size_t>(k_pert);
  cmm.freq.assign(cmm.k_orig * cmm.k_pert, 0);
  for (std::size_t t = 0; t < orig.size(); ++t) {
    const int i = orig.cluster_ids[t];
    const int j = pert.cluster_ids[t];
    if (i < 0 || i >= k_orig || j < 0 || j >= k_pert) {
      throw ValidationError("build_cmm: cluster id out of range at position " +
                            std::to_string(t));
    }
    ++cmm.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return cmm;
}

namespace {

// O(n^3) Hungarian algorithm (potentials form) for a square min-cost matrix.
// Returns row -> column of the optimal assignment.
std::vector<int> hungarian_min(std::size_t n, const std::vector<std::int64_t>& cost) {
  const std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      std::int64_t delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

ClusterMatching best_matching(const Cmm& cmm) {
  const std::size_t n = std::max(cmm.k_orig, cmm.k_pert);
  std::int64_t max_freq = 0;
  for (auto f : cmm.freq) max_freq = std::max(max_freq, f);

  // maximize agreement == minimize (max_freq - freq); pad to square with zeros
  std::vector<std::int64_t> cost(n * n, max_freq);
  for (std::size_t i = 0; i < cmm.k_orig; ++i) {
    for (std::size_t j = 0; j < cmm.k_pert; ++j) {
      cost[i * n + j] = max_freq - cmm.at(i, j);
    }
  }
  const std::vector<int> row_to_col = hungarian_min(n, cost);

  ClusterMatching m;
  m.pert_of_orig.assign(cmm.k_orig, -1);
  for (std::size_t i = 0; i < cmm.k_orig; ++i) {
    const int j = row_to_col[i];
    if (j >= 0 && static_cast<std::size_t>(j) < cmm.k_pert) {
      m.pert_of_orig[i] = j;
      m.matched_count += cmm.at(i, static_cast<std::size_t>(j));
    }
  }
  return m;
}

double cmm_accuracy(const Cmm& cmm, const ClusterMatching& m) {
  const std::int64_t total = cmm.total();
  if (total == 0) {
    throw ValidationError("cmm_accuracy: empty cluster membership matrix");
  }
  return 100.0 * static_cast<double>(m.matched_count) / static_cast<double>(total);
}

double misclassification(const Cmm& cmm, const ClusterMatching& m) {
  return 100.0 - cmm_accuracy(cmm, m);
}

ContingencyTable contingency(const Assignment& assign,
                             const std::vector<std::string>& labels, int k,
                             const std::vector<std::string>& class_domain) {
  if (assign.size() != labels.size()) {
    throw ValidationError("contingency: assignment and label lengths differ");
  }
  if (k < 1) throw ValidationError("contingency: k must be at least 1");
  std::unordered_map<std::string, std::size_t> class_index;
  for (std::size_t j = 0; j < class_domain.size(); ++j) class_index.emplace(class_domain[j], j);

  ContingencyTable ct;
  ct.clusters = static_cast<std::size_t>(k);
  ct.classes = class_domain.size();
  ct.weight.assign(ct.clusters * ct.classes, 0);
  for (std::size_t t = 0; t < assign.size(); ++t) {
    const int i = assign.cluster_ids[t];
    if (i < 0 || i >= k) {
      throw ValidationError("contingency: cluster id out of range at position " +
                            std::to_string(t));
    }
    auto it = class_index.find(labels[t]);
    if (it == class_index.end()) {
      throw ValidationError("contingency: unknown class label '" + labels[t] +
                            "' at position " + std::to_string(t));
    }
    ++ct.at(static_cast<std::size_t>(i), it->second);
  }
  return ct;
}

namespace {

double harmonic_f1(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

}  // namespace

double precision_measure(const ContingencyTable& ct) {
  if (ct.total() == 0) {
    throw ValidationError("precision_measure: empty contingency table");
  }
  double sum = 0.0;
  std::size_t non_empty = 0;
  for (std::size_t i = 0; i < ct.clusters; ++i) {
    const std::int64_t row = ct.row_sum(i);
    if (row == 0) continue;
    ++non_empty;
    std::size_t best_class = 0;
    std::int64_t best = -1;
    for (std::size_t j = 0; j < ct.classes; ++j) {
      if (ct.at(i, j) > best) {
        best = ct.at(i, j);
        best_class = j;
      }
    }
    const double prec = static_cast<double>(best) / static_cast<double>(row);
    const double rec =
        static_cast<double>(best) / static_cast<double>(ct.col_sum(best_class));
    sum += harmonic_f1(prec, rec);
  }
  return sum / static_cast<double>(non_empty);
}

double recall_measure(const ContingencyTable& ct) {
  if (ct.total() == 0) {
    throw ValidationError("recall_measure: empty contingency table");
  }
  double sum = 0.0;
  std::size_t present_classes = 0;
  for (std::size_t j = 0; j < ct.classes; ++j) {
    const std::int64_t col = ct.col_sum(j);
    if (col == 0) continue;
    ++present_classes;
    double best = 0.0;
    for (std::size_t i = 0; i < ct.clusters; ++i) {
      const std::int64_t w = ct.at(i, j);
      if (w == 0) continue;
      const double prec = static_cast<double>(w) / static_cast<double>(ct.row_sum(i));
      const double rec = static_cast<double>(w) / static_cast<double>(col);
      best = std::max(best, harmonic_f1(prec, rec));
    }
    sum += best;
  }
  return sum / static_cast<double>(present_classes);
}

}  // namespace streamveil
