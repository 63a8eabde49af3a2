#pragma once

#include "spc/dataset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spc {

/// Labels in [0, k) with every class non-empty.
class Partition {
public:
  Partition() = default;
  /// Validates the labels as given.
  explicit Partition(std::vector<int> labels);
  /// Renumbers arbitrary integer labels by order of first appearance.
  static Partition canonical(std::span<const int> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  int clusters() const noexcept { return k_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }

private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// counts[p][t] = samples with predicted label p and true label t.
std::vector<std::vector<std::size_t>> contingency(const Partition& pred, const Partition& truth);

/// Best-map accuracy over one-to-one label correspondences.
double accuracy(const Partition& pred, const Partition& truth);
/// I(pred; truth) / sqrt(H(pred) H(truth)); 0 when either entropy is 0.
double nmi(const Partition& pred, const Partition& truth);
double purity(const Partition& pred, const Partition& truth);

/// Minimum-cost perfect assignment on a square cost matrix; result[row] = column.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

struct KMeansResult {
  Partition partition;
  Matrix centroids;                  // features x k
  double wcss = 0.0;
  std::vector<double> wcss_history;  // of the winning restart, one entry per assignment step
  int restart = 0;
};

struct KMeansOptions {
  int restarts = 10;
  int max_iters = 300;
};

/// Lloyd iteration from k-means++ seeds, best of `restarts` by WCSS.
KMeansResult lloyd_kmeans(const Dataset& x, int k, std::uint64_t seed, KMeansOptions options = {});

}  // namespace spc
