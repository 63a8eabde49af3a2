#include "spc/eval.hpp"

#include <limits>
#include <random>

namespace spc {

namespace {

struct LloydRun {
  std::vector<int> labels;
  Matrix centroids;
  double wcss = std::numeric_limits<double>::infinity();
  std::vector<double> history;
};

Matrix seed_plus_plus(const Matrix& x, int k, std::mt19937_64& rng) {
  const Index n = x.cols();
  Matrix centroids(x.rows(), k);
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::uniform_int_distribution<Index> first(0, n - 1);
  Index pick = first(rng);
  centroids.col(0) = x.col(pick);
  chosen[static_cast<std::size_t>(pick)] = true;

  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) nearest[static_cast<std::size_t>(i)] = (x.col(i) - centroids.col(0)).squaredNorm();

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : nearest) total += d;
    if (total > 0.0) {
      std::discrete_distribution<Index> draw(nearest.begin(), nearest.end());
      pick = draw(rng);
    } else {
      // Every point coincides with a centroid; take any unused sample.
      std::vector<Index> unused;
      for (Index i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) unused.push_back(i);
      }
      std::uniform_int_distribution<std::size_t> any(0, unused.size() - 1);
      pick = unused[any(rng)];
    }
    chosen[static_cast<std::size_t>(pick)] = true;
    centroids.col(c) = x.col(pick);
    for (Index i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, (x.col(i) - centroids.col(c)).squaredNorm());
    }
  }
  return centroids;
}

LloydRun lloyd(const Matrix& x, Matrix centroids, int max_iters) {
  const Index n = x.cols();
  const int k = static_cast<int>(centroids.cols());
  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> cost(static_cast<std::size_t>(n), 0.0);

  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    double wcss = 0.0;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (x.col(i) - centroids.col(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      auto& label = run.labels[static_cast<std::size_t>(i)];
      if (label != best) changed = true;
      label = best;
      cost[static_cast<std::size_t>(i)] = best_d;
      wcss += best_d;
    }
    run.history.push_back(wcss);
    run.wcss = wcss;
    if (!changed && iter > 0) break;

    Matrix sums = Matrix::Zero(x.rows(), k);
    std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      const int c = run.labels[static_cast<std::size_t>(i)];
      sums.col(c) += x.col(i);
      ++sizes[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) {
        centroids.col(c) = sums.col(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
        continue;
      }
      // Empty cluster: move it onto the worst-served point.
      Index far = 0;
      for (Index i = 1; i < n; ++i) {
        if (cost[static_cast<std::size_t>(i)] > cost[static_cast<std::size_t>(far)]) far = i;
      }
      centroids.col(c) = x.col(far);
      cost[static_cast<std::size_t>(far)] = 0.0;
    }
  }
  run.centroids = std::move(centroids);
  return run;
}

}  // namespace

KMeansResult lloyd_kmeans(const Dataset& x, int k, std::uint64_t seed, KMeansOptions options) {
  const Index n = x.samples();
  if (k < 1) throw Error("k must be positive");
  if (k > n) throw Error("k (" + std::to_string(k) + ") exceeds sample count (" + std::to_string(n) + ")");
  if (options.restarts < 1 || options.max_iters < 1) throw Error("restarts and max_iters must be positive");

  std::mt19937_64 rng(seed);
  LloydRun best;
  int best_restart = -1;
  for (int r = 0; r < options.restarts; ++r) {
    LloydRun run = lloyd(x.values(), seed_plus_plus(x.values(), k, rng), options.max_iters);
    // Strict comparison keeps the lowest restart index on ties.
    if (best_restart < 0 || run.wcss < best.wcss) {
      best = std::move(run);
      best_restart = r;
    }
  }
  KMeansResult out;
  out.partition = Partition::canonical(best.labels);
  // Keep centroid columns aligned with the renumbered labels.
  out.centroids.resize(best.centroids.rows(), out.partition.clusters());
  for (std::size_t i = 0; i < best.labels.size(); ++i) {
    out.centroids.col(out.partition[i]) = best.centroids.col(best.labels[i]);
  }
  out.wcss = best.wcss;
  out.wcss_history = std::move(best.history);
  out.restart = best_restart;
  return out;
}

}  // namespace spc
