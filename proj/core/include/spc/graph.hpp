#pragma once

#include "spc/numerics.hpp"

#include <optional>
#include <vector>

namespace spc {

/// Learned n x n graph; entries are finite and nonnegative.
class SimilarityGraph {
public:
  SimilarityGraph() = default;
  explicit SimilarityGraph(Matrix z);

  Index order() const noexcept { return z_.rows(); }
  const Matrix& values() const noexcept { return z_; }

private:
  Matrix z_;
};

/// Entrywise max(z, 0).
SimilarityGraph project_nonneg(const Matrix& z);

/// L = diag(colsum W) - W with W = (Z + Z^T)/2.
SymmetricMatrix build_laplacian(const SimilarityGraph& z);
/// Same formula for an arbitrary (possibly signed) square matrix.
SymmetricMatrix laplacian_of(const Matrix& z);

struct Components {
  std::vector<int> labels;  // numbered by first-seen sample index
  int count = 0;
};

// Disjoint-set forest with path halving and union by size.
class DisjointSet {
public:
  explicit DisjointSet(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Relative edge threshold used when none is given.
inline constexpr double kRelativeEdgeThreshold = 1e-8;

/// Default threshold: kRelativeEdgeThreshold * max(Z).
double default_edge_threshold(const SimilarityGraph& z);

/// Connected components of the undirected graph with an edge wherever
/// (Z + Z^T)/2 exceeds the threshold.
Components extract_labels(const SimilarityGraph& z, std::optional<double> threshold = std::nullopt);

/// Z with every entry whose symmetrized weight is <= threshold set to zero.
SimilarityGraph threshold_graph(const SimilarityGraph& z, double threshold);

}  // namespace spc
