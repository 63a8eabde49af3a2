#include "spc/graph.hpp"

#include <cmath>
#include <numeric>

namespace spc {

SimilarityGraph::SimilarityGraph(Matrix z) : z_(std::move(z)) {
  if (z_.rows() != z_.cols()) throw DimensionError("similarity graph must be square");
  require_finite(z_);
  for (Index j = 0; j < z_.cols(); ++j) {
    for (Index i = 0; i < z_.rows(); ++i) {
      if (z_(i, j) < 0.0) {
        throw Error("similarity graph entry (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") is negative");
      }
    }
  }
}

SimilarityGraph project_nonneg(const Matrix& z) { return SimilarityGraph(z.cwiseMax(0.0)); }

SymmetricMatrix laplacian_of(const Matrix& z) {
  if (z.rows() != z.cols()) throw DimensionError("Laplacian needs a square matrix");
  const Matrix w = 0.5 * (z + z.transpose());
  Matrix l = -w;
  l.diagonal() += w.colwise().sum().transpose();
  return SymmetricMatrix(std::move(l));
}

SymmetricMatrix build_laplacian(const SimilarityGraph& z) { return laplacian_of(z.values()); }

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

double default_edge_threshold(const SimilarityGraph& z) {
  if (z.order() == 0) return 0.0;
  return kRelativeEdgeThreshold * z.values().maxCoeff();
}

Components extract_labels(const SimilarityGraph& z, std::optional<double> threshold) {
  const double thr = threshold.value_or(default_edge_threshold(z));
  if (thr < 0.0) throw Error("edge threshold must be nonnegative");
  const Index n = z.order();
  const Matrix& v = z.values();
  DisjointSet sets(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (0.5 * (v(i, j) + v(j, i)) > thr) {
        sets.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  }
  Components out;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> root_label(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    const std::size_t root = sets.find(i);
    if (root_label[root] < 0) root_label[root] = out.count++;
    out.labels[i] = root_label[root];
  }
  return out;
}

SimilarityGraph threshold_graph(const SimilarityGraph& z, double threshold) {
  const Index n = z.order();
  Matrix out = z.values();
  for (Index j = 0; j < n; ++j) {
    for (Index i = j; i < n; ++i) {
      if (i != j && 0.5 * (out(i, j) + out(j, i)) <= threshold) {
        out(i, j) = 0.0;
        out(j, i) = 0.0;
      }
    }
  }
  return SimilarityGraph(std::move(out));
}

}  // namespace spc
