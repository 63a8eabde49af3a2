#include "spc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace spc {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  int max_label = -1;
  for (int l : labels_) {
    if (l < 0) throw Error("partition labels must be nonnegative");
    max_label = std::max(max_label, l);
  }
  k_ = max_label + 1;
  std::vector<bool> seen(static_cast<std::size_t>(k_), false);
  for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
  for (int c = 0; c < k_; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error("partition class " + std::to_string(c) + " is empty");
    }
  }
}

Partition Partition::canonical(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return Partition(std::move(out));
}

std::vector<std::vector<std::size_t>> contingency(const Partition& pred, const Partition& truth) {
  if (pred.size() != truth.size()) {
    throw DimensionError("partition sizes differ: " + std::to_string(pred.size()) + " vs " +
                         std::to_string(truth.size()));
  }
  std::vector<std::vector<std::size_t>> counts(static_cast<std::size_t>(pred.clusters()),
                                               std::vector<std::size_t>(static_cast<std::size_t>(truth.clusters()), 0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++counts[static_cast<std::size_t>(pred[i])][static_cast<std::size_t>(truth[i])];
  }
  return counts;
}

// Shortest augmenting path Hungarian method, O(k^3).
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  for (const auto& row : cost) {
    if (row.size() != n) throw DimensionError("assignment cost matrix must be square");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double reduced = cost[r0 - 1][col - 1] - u[r0] - v[col];
        if (reduced < minv[col]) {
          minv[col] = reduced;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (std::size_t col = 1; col <= n; ++col) {
    if (match[col] != 0) assignment[match[col] - 1] = static_cast<int>(col - 1);
  }
  return assignment;
}

double accuracy(const Partition& pred, const Partition& truth) {
  const auto counts = contingency(pred, truth);
  if (pred.size() == 0) return 1.0;
  const std::size_t k = static_cast<std::size_t>(std::max(pred.clusters(), truth.clusters()));
  // Maximize matches == minimize negated counts; missing rows/cols are zero padding.
  std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
  for (std::size_t p = 0; p < counts.size(); ++p) {
    for (std::size_t t = 0; t < counts[p].size(); ++t) cost[p][t] = -static_cast<double>(counts[p][t]);
  }
  const std::vector<int> assignment = solve_assignment(cost);
  std::size_t matched = 0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    const auto t = static_cast<std::size_t>(assignment[p]);
    if (t < counts[p].size()) matched += counts[p][t];
  }
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

double nmi(const Partition& pred, const Partition& truth) {
  const auto counts = contingency(pred, truth);
  const double n = static_cast<double>(pred.size());
  if (n == 0.0) return 0.0;
  std::vector<double> row(counts.size(), 0.0);
  std::vector<double> col(static_cast<std::size_t>(truth.clusters()), 0.0);
  for (std::size_t p = 0; p < counts.size(); ++p) {
    for (std::size_t t = 0; t < counts[p].size(); ++t) {
      row[p] += static_cast<double>(counts[p][t]);
      col[t] += static_cast<double>(counts[p][t]);
    }
  }
  auto entropy = [n](const std::vector<double>& marginal) {
    double h = 0.0;
    for (double c : marginal) {
      if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
  };
  const double hp = entropy(row);
  const double ht = entropy(col);
  if (hp <= 0.0 || ht <= 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    for (std::size_t t = 0; t < counts[p].size(); ++t) {
      const double c = static_cast<double>(counts[p][t]);
      if (c > 0.0) mi += (c / n) * std::log(c * n / (row[p] * col[t]));
    }
  }
  return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

double purity(const Partition& pred, const Partition& truth) {
  const auto counts = contingency(pred, truth);
  if (pred.size() == 0) return 1.0;
  std::size_t total = 0;
  for (const auto& row : counts) total += *std::max_element(row.begin(), row.end());
  return static_cast<double>(total) / static_cast<double>(pred.size());
}

}  // namespace spc
