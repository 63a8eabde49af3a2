#pragma once

#include "spc/numerics.hpp"

#include <optional>
#include <vector>

namespace spc {

/// m x n data matrix, one sample per column, with optional ground truth.
class Dataset {
public:
  Dataset() = default;
  /// Validates finiteness and that labels (if any) cover [0, distinct) with n entries.
  explicit Dataset(Matrix values, std::optional<std::vector<int>> labels = std::nullopt);

  Index features() const noexcept { return values_.rows(); }
  Index samples() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }
  auto sample(Index i) const { return values_.col(i); }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

private:
  Matrix values_;
  std::optional<std::vector<int>> labels_;
};

}  // namespace spc
