#pragma once

#include "spc/graph.hpp"
#include "spc/kernels.hpp"
#include "spc/spc.hpp"

#include <vector>

namespace spc {

struct MklState {
  Vector weights;        // sum of square roots is 1 after every update
  KernelMatrix combined; // sum_i w_i K^i
  Vector costs;          // per-kernel h_i from the last update
  int iteration = 0;
};

/// Sum of sqrt(w_i); the feasibility measure for kernel weights.
double sqrt_weight_sum(const Vector& w);

/// H = sum_i w_i K^i. Requires equal orders, w >= 0 and sum sqrt(w) == 1 (1e-12).
KernelMatrix combine_kernels(const std::vector<KernelMatrix>& bank, const Vector& weights);

/// h_i = Tr(K^i - 2 alpha K^i Z + Z^T K^i Z).
Vector kernel_costs(const std::vector<KernelMatrix>& bank, const SimilarityGraph& z, double alpha);

/// Closed-form KKT solution w_i = (h_i sum_j 1/h_j)^{-2}. Throws when any h_i <= 0.
Vector update_weights(const Vector& costs);

struct MspcResult {
  ClusteringResult clustering;
  MklState state;
};

MspcResult run_mspc(const std::vector<KernelMatrix>& bank, const SpcConfig& cfg);

}  // namespace spc
