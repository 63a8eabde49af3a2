#include "spc/mkl.hpp"

#include <cmath>
#include <sstream>

namespace spc {

namespace {

constexpr double kWeightTolerance = 1e-12;

void require_consistent(const std::vector<KernelMatrix>& bank) {
  if (bank.empty()) throw Error("kernel bank is empty");
  const Index n = bank.front().order();
  for (std::size_t i = 1; i < bank.size(); ++i) {
    if (bank[i].order() != n) {
      throw DimensionError("kernel " + std::to_string(i) + " has order " + std::to_string(bank[i].order()) +
                           ", expected " + std::to_string(n));
    }
  }
}

// Unchecked weighted sum: the first pass uses the infeasible start w_i = 1/r.
Matrix weighted_sum(const std::vector<KernelMatrix>& bank, const Vector& weights) {
  Matrix h = weights[0] * bank[0].values();
  for (std::size_t i = 1; i < bank.size(); ++i) h += weights[static_cast<Index>(i)] * bank[i].values();
  return h;
}

}  // namespace

double sqrt_weight_sum(const Vector& w) { return w.cwiseSqrt().sum(); }

KernelMatrix combine_kernels(const std::vector<KernelMatrix>& bank, const Vector& weights) {
  require_consistent(bank);
  if (static_cast<std::size_t>(weights.size()) != bank.size()) {
    throw DimensionError("weight count does not match bank size");
  }
  if ((weights.array() < 0.0).any()) throw Error("kernel weights must be nonnegative");
  const double s = sqrt_weight_sum(weights);
  if (std::abs(s - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel weights violate sum(sqrt(w)) = 1 (got " << s << ")";
    throw Error(os.str());
  }
  return {SymmetricMatrix(weighted_sum(bank, weights)), KernelSpec::linear(), false};
}

Vector kernel_costs(const std::vector<KernelMatrix>& bank, const SimilarityGraph& z, double alpha) {
  require_consistent(bank);
  if (z.order() != bank.front().order()) throw DimensionError("graph order does not match the kernels");
  const Matrix& zv = z.values();
  Vector h(static_cast<Index>(bank.size()));
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const Matrix& k = bank[i].values();
    // Tr(KZ) = sum(K .* Z^T); Tr(Z^T K Z) = sum(Z .* KZ).
    h[static_cast<Index>(i)] =
        k.trace() - 2.0 * alpha * k.cwiseProduct(zv.transpose()).sum() + zv.cwiseProduct(k * zv).sum();
  }
  return h;
}

Vector update_weights(const Vector& costs) {
  if (costs.size() == 0) throw Error("no kernel costs");
  for (Index i = 0; i < costs.size(); ++i) {
    if (!(costs[i] > 0.0) || !std::isfinite(costs[i])) {
      std::ostringstream os;
      os << "kernel cost h_" << i << " = " << costs[i]
         << " is not positive; the weight update is undefined (alpha likely too large for the current graph)";
      throw Error(os.str());
    }
  }
  const Vector inverse = costs.cwiseInverse();
  const Vector roots = inverse / inverse.sum();
  return roots.cwiseProduct(roots);
}

MspcResult run_mspc(const std::vector<KernelMatrix>& bank, const SpcConfig& cfg) {
  require_consistent(bank);
  const Index n = bank.front().order();
  cfg.validate(n);
  const Index r = static_cast<Index>(bank.size());

  MklState state;
  state.weights = Vector::Constant(r, 1.0 / static_cast<double>(r));
  state.costs = Vector::Zero(r);

  SpcSolver solver(n, cfg);
  while (!solver.done()) {
    const Matrix combined = weighted_sum(bank, state.weights);
    const SpdFactorization factor = factorize_regularized(combined, cfg.gamma);
    solver.step(combined, factor);
    state.costs = kernel_costs(bank, solver.graph(), cfg.alpha);
    state.weights = update_weights(state.costs);
    ++state.iteration;
  }
  state.combined = combine_kernels(bank, state.weights);
  return {solver.result(), std::move(state)};
}

}  // namespace spc
