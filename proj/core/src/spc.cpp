#include "spc/spc.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace spc {

void SpcConfig::validate(Index n) const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw Error("alpha must be >= 1");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error("beta must be nonnegative");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("gamma must be positive");
  if (clusters < 2) throw Error("clusters must be at least 2");
  if (clusters > n) {
    throw Error("clusters (" + std::to_string(clusters) + ") exceeds sample count (" + std::to_string(n) +
                ")");
  }
  if (max_iters < 1) throw Error("max_iters must be positive");
  if (!(rel_tol > 0.0)) throw Error("rel_tol must be positive");
}

double zero_eigenvalue_tolerance(const SymmetricMatrix& laplacian) {
  double scale = 1.0;
  if (laplacian.order() > 0) scale = std::max(scale, laplacian.values().diagonal().maxCoeff());
  return 1e-8 * scale;
}

SpectralEmbedding update_embedding(const EigenSystem& eig, int c) {
  if (c < 1 || c > eig.vectors.cols()) {
    throw Error("embedding dimension " + std::to_string(c) + " out of range");
  }
  return {eig.vectors.leftCols(c)};
}

SpectralEmbedding update_embedding(const SymmetricMatrix& laplacian, int c) {
  return update_embedding(symmetric_eigen(laplacian), c);
}

Vector embedding_distances(const SpectralEmbedding& f, Index i) {
  const Index n = f.order();
  Vector d(n);
  for (Index j = 0; j < n; ++j) d[j] = (f.f.row(i) - f.f.row(j)).squaredNorm();
  d[i] = 0.0;
  return d;
}

Matrix embedding_distance_matrix(const SpectralEmbedding& f) {
  const Index n = f.order();
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = (f.f.row(i) - f.f.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Vector update_graph_column(const SpdFactorization& factor, const Vector& kernel_row, const Vector& distances,
                           const SpcConfig& cfg) {
  if (kernel_row.size() != factor.order() || distances.size() != factor.order()) {
    throw DimensionError("column update vectors must match the factorization order");
  }
  return factor.solve(Vector(cfg.alpha * kernel_row - 0.5 * cfg.beta * distances));
}

Matrix update_graph(const SpdFactorization& factor, const Matrix& kernel, const Matrix& distances,
                    const SpcConfig& cfg) {
  if (kernel.rows() != factor.order() || distances.rows() != factor.order() ||
      kernel.cols() != distances.cols()) {
    throw DimensionError("graph update matrices must match the factorization order");
  }
  return factor.solve(Matrix(cfg.alpha * kernel - 0.5 * cfg.beta * distances));
}

SpdFactorization factorize_regularized(const Matrix& kernel, double gamma) {
  Matrix a = kernel;
  a.diagonal().array() += 2.0 * gamma;
  return spd_factorize(SymmetricMatrix(std::move(a)));
}

namespace {

// Terms of the objective that do not involve F.
double graph_terms(const Matrix& kernel, const Matrix& z, double alpha, double gamma) {
  const double fidelity = 0.5 * (kernel.trace() + z.cwiseProduct(kernel * z).sum());
  const double preserve = alpha * kernel.cwiseProduct(z.transpose()).sum();
  return fidelity - preserve + gamma * z.squaredNorm();
}

double rank_term(const SymmetricMatrix& laplacian, const SpectralEmbedding& f, double beta) {
  if (beta == 0.0) return 0.0;
  return beta * (f.f.transpose() * laplacian.values() * f.f).trace();
}

}  // namespace

double objective_value(const Matrix& kernel, const Matrix& z, const SpectralEmbedding& f, double alpha,
                       double beta, double gamma) {
  return graph_terms(kernel, z, alpha, gamma) + rank_term(laplacian_of(z), f, beta);
}

double objective(const KernelMatrix& k, const SimilarityGraph& z, const SpectralEmbedding& f,
                 const SpcConfig& cfg) {
  return objective_value(k.values(), z.values(), f, cfg.alpha, cfg.beta, cfg.gamma);
}

SimilarityGraph initial_graph(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Matrix z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) z(i, j) = uniform(rng);
    const double s = z.col(j).sum();
    if (s > 0.0) z.col(j) /= s;
  }
  return SimilarityGraph(std::move(z));
}

SpcSolver::SpcSolver(Index n, const SpcConfig& cfg)
    : cfg_(cfg), beta_(cfg.beta), z_(initial_graph(n, cfg.seed)) {
  cfg_.validate(n);
}

bool SpcSolver::done() const noexcept {
  return tolerance_reached_ || iterations() >= cfg_.max_iters;
}

const IterationRecord& SpcSolver::step(const Matrix& kernel, const SpdFactorization& factor) {
  const auto start = std::chrono::steady_clock::now();
  const int c = cfg_.clusters;
  IterationRecord rec;

  const SymmetricMatrix laplacian = build_laplacian(z_);
  const EigenSystem eig = symmetric_eigen(laplacian);
  const int zeros = static_cast<int>(count_below(eig.values, zero_eigenvalue_tolerance(laplacian)));
  rec.zero_eigenvalues = zeros;

  // The random initial graph is connected, so its count carries no signal.
  if (cfg_.adapt_beta && iterations() > 0 && zeros != c && beta_adjustments_ < kMaxBetaAdjustments) {
    beta_ = zeros < c ? 2.0 * beta_ : 0.5 * beta_;
    ++beta_adjustments_;
  }
  rec.beta = beta_;

  const double base = graph_terms(kernel, z_.values(), cfg_.alpha, cfg_.gamma);
  rec.objective_before_f =
      has_embedding_ ? base + rank_term(laplacian, f_, beta_) : std::numeric_limits<double>::quiet_NaN();
  f_ = update_embedding(eig, c);
  has_embedding_ = true;
  rec.objective_after_f = base + rank_term(laplacian, f_, beta_);

  SpcConfig step_cfg = cfg_;
  step_cfg.beta = beta_;
  const Matrix raw = update_graph(factor, kernel, embedding_distance_matrix(f_), step_cfg);
  rec.objective_after_z = objective_value(kernel, raw, f_, cfg_.alpha, beta_, cfg_.gamma);

  SimilarityGraph next = project_nonneg(raw);
  const double prev_norm = z_.values().norm();
  const double diff_norm = (next.values() - z_.values()).norm();
  if (prev_norm > 0.0) {
    rec.rel_change = diff_norm / prev_norm;
  } else {
    rec.rel_change = diff_norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  z_ = std::move(next);
  rec.objective = objective_value(kernel, z_.values(), f_, cfg_.alpha, beta_, cfg_.gamma);

  const bool count_settled =
      !cfg_.adapt_beta || zeros == c || beta_adjustments_ >= kMaxBetaAdjustments;
  tolerance_reached_ = rec.rel_change < cfg_.rel_tol && count_settled;

  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  trace_.iterations.push_back(rec);
  return trace_.iterations.back();
}

ClusteringResult SpcSolver::result() const {
  ClusteringResult out;
  const Components comps = extract_labels(z_);
  out.labels = comps.labels;
  out.component_count = comps.count;
  out.graph = z_;
  out.embedding = f_;
  out.trace = trace_;
  out.tolerance_reached = tolerance_reached_;
  out.converged = tolerance_reached_ && comps.count == cfg_.clusters;
  out.final_beta = beta_;
  return out;
}

ClusteringResult run_spc(const KernelMatrix& k, const SpcConfig& cfg) {
  cfg.validate(k.order());
  const SpdFactorization factor = factorize_regularized(k.values(), cfg.gamma);
  SpcSolver solver(k.order(), cfg);
  while (!solver.done()) solver.step(k.values(), factor);
  return solver.result();
}

}  // namespace spc
