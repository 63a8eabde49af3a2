#pragma once

#include "spc/graph.hpp"
#include "spc/kernels.hpp"
#include "spc/numerics.hpp"

#include <cstdint>
#include <vector>

namespace spc {

struct SpcConfig {
  double alpha = 2.0;   // similarity-preserving weight, >= 1
  double beta = 1.0;    // Laplacian rank weight
  double gamma = 1.0;   // Frobenius regularizer
  int clusters = 2;
  int max_iters = 200;
  double rel_tol = 1e-5;
  bool adapt_beta = false;
  std::uint64_t seed = 0;

  /// Throws on out-of-range parameters; n is the kernel order.
  void validate(Index n) const;
};

/// Cap on beta doublings/halvings per run when adapt_beta is on.
inline constexpr int kMaxBetaAdjustments = 30;

/// n x c matrix with orthonormal columns.
struct SpectralEmbedding {
  Matrix f;

  Index order() const noexcept { return f.rows(); }
  Index clusters() const noexcept { return f.cols(); }
};

struct IterationRecord {
  double objective = 0.0;           // after projection, with this iteration's F
  double objective_before_f = 0.0;  // previous Z and previous F (NaN on the first iteration)
  double objective_after_f = 0.0;   // previous Z, new F
  double objective_after_z = 0.0;   // unprojected closed-form Z, new F
  double rel_change = 0.0;          // ||Z_new - Z_old||_F / ||Z_old||_F
  int zero_eigenvalues = 0;         // of L(Z_old) at the start of the iteration
  double beta = 0.0;                // value used for this iteration's Z-step
  double seconds = 0.0;
};

struct SpcTrace {
  std::vector<IterationRecord> iterations;
};

struct ClusteringResult {
  std::vector<int> labels;
  int component_count = 0;
  SimilarityGraph graph;
  SpectralEmbedding embedding;
  SpcTrace trace;
  /// Stopping tolerance reached and the graph has exactly c components.
  bool converged = false;
  /// Stopping tolerance reached (regardless of component count).
  bool tolerance_reached = false;
  double final_beta = 0.0;
};

/// Zero-eigenvalue cutoff for a Laplacian: 1e-8 * max(1, largest degree).
double zero_eigenvalue_tolerance(const SymmetricMatrix& laplacian);

/// Columns of the c smallest-eigenvalue eigenvectors.
SpectralEmbedding update_embedding(const SymmetricMatrix& laplacian, int c);
SpectralEmbedding update_embedding(const EigenSystem& eig, int c);

/// ||F_i - F_j||^2 for every j.
Vector embedding_distances(const SpectralEmbedding& f, Index i);
/// Matrix whose column i is embedding_distances(f, i).
Matrix embedding_distance_matrix(const SpectralEmbedding& f);

/// Closed-form minimizer of the column subproblem:
/// (K + 2 gamma I)^{-1} (alpha K_i - beta d_i / 2).
Vector update_graph_column(const SpdFactorization& factor, const Vector& kernel_row, const Vector& distances,
                           const SpcConfig& cfg);
/// All columns at once; column i uses kernel column i and distance column i.
Matrix update_graph(const SpdFactorization& factor, const Matrix& kernel, const Matrix& distances,
                    const SpcConfig& cfg);

/// Factor K + 2 gamma I.
SpdFactorization factorize_regularized(const Matrix& kernel, double gamma);

/// 1/2 Tr(K + Z^T K Z) - alpha Tr(KZ) + beta Tr(F^T L F) + gamma ||Z||_F^2.
/// Z may be signed (used on the unprojected iterate).
double objective_value(const Matrix& kernel, const Matrix& z, const SpectralEmbedding& f, double alpha,
                       double beta, double gamma);
double objective(const KernelMatrix& k, const SimilarityGraph& z, const SpectralEmbedding& f,
                 const SpcConfig& cfg);

/// Uniform [0,1) entries from the seed, each column scaled to sum 1.
SimilarityGraph initial_graph(Index n, std::uint64_t seed);

// Alternating F / Z updates against a caller-supplied kernel. run_spc drives
// it with a fixed kernel; run_mspc swaps the combined kernel every iteration.
class SpcSolver {
public:
  SpcSolver(Index n, const SpcConfig& cfg);

  /// One outer iteration: F-step, Z-step, projection.
  const IterationRecord& step(const Matrix& kernel, const SpdFactorization& factor);

  bool done() const noexcept;
  bool tolerance_reached() const noexcept { return tolerance_reached_; }
  int iterations() const noexcept { return static_cast<int>(trace_.iterations.size()); }
  double beta() const noexcept { return beta_; }
  const SimilarityGraph& graph() const noexcept { return z_; }
  const SpectralEmbedding& embedding() const noexcept { return f_; }
  const SpcTrace& trace() const noexcept { return trace_; }

  /// Labels from the current graph.
  ClusteringResult result() const;

private:
  SpcConfig cfg_;
  double beta_;
  int beta_adjustments_ = 0;
  SimilarityGraph z_;
  SpectralEmbedding f_;
  bool has_embedding_ = false;
  bool tolerance_reached_ = false;
  SpcTrace trace_;
};

ClusteringResult run_spc(const KernelMatrix& k, const SpcConfig& cfg);

}  // namespace spc
