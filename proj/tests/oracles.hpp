#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's solver paths.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace spc::oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

/// M M^T / n: positive semi-definite.
inline Matrix random_psd(int n, std::mt19937_64& rng) {
  const Matrix m = random_gaussian(n, n, rng);
  return m * m.transpose() / n;
}

/// M M^T + I: positive definite.
inline Matrix random_spd(int n, std::mt19937_64& rng) {
  const Matrix m = random_gaussian(n, n, rng);
  return m * m.transpose() + Matrix::Identity(n, n);
}

/// Random n x c matrix with orthonormal columns (Gram-Schmidt).
inline Matrix random_orthonormal(int n, int c, std::mt19937_64& rng) {
  Matrix q = random_gaussian(n, c, rng);
  for (int j = 0; j < c; ++j) {
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j).normalize();
  }
  return q;
}

/// Eigenvalues by cyclic Jacobi rotations, ascending.
inline Vector jacobi_eigenvalues(Matrix a, int sweeps = 100) {
  const int n = static_cast<int>(a.rows());
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

/// Plain gradient descent on 1/2 z^T K z - alpha k^T z + beta/2 d^T z + gamma z^T z
/// (no constraint, so the projection step is the identity).
inline Vector gradient_descent_column(const Matrix& k, const Vector& k_col, const Vector& d, double alpha,
                                      double beta, double gamma, double tol = 1e-13,
                                      long max_iters = 5'000'000) {
  const int n = static_cast<int>(k.rows());
  // Gershgorin bound on the Hessian's largest eigenvalue.
  double lip = 0.0;
  for (int i = 0; i < n; ++i) lip = std::max(lip, k.row(i).cwiseAbs().sum() + 2.0 * gamma);
  const double step = 1.0 / lip;
  const Vector rhs = alpha * k_col - 0.5 * beta * d;
  Vector z = Vector::Zero(n);
  for (long it = 0; it < max_iters; ++it) {
    const Vector grad = k * z + 2.0 * gamma * z - rhs;
    if (grad.cwiseAbs().maxCoeff() < tol) break;
    z -= step * grad;
  }
  return z;
}

/// Tr(K - 2 alpha K Z + Z^T K Z) by explicit index loops.
inline double naive_cost(const Matrix& k, const Matrix& z, double alpha) {
  const int n = static_cast<int>(k.rows());
  double tr = 0.0;
  for (int i = 0; i < n; ++i) {
    double kz = 0.0;
    for (int j = 0; j < n; ++j) kz += k(i, j) * z(j, i);
    double ztkz = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) ztkz += z(a, i) * k(a, b) * z(b, i);
    tr += k(i, i) - 2.0 * alpha * kz + ztkz;
  }
  return tr;
}

/// Best matched fraction over all bijections of max(kp, kt) labels.
inline double exhaustive_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  const int kp = *std::max_element(pred.begin(), pred.end()) + 1;
  const int kt = *std::max_element(truth.begin(), truth.end()) + 1;
  const int k = std::max(kp, kt);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += perm[static_cast<std::size_t>(pred[i])] == truth[i];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

}  // namespace spc::oracle
