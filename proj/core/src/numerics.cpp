#include "spc/numerics.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace spc {

namespace {

std::string non_finite_message(Index row, Index col) {
  std::ostringstream os;
  os << "non-finite entry at (" << row << ", " << col << ")";
  return os.str();
}

std::string pivot_message(Index pivot, double value) {
  std::ostringstream os;
  os << "Cholesky factorization failed: pivot " << pivot << " is " << value
     << " (matrix not positive definite; check conditioning or increase gamma)";
  return os.str();
}

}  // namespace

NonFiniteError::NonFiniteError(Index row, Index col)
    : Error(non_finite_message(row, col)), row_(row), col_(col) {}

FactorizationError::FactorizationError(Index pivot, double value)
    : Error(pivot_message(pivot, value)), pivot_(pivot), value_(value) {}

void require_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) throw NonFiniteError(i, j);
    }
  }
}

void require_finite(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw NonFiniteError(i, 0);
  }
}

double max_asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j + 1; i < m.rows(); ++i) {
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    }
  }
  return worst;
}

SymmetricMatrix::SymmetricMatrix(Matrix values, double warn_tolerance) {
  if (values.rows() != values.cols()) {
    throw DimensionError("symmetric matrix must be square, got " +
                         std::to_string(values.rows()) + "x" + std::to_string(values.cols()));
  }
  require_finite(values);
  const double asym = max_asymmetry(values);
  if (asym > warn_tolerance) {
    std::clog << "warning: symmetrizing matrix with max asymmetry " << asym << "\n";
  }
  if (asym > 0.0) {
    // Average the mirrored pair once so both halves hold the identical value.
    for (Index j = 0; j < values.cols(); ++j) {
      for (Index i = j + 1; i < values.rows(); ++i) {
        const double avg = 0.5 * (values(i, j) + values(j, i));
        values(i, j) = avg;
        values(j, i) = avg;
      }
    }
  }
  values_ = std::move(values);
}

SymmetricMatrix SymmetricMatrix::identity(Index n) { return SymmetricMatrix(Matrix::Identity(n, n)); }

SymmetricMatrix SymmetricMatrix::zero(Index n) { return SymmetricMatrix(Matrix::Zero(n, n)); }

EigenSystem symmetric_eigen(const SymmetricMatrix& a) {
  require_finite(a.values());
  if (a.order() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.values(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpdFactorization spd_factorize(const SymmetricMatrix& a) {
  const Matrix& m = a.values();
  const Index n = a.order();
  Matrix lower = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double pivot = m(j, j) - lower.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0)) throw FactorizationError(j, pivot);
    const double diag = std::sqrt(pivot);
    lower(j, j) = diag;
    const Index below = n - j - 1;
    if (below > 0) {
      lower.col(j).tail(below) =
          (m.col(j).tail(below) - lower.bottomLeftCorner(below, j) * lower.row(j).head(j).transpose()) /
          diag;
    }
  }
  return SpdFactorization(std::move(lower));
}

Vector SpdFactorization::solve(const Vector& b) const {
  if (b.size() != order()) {
    throw DimensionError("right-hand side has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(order()));
  }
  Vector y = lower_.triangularView<Eigen::Lower>().solve(b);
  return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix SpdFactorization::solve(const Matrix& b) const {
  if (b.rows() != order()) {
    throw DimensionError("right-hand side has " + std::to_string(b.rows()) + " rows, expected " +
                         std::to_string(order()));
  }
  Matrix y = lower_.triangularView<Eigen::Lower>().solve(b);
  return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector spd_solve(const SpdFactorization& f, const Vector& b) { return f.solve(b); }

std::size_t count_below(const Vector& ascending_values, double tolerance) {
  std::size_t count = 0;
  for (Index i = 0; i < ascending_values.size(); ++i) {
    if (ascending_values[i] < tolerance) ++count;
  }
  return count;
}

}  // namespace spc
