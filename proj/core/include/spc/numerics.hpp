#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A matrix or vector entry is NaN or infinite.
class NonFiniteError : public Error {
public:
  NonFiniteError(Index row, Index col);
  Index row() const noexcept { return row_; }
  Index col() const noexcept { return col_; }

private:
  Index row_;
  Index col_;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Cholesky hit a non-positive pivot.
class FactorizationError : public Error {
public:
  FactorizationError(Index pivot, double value);
  Index pivot() const noexcept { return pivot_; }
  double value() const noexcept { return value_; }

private:
  Index pivot_;
  double value_;
};

/// Throws NonFiniteError naming the first offending entry (column-major scan).
void require_finite(const Matrix& m);
void require_finite(const Vector& v);

/// Largest |A(i,j) - A(j,i)|.
double max_asymmetry(const Matrix& m);

// Dense square matrix with exact symmetry. Construction symmetrizes as
// (A + A^T)/2 and warns on stderr when the input asymmetry exceeds
// `warn_tolerance`.
class SymmetricMatrix {
public:
  static constexpr double kDefaultWarnTolerance = 1e-8;

  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Matrix values, double warn_tolerance = kDefaultWarnTolerance);

  static SymmetricMatrix identity(Index n);
  static SymmetricMatrix zero(Index n);

  Index order() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

private:
  Matrix values_;
};

struct EigenSystem {
  Vector values;   // ascending
  Matrix vectors;  // column j pairs with values[j]
};

EigenSystem symmetric_eigen(const SymmetricMatrix& a);

/// Lower Cholesky factor of a symmetric positive-definite matrix.
class SpdFactorization {
public:
  Index order() const noexcept { return lower_.rows(); }
  const Matrix& lower() const noexcept { return lower_; }

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;

private:
  friend SpdFactorization spd_factorize(const SymmetricMatrix& a);
  explicit SpdFactorization(Matrix lower) : lower_(std::move(lower)) {}
  Matrix lower_;
};

/// Throws FactorizationError with the index of the first non-positive pivot.
SpdFactorization spd_factorize(const SymmetricMatrix& a);

Vector spd_solve(const SpdFactorization& f, const Vector& b);

/// Number of eigenvalues strictly below `tolerance`.
std::size_t count_below(const Vector& ascending_values, double tolerance);

}  // namespace spc
