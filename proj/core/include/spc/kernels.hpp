#pragma once

#include "spc/dataset.hpp"
#include "spc/numerics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace spc {

enum class KernelFamily { gaussian, rbf, polynomial, linear };

struct KernelSpec {
  KernelFamily family = KernelFamily::linear;
  double t = 1.0;   // gaussian: multiplier on d_max^2; rbf: bandwidth in squared data units
  double a = 0.0;   // polynomial offset
  int b = 1;        // polynomial exponent

  static KernelSpec gaussian(double t);
  static KernelSpec rbf(double t);
  static KernelSpec polynomial(double a, int b);
  static KernelSpec linear();

  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

/// "gaussian:10", "rbf:10", "poly:1,2", "linear".
KernelSpec parse_kernel_spec(std::string_view text);
std::string to_string(const KernelSpec& spec);

struct KernelMatrix {
  SymmetricMatrix entries;
  KernelSpec spec;
  bool normalized = false;

  Index order() const noexcept { return entries.order(); }
  const Matrix& values() const noexcept { return entries.values(); }
};

/// Squared Euclidean distances between samples; zero diagonal.
SymmetricMatrix pairwise_sq_dist(const Dataset& x);

/// exp(-||x-y||^2 / (t * d_max^2)), d_max the largest pairwise distance.
KernelMatrix gaussian_kernel(const Dataset& x, double t);
/// exp(-||x-y||^2 / t), no data-dependent scaling.
KernelMatrix rbf_kernel(const Dataset& x, double t);
/// (a + x^T y)^b
KernelMatrix polynomial_kernel(const Dataset& x, double a, int b);
KernelMatrix linear_kernel(const Dataset& x);
KernelMatrix make_kernel(const Dataset& x, const KernelSpec& spec);

/// Global min-max rescale to [0, 1]. Throws on a constant kernel.
KernelMatrix normalize_kernel(const KernelMatrix& k);

/// Generator parameters of the 12-kernel bank, in bank order.
std::vector<KernelSpec> standard_bank_specs();
/// Seven gaussians, four polynomials, one linear kernel, all normalized.
std::vector<KernelMatrix> build_standard_bank(const Dataset& x);

}  // namespace spc
