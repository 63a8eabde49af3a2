#include "spc/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace spc {

Dataset::Dataset(Matrix values, std::optional<std::vector<int>> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  require_finite(values_);
  if (!labels_) return;
  if (static_cast<Index>(labels_->size()) != values_.cols()) {
    throw DimensionError("label count " + std::to_string(labels_->size()) +
                         " does not match sample count " + std::to_string(values_.cols()));
  }
  const std::set<int> distinct(labels_->begin(), labels_->end());
  const int k = static_cast<int>(distinct.size());
  for (int label : distinct) {
    if (label < 0 || label >= k) {
      throw Error("labels must lie in [0, " + std::to_string(k) + "), found " +
                  std::to_string(label));
    }
  }
}

KernelSpec KernelSpec::gaussian(double t) {
  KernelSpec s{KernelFamily::gaussian, t, 0.0, 1};
  s.validate();
  return s;
}

KernelSpec KernelSpec::rbf(double t) {
  KernelSpec s{KernelFamily::rbf, t, 0.0, 1};
  s.validate();
  return s;
}

KernelSpec KernelSpec::polynomial(double a, int b) {
  KernelSpec s{KernelFamily::polynomial, 1.0, a, b};
  s.validate();
  return s;
}

KernelSpec KernelSpec::linear() { return KernelSpec{KernelFamily::linear, 1.0, 0.0, 1}; }

void KernelSpec::validate() const {
  switch (family) {
    case KernelFamily::gaussian:
      if (!(t > 0.0) || !std::isfinite(t)) throw Error("gaussian kernel requires t > 0");
      break;
    case KernelFamily::rbf:
      if (!(t > 0.0) || !std::isfinite(t)) throw Error("rbf kernel requires t > 0");
      break;
    case KernelFamily::polynomial:
      if (b < 1) throw Error("polynomial kernel requires exponent b >= 1");
      if (!std::isfinite(a)) throw Error("polynomial offset must be finite");
      break;
    case KernelFamily::linear:
      break;
  }
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

KernelSpec parse_kernel_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (family == "linear") {
    if (!args.empty()) throw Error("linear kernel takes no parameters");
    return KernelSpec::linear();
  }
  if (family == "gaussian") {
    return KernelSpec::gaussian(parse_double(args, "gaussian scale"));
  }
  if (family == "rbf") {
    return KernelSpec::rbf(parse_double(args, "rbf bandwidth"));
  }
  if (family == "poly" || family == "polynomial") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw Error("polynomial kernel needs 'poly:a,b'");
    return KernelSpec::polynomial(parse_double(args.substr(0, comma), "polynomial offset"),
                                  parse_int(args.substr(comma + 1), "polynomial exponent"));
  }
  throw Error("unknown kernel '" + std::string(text) + "'");
}

std::string to_string(const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::gaussian:
      return "gaussian:" + format_number(spec.t);
    case KernelFamily::rbf:
      return "rbf:" + format_number(spec.t);
    case KernelFamily::polynomial:
      return "poly:" + format_number(spec.a) + "," + std::to_string(spec.b);
    case KernelFamily::linear:
      return "linear";
  }
  return "linear";
}

SymmetricMatrix pairwise_sq_dist(const Dataset& x) {
  const Index n = x.samples();
  if (n < 2) throw Error("pairwise distances need at least two samples");
  Matrix d = Matrix::Zero(n, n);
  // Direct differences rather than the Gram expansion: exact zeros for
  // coincident points and no cancellation under translation.
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const double v = (x.sample(i) - x.sample(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return SymmetricMatrix(std::move(d));
}

KernelMatrix gaussian_kernel(const Dataset& x, double t) {
  const KernelSpec spec = KernelSpec::gaussian(t);
  const SymmetricMatrix d = pairwise_sq_dist(x);
  const double dmax_sq = d.values().maxCoeff();
  if (!(dmax_sq > 0.0)) throw Error("degenerate dataset: all samples identical (d_max = 0)");
  Matrix k = (-d.values() / (t * dmax_sq)).array().exp().matrix();
  return {SymmetricMatrix(std::move(k)), spec, false};
}

KernelMatrix rbf_kernel(const Dataset& x, double t) {
  const KernelSpec spec = KernelSpec::rbf(t);
  Matrix k = (-pairwise_sq_dist(x).values() / t).array().exp().matrix();
  return {SymmetricMatrix(std::move(k)), spec, false};
}

KernelMatrix polynomial_kernel(const Dataset& x, double a, int b) {
  const KernelSpec spec = KernelSpec::polynomial(a, b);
  const Matrix gram = x.values().transpose() * x.values();
  Matrix k = (gram.array() + a).pow(static_cast<double>(b)).matrix();
  require_finite(k);
  return {SymmetricMatrix(std::move(k)), spec, false};
}

KernelMatrix linear_kernel(const Dataset& x) {
  Matrix k = x.values().transpose() * x.values();
  return {SymmetricMatrix(std::move(k)), KernelSpec::linear(), false};
}

KernelMatrix make_kernel(const Dataset& x, const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::gaussian:
      return gaussian_kernel(x, spec.t);
    case KernelFamily::rbf:
      return rbf_kernel(x, spec.t);
    case KernelFamily::polynomial:
      return polynomial_kernel(x, spec.a, spec.b);
    case KernelFamily::linear:
      return linear_kernel(x);
  }
  throw Error("unknown kernel family");
}

KernelMatrix normalize_kernel(const KernelMatrix& k) {
  const Matrix& v = k.values();
  require_finite(v);
  const double lo = v.minCoeff();
  const double hi = v.maxCoeff();
  if (!(hi > lo)) throw Error("cannot normalize a constant kernel");
  Matrix out = ((v.array() - lo) / (hi - lo)).matrix();
  // Pin the extremes so rounding cannot leave [0, 1].
  out = out.cwiseMax(0.0).cwiseMin(1.0);
  return {SymmetricMatrix(std::move(out)), k.spec, true};
}

std::vector<KernelSpec> standard_bank_specs() {
  std::vector<KernelSpec> specs;
  for (double t : {0.01, 0.05, 0.1, 1.0, 10.0, 50.0, 100.0}) specs.push_back(KernelSpec::gaussian(t));
  for (double a : {0.0, 1.0}) {
    for (int b : {2, 4}) specs.push_back(KernelSpec::polynomial(a, b));
  }
  specs.push_back(KernelSpec::linear());
  return specs;
}

std::vector<KernelMatrix> build_standard_bank(const Dataset& x) {
  std::vector<KernelMatrix> bank;
  for (const KernelSpec& spec : standard_bank_specs()) {
    bank.push_back(normalize_kernel(make_kernel(x, spec)));
  }
  return bank;
}

}  // namespace spc
