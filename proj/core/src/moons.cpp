#include "spc/moons.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace spc {

Dataset generate_two_moons(int n, double noise_sigma, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw Error("two moons needs a positive even sample count, got " + std::to_string(n));
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw Error("noise_sigma must be >= 0");

  const int half = n / 2;
  Matrix x(2, n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int j = 0; j < half; ++j) {
    const double t = half > 1 ? std::numbers::pi * j / (half - 1) : 0.0;
    x(0, j) = std::cos(t);
    x(1, j) = std::sin(t);
    x(0, half + j) = 1.0 - std::cos(t);
    x(1, half + j) = 0.5 - std::sin(t);
    labels[static_cast<std::size_t>(j)] = 0;
    labels[static_cast<std::size_t>(half + j)] = 1;
  }
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (Index j = 0; j < n; ++j) {
      x(0, j) += noise(rng);
      x(1, j) += noise(rng);
    }
  }
  return Dataset(std::move(x), std::move(labels));
}

}  // namespace spc
