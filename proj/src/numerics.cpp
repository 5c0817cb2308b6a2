#include "relunet/numerics.hpp"

#include <cassert>
#include <cmath>
#include <vector>

namespace relunet {

namespace {

constexpr std::size_t kLeafSize = 8;

double cascade(const double* first, std::size_t n) {
  if (n <= kLeafSize) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += first[i];
    return s;
  }
  const std::size_t half = n / 2;
  return cascade(first, half) + cascade(first + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return cascade(values.data(), values.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  std::vector<double> products(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) products[i] = a[i] * b[i];
  return pairwise_sum(products);
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

bool all_finite(std::span<const double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace relunet
