#pragma once

#include <span>

namespace relunet {

// Cascade summation in ascending index order. The order is fixed so that
// certificate residuals are reproducible bit-for-bit across runs.
double pairwise_sum(std::span<const double> values);

double dot(std::span<const double> a, std::span<const double> b);

double norm_sq(std::span<const double> a);

bool all_finite(std::span<const double> values);

}  // namespace relunet
