#pragma once

#include <span>
#include <vector>

namespace relunet::poly {

// Polynomials are dense coefficient lists in the monomial basis, ascending
// degree: {a0, a1, a2} is a0 + a1 x + a2 x^2.

double eval(std::span<const double> coeffs, double x);

/// Exact value of the integral of x^k * p(x) over [a, b] from the monomial
/// antiderivative.
double integrate(std::span<const double> coeffs, double a, double b, int k = 0);

std::vector<double> multiply(std::span<const double> p, std::span<const double> q);

}  // namespace relunet::poly
