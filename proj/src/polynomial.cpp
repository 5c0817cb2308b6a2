#include "relunet/polynomial.hpp"

#include <cmath>

namespace relunet::poly {

double eval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double integrate(std::span<const double> coeffs, double a, double b, int k) {
  // a^(i+k+1) and b^(i+k+1) built incrementally
  double pa = std::pow(a, k + 1);
  double pb = std::pow(b, k + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double n = static_cast<double>(i) + k + 1;
    total += coeffs[i] * (pb - pa) / n;
    pa *= a;
    pb *= b;
  }
  return total;
}

std::vector<double> multiply(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) return {};
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

}  // namespace relunet::poly
