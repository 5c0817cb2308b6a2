#include "relunet/sigma.hpp"

#include <cmath>

#include "relunet/errors.hpp"

namespace relunet {

namespace {

constexpr double kBranch = 30.0;

void check_r(double r) {
  if (!(r >= 1.0)) throw DomainError("mollification parameter r must satisfy r >= 1");
}

}  // namespace

double softplus(double s) {
  if (s > kBranch) return s + std::log1p(std::exp(-s));
  return std::log1p(std::exp(s));
}

double sigma_r(double r, double x) {
  check_r(r);
  const double z = r * x;
  if (z > kBranch) return x + std::log(1.0 / r + std::exp(-z)) / r;
  return std::log1p(std::exp(z) / r) / r;
}

double sigma_r_prime(double r, double x) {
  check_r(r);
  const double z = r * x;
  if (z < -kBranch) {
    const double u = std::exp(z) / r;
    return u / (1.0 + u);
  }
  return 1.0 / (1.0 + r * std::exp(-z));
}

double log_sigma_r(double r, double x) {
  check_r(r);
  // sigma_r(x) = softplus(z) / r with z = r x - ln r
  const double z = r * x - std::log(r);
  double log_sp;
  if (z < -36.0) {
    // softplus(z) = e^z (1 - e^z/2 + ...), relative correction below 1e-16
    log_sp = z;
  } else {
    log_sp = std::log(softplus(z));
  }
  return log_sp - std::log(r);
}

double log_sigma_r_prime(double r, double x) {
  check_r(r);
  return -softplus(std::log(r) - r * x);
}

double log1m_sigma_r_prime(double r, double x) {
  check_r(r);
  // 1 - sigma_r' = 1 / (1 + e^{rx}/r)
  return -softplus(r * x - std::log(r));
}

}  // namespace relunet
