#pragma once

namespace relunet {

/// Rectifier max(x, 0).
inline double relu(double x) { return x > 0.0 ? x : 0.0; }

/// Smooth rectifier approximation sigma_r(x) = ln(1 + e^{rx}/r) / r, r >= 1.
///
/// Note the 1/r inside the logarithm: this is not the usual softplus
/// ln(1 + e^{rx})/r, and its transition layer sits at x = ln(r)/r rather than
/// at 0. For r*x > 30 the algebraically identical form
/// x + ln(1/r + e^{-rx}) / r is used so e^{rx} never overflows.
/// Throws DomainError for r < 1 (or NaN).
double sigma_r(double r, double x);

/// Derivative 1 / (1 + r e^{-rx}); the r*x < -30 branch evaluates
/// u/(1+u) with u = e^{rx}/r instead.
double sigma_r_prime(double r, double x);

// Log-domain companions. sigma_r and sigma_r' underflow to 0 (and sigma_r'
// rounds to 1) far from the transition layer even though the exact values lie
// strictly inside their bounds; these stay finite everywhere, so a finite
// result certifies strict positivity.

/// ln sigma_r(x).
double log_sigma_r(double r, double x);
/// ln sigma_r'(x).
double log_sigma_r_prime(double r, double x);
/// ln(1 - sigma_r'(x)).
double log1m_sigma_r_prime(double r, double x);

/// ln(1 + e^s) without overflow.
double softplus(double s);

}  // namespace relunet
