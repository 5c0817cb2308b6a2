#pragma once

#include <cstddef>

#include "relunet/layout.hpp"
#include "relunet/rng.hpp"
#include "relunet/target.hpp"

namespace relunet::experiment {

/// Uniform on [-scale, scale]^{3H+1}.
ParamVector random_phi(CounterRng& rng, std::size_t hidden, double scale);

/// Like random_phi, resampled until every neuron has |w_j| >= 0.05, its kink
/// -b_j/w_j lies at least `gap` from 0 and 1, and interior kinks are at least
/// `gap` apart. Keeps finite differences and limit sweeps off the
/// non-differentiable set.
ParamVector random_regular_phi(CounterRng& rng, std::size_t hidden, double scale,
                               double gap = 0.01);

/// Continuous piecewise polynomial with 1..max_pieces pieces of degree
/// <= max_degree and coefficients in [-scale, scale] before the continuity
/// shift.
Target random_piecewise_target(CounterRng& rng, std::size_t max_pieces, std::size_t max_degree,
                               double scale);

/// One of 1, 2, 4, 8.
std::size_t random_width(CounterRng& rng);

}  // namespace relunet::experiment
