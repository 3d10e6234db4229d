#pragma once

#include <random>
#include <string>

namespace ringnet {

using Rng = std::mt19937_64;

// A fresh distribution per draw keeps all randomness inside the engine state,
// which is what snapshots persist.
inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

std::string rng_state(const Rng& rng);
void set_rng_state(Rng& rng, const std::string& text);

}  // namespace ringnet
