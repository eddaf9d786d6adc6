#pragma once

#include <numbers>

namespace berrysim::units {

// Internal field unit is rad/ns with hbar = 1. User-facing values are H/2pi in MHz.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_rad_per_ns(double mhz) { return kTwoPi * 1e-3 * mhz; }
constexpr double rad_per_ns_to_mhz(double w) { return w / (kTwoPi * 1e-3); }

}  // namespace berrysim::units
