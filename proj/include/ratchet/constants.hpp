#pragma once

#include <numbers>

// Unit system: hbar = 1, energies and rates in eV, temperatures in K.

namespace ratchet {

inline constexpr double pi = std::numbers::pi;

/// Boltzmann constant in eV/K.
inline constexpr double k_boltzmann_ev = 8.617333262e-5;

/// Angular frequency per eV (1/hbar in 1/(eV s)); 1 ueV corresponds to 1.52e9 1/s.
inline constexpr double rad_per_sec_per_ev = 1.519267447e15;

/// Converts an energy-unit rate to an absolute rate in 1/s.
inline constexpr double rate_to_hz(double rate_ev) { return rate_ev * rad_per_sec_per_ev; }

}  // namespace ratchet
