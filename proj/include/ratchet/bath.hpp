#pragma once

#include "ratchet/constants.hpp"
#include "ratchet/linalg.hpp"

#include <cmath>

namespace ratchet {

/// Thermal occupancy 1/(exp(omega/kT) - 1); returns 0 at T = 0.
inline double bose_einstein(double omega_ev, double temperature_k) {
  require(omega_ev > 0.0, "bose_einstein: omega must be > 0");
  require(temperature_k >= 0.0, "bose_einstein: temperature must be >= 0");
  if (temperature_k == 0.0) return 0.0;
  const double x = omega_ev / (k_boltzmann_ev * temperature_k);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

/// Transitions closer than this are treated as exactly degenerate; the flat
/// spectral density contributes nothing at zero frequency.
inline constexpr double degenerate_gap_ev = 1e-11;

/// Flat spectral density weighted by the Bose-Einstein factor:
/// emission (omega > 0) carries gamma*(N+1), absorption (omega < 0) gamma*N.
struct PowerSpectrum {
  double gamma = 0.0;  // eV
  double temperature = 0.0;  // K

  double operator()(double omega_ev) const {
    if (std::abs(omega_ev) < degenerate_gap_ev) return 0.0;
    if (omega_ev > 0.0) return gamma * (bose_einstein(omega_ev, temperature) + 1.0);
    return gamma * bose_einstein(-omega_ev, temperature);
  }
};

}  // namespace ratchet
