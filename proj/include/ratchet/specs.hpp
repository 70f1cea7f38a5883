#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratchet {

// Table 1 defaults. Site energies use omega = 1.8 eV - 2S so the band-1 bright
// state stays pinned at 1.8 eV for every hopping strength.
namespace defaults {
inline constexpr int n_sites = 4;
inline constexpr double hopping_ev = 0.02;
inline constexpr double bright_energy_ev = 1.8;
inline constexpr double gamma_optical_ev = 1e-6;
inline constexpr double gamma_phonon_ev = 1e-3;  // 1000 * gamma_optical
inline constexpr double gamma_extraction_ev = 1e-7;
inline constexpr double gamma_trap_ev = 1e-6;
inline constexpr double t_optical_k = 5800.0;
inline constexpr double t_phonon_k = 300.0;
inline double site_energy_ev(double hopping = hopping_ev) {
  return bright_energy_ev - 2.0 * hopping;
}
}  // namespace defaults

enum class ScenarioKind { Ratchets, NoPhonons, ForcedDark };

inline std::string to_string(ScenarioKind s) {
  switch (s) {
    case ScenarioKind::Ratchets: return "ratchets";
    case ScenarioKind::NoPhonons: return "np";
    case ScenarioKind::ForcedDark: return "fd";
  }
  return "?";
}

enum class ExtractionMode { SingleSite, Collective };

struct RingSpec {
  int n_sites = defaults::n_sites;
  std::vector<double> site_energies;  // empty = uniform at defaults::site_energy_ev(hopping)
  double hopping = defaults::hopping_ev;

  static RingSpec uniform(int n, double omega, double s) {
    RingSpec r;
    r.n_sites = n;
    r.site_energies.assign(static_cast<size_t>(n), omega);
    r.hopping = s;
    return r;
  }

  double site_energy(int i) const {
    if (site_energies.empty()) return defaults::site_energy_ev(hopping);
    return site_energies.at(static_cast<size_t>(i));
  }

  bool is_uniform(double tol = 0.0) const {
    if (site_energies.empty()) return true;
    for (double e : site_energies)
      if (std::abs(e - site_energies.front()) > tol) return false;
    return true;
  }

  void validate() const {
    if (n_sites < 2) throw std::invalid_argument("ring.n_sites must be >= 2");
    if (n_sites > 12)
      throw std::invalid_argument("ring.n_sites > 12 rejected: dense 2^N operators would need " +
                                  std::to_string((1ULL << n_sites)) + "^2 entries");
    if (!site_energies.empty() && static_cast<int>(site_energies.size()) != n_sites)
      throw std::invalid_argument("ring.site_energies length must equal n_sites");
    for (double e : site_energies)
      if (!std::isfinite(e) || e <= 0.0)
        throw std::invalid_argument("ring.site_energies must be finite and positive");
    if (!std::isfinite(hopping)) throw std::invalid_argument("ring.hopping must be finite");
  }
};

struct BathSpec {
  double gamma_o = defaults::gamma_optical_ev;
  double t_o = defaults::t_optical_k;
  double gamma_p = defaults::gamma_phonon_ev;
  double t_p = defaults::t_phonon_k;

  void validate() const {
    if (gamma_o < 0 || gamma_p < 0) throw std::invalid_argument("bath rates must be >= 0");
    if (t_o <= 0 || t_p <= 0) throw std::invalid_argument("bath temperatures must be > 0");
  }
};

struct TrapSpec {
  // omega_t <= 0 means "resolve from scenario": omega-2S for ratchets/FD, omega+2S for NP.
  double omega_t = 0.0;
  double gamma_t = defaults::gamma_trap_ev;
  double gamma_x = defaults::gamma_extraction_ev;
  ExtractionMode extraction_mode = ExtractionMode::SingleSite;
  int extraction_site = 0;

  bool omega_t_explicit() const { return omega_t > 0.0; }

  void validate() const {
    if (gamma_t < 0 || gamma_x < 0) throw std::invalid_argument("trap rates must be >= 0");
    if (extraction_site < 0) throw std::invalid_argument("trap.extraction_site must be >= 0");
  }
};

struct ImperfectionSpec {
  double gamma_nr = 0.0;
  double gamma_eea = 0.0;

  void validate() const {
    if (gamma_nr < 0 || gamma_eea < 0)
      throw std::invalid_argument("imperfection rates must be >= 0");
  }
};

/// Trap energy actually used for a scenario (explicit value wins).
inline double resolve_trap_energy(const TrapSpec& trap, const RingSpec& ring, ScenarioKind sc) {
  if (trap.omega_t_explicit()) return trap.omega_t;
  double omega = ring.site_energy(0);
  return sc == ScenarioKind::NoPhonons ? omega + 2.0 * ring.hopping : omega - 2.0 * ring.hopping;
}

}  // namespace ratchet
