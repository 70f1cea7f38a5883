#pragma once

#include "ratchet/bath.hpp"
#include "ratchet/hamiltonians.hpp"
#include "ratchet/hilbert.hpp"
#include "ratchet/redfield.hpp"
#include "ratchet/spectral.hpp"
#include "ratchet/superop.hpp"

#include <vector>

namespace ratchet {

// Everything downstream of diagonalization works in the product eigenbasis of
// H_s + H_t: composite index = ring_eigenstate * trap_dim + trap_level. Ring
// operators rotate as U+ A U once and lift over the trap with a Kronecker
// identity; trap operators keep their 2x2 form.

struct ScenarioContext {
  ScenarioKind scenario = ScenarioKind::Ratchets;
  RingSpec ring;
  BathSpec bath;
  TrapSpec trap;
  ImperfectionSpec imperfections;
  bool with_trap = false;
  double omega_t = 0.0;

  EigenSystem ring_es;    // classified
  TransitionTable table;
  Matrix dipole_eig;      // J+ + J- in the ring eigenbasis
  Matrix j_plus_eig;
  RealVector energies;    // composite eigenenergies
  long dim = 0;

  int trap_dim() const { return with_trap ? 2 : 1; }

  static ScenarioContext create(ScenarioKind scenario, const RingSpec& ring, const BathSpec& bath,
                                const TrapSpec& trap, const ImperfectionSpec& imperfections = {}) {
    ring.validate();
    bath.validate();
    trap.validate();
    imperfections.validate();
    ScenarioContext ctx;
    ctx.scenario = scenario;
    ctx.ring = ring;
    ctx.bath = bath;
    ctx.trap = trap;
    ctx.imperfections = imperfections;
    if (scenario == ScenarioKind::NoPhonons) ctx.bath.gamma_p = 0.0;
    ctx.with_trap = trap.gamma_x > 0.0 || trap.gamma_t > 0.0;
    ctx.omega_t = resolve_trap_energy(trap, ring, scenario);
    if (scenario == ScenarioKind::ForcedDark && !ring.is_uniform(1e-12))
      throw std::invalid_argument(
          "forced-dark scenario is undefined for disordered rings (ladder vs forbidden "
          "transitions cannot be distinguished)");
    if (trap.extraction_mode == ExtractionMode::Collective && !ring.is_uniform(1e-12))
      throw std::invalid_argument("collective extraction requires a uniform ring");
    if (trap.extraction_site >= ring.n_sites)
      throw std::invalid_argument("trap.extraction_site out of range");

    const HilbertSpace hs = HilbertSpace::ring(ring.n_sites);
    ctx.ring_es = numeric_diagonalize(build_ring_hamiltonian(ring), hs.number_op());
    const Matrix jp = hs.collective_dipole(true);
    ctx.table = classify_states(ctx.ring_es, jp);
    ctx.j_plus_eig = ctx.ring_es.states.adjoint() * jp * ctx.ring_es.states;
    ctx.dipole_eig = ctx.j_plus_eig + ctx.j_plus_eig.adjoint();

    const long rd = ctx.ring_es.dim;
    ctx.dim = rd * ctx.trap_dim();
    ctx.energies = RealVector::Zero(ctx.dim);
    for (long r = 0; r < rd; ++r)
      for (int t = 0; t < ctx.trap_dim(); ++t)
        ctx.energies(r * ctx.trap_dim() + t) = ctx.ring_es.energies(r) + t * ctx.omega_t;
    return ctx;
  }

  /// Lifts an operator given in the ring eigenbasis over the trap factor.
  Matrix lift(const Matrix& ring_eig_op) const {
    if (!with_trap) return ring_eig_op;
    return kron(ring_eig_op, Matrix::Identity(2, 2));
  }

  /// Rotates a ring site-basis operator into the (lifted) eigenbasis.
  Matrix ring_to_eigen(const Matrix& site_basis_op) const {
    return lift(ring_es.states.adjoint() * site_basis_op * ring_es.states);
  }

  Matrix trap_raise() const {
    require(with_trap, "no trap factor in this context");
    return kron(Matrix::Identity(ring_es.dim, ring_es.dim), sigma_plus());
  }
};

/// Collective optical bath: single coupling J+ + J- against the photon field.
inline Matrix optical_dissipator(const ScenarioContext& ctx) {
  RedfieldContext rc;
  rc.energies = ctx.energies;
  rc.add_channel(ctx.lift(ctx.dipole_eig), PowerSpectrum{ctx.bath.gamma_o, ctx.bath.t_o});
  return build_redfield(rc);
}

/// Dipole operator with every ratchet <-> (band above) element removed, both
/// directions, ladder transitions untouched.
inline Matrix forced_dark_dipole(const ScenarioContext& ctx) {
  Matrix masked = ctx.dipole_eig;
  const auto& es = ctx.ring_es;
  for (long r = 0; r < es.dim; ++r) {
    if (es.labels[static_cast<size_t>(r)] != StateLabel::Ratchet) continue;
    for (long u = 0; u < es.dim; ++u) {
      if (es.band[static_cast<size_t>(u)] != es.band[static_cast<size_t>(r)] + 1) continue;
      masked(r, u) = 0.0;
      masked(u, r) = 0.0;
    }
  }
  return masked;
}

/// Optical Redfield tensor of the forced-dark scenario.
inline Matrix forced_dark_optical_dissipator(const ScenarioContext& ctx) {
  RedfieldContext rc;
  rc.energies = ctx.energies;
  rc.add_channel(ctx.lift(forced_dark_dipole(ctx)), PowerSpectrum{ctx.bath.gamma_o, ctx.bath.t_o});
  return build_redfield(rc);
}

/// Per-site sigma_z phonon baths; intraband only since sigma_z conserves the
/// exciton number.
inline Matrix phonon_dissipator(const ScenarioContext& ctx) {
  RedfieldContext rc;
  rc.energies = ctx.energies;
  const HilbertSpace hs = HilbertSpace::ring(ctx.ring.n_sites);
  const PowerSpectrum spectrum{ctx.bath.gamma_p, ctx.bath.t_p};
  for (int i = 0; i < ctx.ring.n_sites; ++i)
    rc.add_channel(ctx.ring_to_eigen(hs.site_op(sigma_z(), i)), spectrum);
  return build_redfield(rc);
}

/// Trap decay channel D[sigma_t^-] at gamma_t.
inline Matrix trap_decay_dissipator(const ScenarioContext& ctx, double gamma_t) {
  return lindblad_superop(ctx.trap_raise().adjoint(), gamma_t);
}

/// Incoherent hop from one ring site into the trap: D[sigma_site^- sigma_t^+].
inline Matrix single_site_extraction(const ScenarioContext& ctx) {
  const HilbertSpace hs = HilbertSpace::ring(ctx.ring.n_sites);
  const Matrix site_lower_eig =
      ctx.ring_es.states.adjoint() * hs.site_op(sigma_minus(), ctx.trap.extraction_site) *
      ctx.ring_es.states;
  const Matrix a = kron(site_lower_eig, sigma_plus());
  return lindblad_superop(a, ctx.trap.gamma_x);
}

/// Band-resolved extraction operators C_n = |edge_{n-1}><edge_n| x sigma_t^+.
/// Ratchets/FD drain the lowest state of each band, NP the highest; a
/// degenerate band edge contributes one channel per member of the subspace.
inline std::vector<Matrix> collective_extraction_ops(const ScenarioContext& ctx) {
  const bool lowest = ctx.scenario != ScenarioKind::NoPhonons;
  const auto& es = ctx.ring_es;
  std::vector<Matrix> ops;
  auto edge_group = [&](int band) {
    std::vector<int> members = es.band_members(band);
    std::vector<int> group;
    const int edge = lowest ? members.front() : members.back();
    for (int i : members)
      if (std::abs(es.energies(i) - es.energies(edge)) < 1e-12 * std::max(1.0, std::abs(es.energies(edge))))
        group.push_back(i);
    return group;
  };
  for (int n = 1; n <= es.max_band(); ++n) {
    const auto sources = edge_group(n);
    const auto targets = edge_group(n - 1);
    // Pair degenerate members one-to-one; the common case is 1 <-> 1.
    for (size_t m = 0; m < sources.size(); ++m) {
      const int src = sources[m];
      const int tgt = targets[std::min(m, targets.size() - 1)];
      Matrix e = Matrix::Zero(es.dim, es.dim);
      e(tgt, src) = 1.0;
      ops.push_back(kron(e, sigma_plus()));
    }
  }
  return ops;
}

inline Matrix collective_extraction(const ScenarioContext& ctx) {
  Matrix out = Matrix::Zero(ctx.dim * ctx.dim, ctx.dim * ctx.dim);
  for (const Matrix& c : collective_extraction_ops(ctx)) out += lindblad_superop(c, ctx.trap.gamma_x);
  return out;
}

inline Matrix extraction_dissipator(const ScenarioContext& ctx) {
  require(ctx.with_trap, "extraction requires the trap factor");
  return ctx.trap.extraction_mode == ExtractionMode::SingleSite ? single_site_extraction(ctx)
                                                                : collective_extraction(ctx);
}

/// Unidirectional per-site lowering at gamma_nr, identical in all scenarios.
inline Matrix non_radiative_dissipator(const ScenarioContext& ctx) {
  const HilbertSpace hs = HilbertSpace::ring(ctx.ring.n_sites);
  Matrix out = Matrix::Zero(ctx.dim * ctx.dim, ctx.dim * ctx.dim);
  if (ctx.imperfections.gamma_nr == 0.0) return out;
  for (int i = 0; i < ctx.ring.n_sites; ++i)
    out += lindblad_superop(ctx.ring_to_eigen(hs.site_op(sigma_minus(), i)),
                            ctx.imperfections.gamma_nr);
  return out;
}

/// Exciton-exciton annihilation: every state with two or more excitons decays
/// to the highest-energy band-1 (ladder) state.
inline Matrix eea_dissipator(const ScenarioContext& ctx) {
  Matrix out = Matrix::Zero(ctx.dim * ctx.dim, ctx.dim * ctx.dim);
  if (ctx.imperfections.gamma_eea == 0.0) return out;
  const auto& es = ctx.ring_es;
  const int bright1 = es.band_edge(1, /*lowest=*/false);
  for (long m = 0; m < es.dim; ++m) {
    if (es.band[static_cast<size_t>(m)] < 2) continue;
    Matrix e = Matrix::Zero(es.dim, es.dim);
    e(bright1, m) = 1.0;
    out += lindblad_superop(ctx.lift(e), ctx.imperfections.gamma_eea);
  }
  return out;
}

}  // namespace ratchet
