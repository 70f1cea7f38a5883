#pragma once

#include "ratchet/hilbert.hpp"
#include "ratchet/linalg.hpp"
#include "ratchet/specs.hpp"

namespace ratchet {

/// H_s = sum_i eps_i s+_i s-_i + S sum_i (s+_i s-_{i+1} + h.c.), periodic.
/// Built on the ring factor only; lift with HilbertSpace::lift_ring when a
/// trap is attached.
inline Matrix build_ring_hamiltonian(const RingSpec& spec) {
  spec.validate();
  const HilbertSpace hs = HilbertSpace::ring(spec.n_sites);
  Matrix h = Matrix::Zero(hs.dim(), hs.dim());
  const Matrix sp = sigma_plus(), sm = sigma_minus();
  for (int i = 0; i < spec.n_sites; ++i) {
    h += spec.site_energy(i) * hs.site_op(sp, i) * hs.site_op(sm, i);
    const int j = (i + 1) % spec.n_sites;
    Matrix hop = hs.site_op(sp, i) * hs.site_op(sm, j);
    h += spec.hopping * (hop + hop.adjoint());
  }
  return h;
}

/// omega_t s+_t s-_t on the trap factor, identity on the ring.
inline Matrix build_trap_hamiltonian(const TrapSpec& spec, int n_sites, double omega_t) {
  spec.validate();
  const HilbertSpace hs = HilbertSpace::ring_with_trap(n_sites);
  return omega_t * hs.trap_op(sigma_plus() * sigma_minus());
}

/// J^+ (or J^-) over the ring, identity on trap when attached.
inline Matrix build_collective_dipole(const RingSpec& spec, bool raising, bool with_trap = false) {
  spec.validate();
  const HilbertSpace hs =
      with_trap ? HilbertSpace::ring_with_trap(spec.n_sites) : HilbertSpace::ring(spec.n_sites);
  return hs.collective_dipole(raising);
}

/// Three-level ring for exciton-exciton annihilation analysis:
/// H = omega sum_i (s+s- + 2 eta+eta-) + S sum_i (s+_i s-_{i+1} + s+_i eta-_{i+1} + h.c.).
/// Uses the uniform ring energy; the |D> level sits at exactly twice it.
inline Matrix build_three_level_hamiltonian(const RingSpec& spec) {
  spec.validate();
  require(spec.n_sites <= 8, "three-level model limited to n_sites <= 8 (3^N dense)");
  require(spec.is_uniform(), "three-level model assumes a uniform ring");
  const double omega = spec.site_energy(0);
  const HilbertSpace hs = HilbertSpace::ring(spec.n_sites, 3);
  const Matrix sp = sigma_plus3(), ep = eta_plus();
  Matrix h = Matrix::Zero(hs.dim(), hs.dim());
  for (int i = 0; i < spec.n_sites; ++i) {
    h += omega * (hs.site_op(sp, i) * hs.site_op(sp.adjoint(), i) +
                  2.0 * hs.site_op(ep, i) * hs.site_op(ep.adjoint(), i));
    const int j = (i + 1) % spec.n_sites;
    Matrix t = hs.site_op(sp, i) * hs.site_op(sp.adjoint(), j) +
               hs.site_op(sp, i) * hs.site_op(ep.adjoint(), j);
    h += spec.hopping * (t + t.adjoint());
  }
  return h;
}

}  // namespace ratchet
