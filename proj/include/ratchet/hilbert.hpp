#pragma once

#include "ratchet/linalg.hpp"
#include "ratchet/specs.hpp"

namespace ratchet {

// Basis conventions, frozen once and tested:
//  * per-site levels: index 0 = ground, 1 = excited (and 2 = doubly excited for
//    the three-level model);
//  * ring basis index is little-endian in the site index (site 0 is the least
//    significant digit);
//  * composite index = ring_index * trap_dim + trap_index (ring factor first).

inline Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}
inline Matrix sigma_minus() { return sigma_plus().adjoint().eval(); }
inline Matrix sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

/// eta^+ = |D><E| on the three-level site basis {G, E, D}.
inline Matrix eta_plus() {
  Matrix m = Matrix::Zero(3, 3);
  m(2, 1) = 1.0;
  return m;
}
inline Matrix sigma_plus3() {
  Matrix m = Matrix::Zero(3, 3);
  m(1, 0) = 1.0;
  return m;
}

/// Dense operator layout over a ring of n_sites d-level systems and an
/// optional two-level trap appended as the last tensor factor.
struct HilbertSpace {
  int n_sites = 0;
  int levels = 2;    // per ring site
  int trap_dim = 1;  // 1 = no trap factor, 2 = trap attached

  static HilbertSpace ring(int n_sites, int levels = 2) { return {n_sites, levels, 1}; }
  static HilbertSpace ring_with_trap(int n_sites) { return {n_sites, 2, 2}; }

  long ring_dim() const {
    long d = 1;
    for (int i = 0; i < n_sites; ++i) d *= levels;
    return d;
  }
  long dim() const { return ring_dim() * trap_dim; }

  /// op acting on ring site i, identity elsewhere (including trap).
  Matrix site_op(const Matrix& op, int i) const {
    require(i >= 0 && i < n_sites, "site index out of range");
    require(op.rows() == levels && op.cols() == levels, "site operator dimension mismatch");
    long below = 1;  // sites < i (less significant)
    for (int j = 0; j < i; ++j) below *= levels;
    long above = ring_dim() / (below * levels);
    Matrix m = kron(Matrix::Identity(above, above), kron(op, Matrix::Identity(below, below)));
    if (trap_dim > 1) m = kron(m, Matrix::Identity(trap_dim, trap_dim)).eval();
    return m;
  }

  /// op on the trap factor, identity on the ring.
  Matrix trap_op(const Matrix& op) const {
    require(trap_dim == 2, "no trap factor in this space");
    require(op.rows() == 2 && op.cols() == 2, "trap operator dimension mismatch");
    return kron(Matrix::Identity(ring_dim(), ring_dim()), op);
  }

  /// Lifts a ring-only operator into this space (identity on trap).
  Matrix lift_ring(const Matrix& ring_op) const {
    require(ring_op.rows() == ring_dim(), "ring operator dimension mismatch");
    if (trap_dim == 1) return ring_op;
    return kron(ring_op, Matrix::Identity(trap_dim, trap_dim));
  }

  /// J^+ or J^- summed over ring sites.
  Matrix collective_dipole(bool raising) const {
    Matrix base = levels == 2 ? sigma_plus() : sigma_plus3();
    if (!raising) base = base.adjoint().eval();
    Matrix out = Matrix::Zero(dim(), dim());
    for (int i = 0; i < n_sites; ++i) out += site_op(base, i);
    return out;
  }

  /// Excitation counter; |D> counts as two in the three-level model.
  Matrix number_op() const {
    Matrix out = Matrix::Zero(dim(), dim());
    if (levels == 2) {
      for (int i = 0; i < n_sites; ++i) out += site_op(sigma_plus() * sigma_minus(), i);
    } else {
      Matrix w = Matrix::Zero(3, 3);
      w(1, 1) = 1.0;
      w(2, 2) = 2.0;
      for (int i = 0; i < n_sites; ++i) out += site_op(w, i);
    }
    return out;
  }
};

}  // namespace ratchet
