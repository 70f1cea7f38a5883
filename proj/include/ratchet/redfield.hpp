#pragma once

#include "ratchet/bath.hpp"
#include "ratchet/linalg.hpp"
#include "ratchet/superop.hpp"

#include <utility>
#include <vector>

namespace ratchet {

/// Eigenbasis data a Redfield tensor is assembled from: eigenenergies plus
/// bath coupling operators rotated into that basis.
struct RedfieldContext {
  RealVector energies;
  std::vector<std::pair<Matrix, PowerSpectrum>> channels;

  void add_channel(Matrix coupling_eigenbasis, PowerSpectrum spectrum) {
    channels.emplace_back(std::move(coupling_eigenbasis), spectrum);
  }
};

/// Full non-secular Bloch-Redfield generator in the eigenbasis, without the
/// unitary part. For each Hermitian coupling A and spectrum S, with
/// B = A .* S(E_col - E_row) and C = A .* S(E_row - E_col):
///
///   d rho_ab/dt  =  1/2 sum_cd [ B_ac A_db + A_ac C_db
///                                - delta_bd (A B)_ac - delta_ac (C A)_db ] rho_cd
///
/// Population transfer c -> a goes as |A_ac|^2 S(E_c - E_a), i.e. emission
/// weight gamma (N+1) downhill and absorption weight gamma N uphill. No
/// rotating-wave truncation is applied anywhere.
inline Matrix build_redfield(const RedfieldContext& ctx) {
  const long d = ctx.energies.size();
  Matrix out = Matrix::Zero(d * d, d * d);
  const Matrix id = Matrix::Identity(d, d);
  for (const auto& [a_eig, spectrum] : ctx.channels) {
    require(a_eig.rows() == d && a_eig.cols() == d, "build_redfield: coupling dimension mismatch");
    require(is_hermitian(a_eig, 1e-9), "build_redfield: coupling operator must be Hermitian");
    if (spectrum.gamma == 0.0) continue;
    Matrix b(d, d), c(d, d);
    for (long r = 0; r < d; ++r)
      for (long col = 0; col < d; ++col) {
        b(r, col) = a_eig(r, col) * spectrum(ctx.energies(col) - ctx.energies(r));
        c(r, col) = a_eig(r, col) * spectrum(ctx.energies(r) - ctx.energies(col));
      }
    const Matrix ab = a_eig * b;
    const Matrix ca = c * a_eig;
    out += 0.5 * (kron(a_eig.transpose(), b) + kron(c.transpose(), a_eig) -
                  kron(id, ab) - kron(ca.transpose(), id));
  }
  return out;
}

}  // namespace ratchet
