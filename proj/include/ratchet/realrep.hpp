#pragma once

#include "ratchet/linalg.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace ratchet {

// Hermiticity-preserving superoperators are real-linear maps on the space of
// Hermitian matrices. In the orthonormal basis
//   { E_aa,  (E_ab + E_ba)/sqrt2,  i(E_ab - E_ba)/sqrt2  (a < b) }
// such a map is a real d^2 x d^2 matrix, which makes steady-state LU solves
// about 5x cheaper than in the complex vectorized form and returns exactly
// Hermitian solutions.
struct HermitianBasis {
  long d = 0;

  struct Entry {
    long row, col;
    Complex coeff;
  };
  // up to two (row, col, coeff) entries per basis element
  std::vector<std::array<Entry, 2>> entries;
  std::vector<int> entry_count;

  explicit HermitianBasis(long dim) : d(dim) {
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    entries.resize(static_cast<size_t>(d * d));
    entry_count.resize(static_cast<size_t>(d * d));
    for (long a = 0; a < d; ++a) {
      entries[static_cast<size_t>(a)][0] = {a, a, Complex(1, 0)};
      entry_count[static_cast<size_t>(a)] = 1;
    }
    long m = d;
    for (long a = 0; a < d; ++a)
      for (long b = a + 1; b < d; ++b) {
        entries[static_cast<size_t>(m)][0] = {a, b, Complex(inv_r2, 0)};
        entries[static_cast<size_t>(m)][1] = {b, a, Complex(inv_r2, 0)};
        entry_count[static_cast<size_t>(m)] = 2;
        ++m;
        entries[static_cast<size_t>(m)][0] = {a, b, Complex(0, inv_r2)};
        entries[static_cast<size_t>(m)][1] = {b, a, Complex(0, -inv_r2)};
        entry_count[static_cast<size_t>(m)] = 2;
        ++m;
      }
  }

  long vec_index(long r, long c) const { return r + d * c; }

  /// Real matrix of a Hermiticity-preserving complex superoperator.
  RealMatrix to_real(const Matrix& superop) const {
    const long n = d * d;
    RealMatrix out(n, n);
    for (long mcol = 0; mcol < n; ++mcol) {
      const auto& en = entries[static_cast<size_t>(mcol)];
      const int cn = entry_count[static_cast<size_t>(mcol)];
      for (long mrow = 0; mrow < n; ++mrow) {
        const auto& em = entries[static_cast<size_t>(mrow)];
        const int cm = entry_count[static_cast<size_t>(mrow)];
        Complex acc = 0.0;
        for (int i = 0; i < cm; ++i)
          for (int j = 0; j < cn; ++j)
            acc += std::conj(em[static_cast<size_t>(i)].coeff) * en[static_cast<size_t>(j)].coeff *
                   superop(vec_index(em[static_cast<size_t>(i)].row, em[static_cast<size_t>(i)].col),
                           vec_index(en[static_cast<size_t>(j)].row, en[static_cast<size_t>(j)].col));
        out(mrow, mcol) = acc.real();
      }
    }
    return out;
  }

  RealVector to_real_vec(const Matrix& rho) const {
    RealVector x(d * d);
    for (long m = 0; m < d * d; ++m) {
      Complex acc = 0.0;
      for (int i = 0; i < entry_count[static_cast<size_t>(m)]; ++i) {
        const auto& e = entries[static_cast<size_t>(m)][static_cast<size_t>(i)];
        acc += std::conj(e.coeff) * rho(e.row, e.col);
      }
      x(m) = acc.real();
    }
    return x;
  }

  /// Reconstruction; exactly Hermitian by construction.
  Matrix from_real_vec(const RealVector& x) const {
    Matrix rho = Matrix::Zero(d, d);
    for (long m = 0; m < d * d; ++m)
      for (int i = 0; i < entry_count[static_cast<size_t>(m)]; ++i) {
        const auto& e = entries[static_cast<size_t>(m)][static_cast<size_t>(i)];
        rho(e.row, e.col) += e.coeff * x(m);
      }
    return rho;
  }
};

}  // namespace ratchet
