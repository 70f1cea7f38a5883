#pragma once

#include "ratchet/linalg.hpp"

#include <string>
#include <utility>

namespace ratchet {

// Superoperators act on column-stacked density matrices: vec(rho)[r + d*c] =
// rho(r,c), so vec(A rho B) = (B^T kron A) vec(rho).

inline Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

inline Matrix unvectorize(const Vector& v, long d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

/// Superoperator for rho -> a rho b.
inline Matrix sandwich_superop(const Matrix& a, const Matrix& b) {
  return kron(b.transpose(), a);
}

/// Superoperator for -i [h, rho].
inline Matrix commutator_superop(const Matrix& h) {
  const long d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  return Complex(0, -1) * (sandwich_superop(h, id) - sandwich_superop(id, h));
}

/// Lindblad channel rate * (A rho A+ - 1/2 {A+A, rho}) in vectorized form.
inline Matrix lindblad_superop(const Matrix& a, double rate) {
  require(rate >= 0.0, "lindblad_superop: rate must be >= 0");
  const long d = a.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ada = a.adjoint() * a;
  return rate * (sandwich_superop(a, a.adjoint()) -
                 0.5 * (sandwich_superop(ada, id) + sandwich_superop(id, ada)));
}

inline Matrix apply_superop(const Matrix& superop, const Matrix& rho) {
  return unvectorize(superop * vectorize(rho), rho.rows());
}

/// Max-norm of the trace functional composed with the map: zero for any
/// trace-preserving generator.
inline double trace_annihilation_error(const Matrix& superop) {
  const long d2 = superop.rows();
  const long d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(d2))));
  double worst = 0.0;
  for (long col = 0; col < d2; ++col) {
    Complex sum = 0.0;
    for (long a = 0; a < d; ++a) sum += superop(a + d * a, col);
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

/// Labelled superoperator, mostly for Liouvillian introspection.
struct Superoperator {
  Matrix m;
  std::string channel;
};

}  // namespace ratchet
