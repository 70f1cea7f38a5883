#pragma once

#include "ratchet/constants.hpp"
#include "ratchet/hilbert.hpp"
#include "ratchet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace ratchet {

// Ring diagonalization via Jordan-Wigner + Fourier. Exciton-number parity
// selects the boundary condition, hence the allowed phase factors:
//   n odd  -> periodic,     k = 2*pi*j/N
//   n even -> antiperiodic, k = pi*(2j+1)/N
// Mode energy is omega + 2S cos k; the fully symmetric k=0 single-exciton
// state is the bright one at omega + 2S.

enum class KParity { Even, Odd };

struct KSet {
  std::vector<double> ks;  // distinct, sorted, in [0, 2pi)
  KParity parity = KParity::Odd;

  int excitons() const { return static_cast<int>(ks.size()); }
  double momentum() const { return std::accumulate(ks.begin(), ks.end(), 0.0); }
};

inline std::vector<double> k_values(int n_sites, int n_excitons) {
  require(n_sites >= 2, "k_values: n_sites must be >= 2");
  require(n_excitons >= 0 && n_excitons <= n_sites, "k_values: exciton count out of range");
  std::vector<double> ks(static_cast<size_t>(n_sites));
  const bool odd = (n_excitons % 2) == 1;
  for (int j = 0; j < n_sites; ++j)
    ks[static_cast<size_t>(j)] = odd ? 2.0 * pi * j / n_sites : pi * (2.0 * j + 1.0) / n_sites;
  return ks;
}

inline double mode_energy(double omega, double hopping, double k) {
  return omega + 2.0 * hopping * std::cos(k);
}

struct AnalyticState {
  KSet kset;
  double energy = 0.0;
  int band = 0;
};

namespace detail {
inline void combinations(int n, int r, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  if (r == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}
}  // namespace detail

/// All 2^N analytic (KSet, energy) pairs of the uniform ring, grouped by band
/// and sorted by energy within each band.
inline std::vector<AnalyticState> analytic_spectrum(int n_sites, double omega, double hopping) {
  std::vector<AnalyticState> states;
  states.reserve(1ULL << n_sites);
  for (int n = 0; n <= n_sites; ++n) {
    const auto ks = k_values(n_sites, n);
    std::vector<AnalyticState> band;
    detail::combinations(n_sites, n, [&](const std::vector<int>& idx) {
      AnalyticState st;
      st.band = n;
      st.kset.parity = (n % 2 == 0) ? KParity::Even : KParity::Odd;
      for (int i : idx) {
        st.kset.ks.push_back(ks[static_cast<size_t>(i)]);
        st.energy += mode_energy(omega, hopping, ks[static_cast<size_t>(i)]);
      }
      band.push_back(std::move(st));
    });
    std::stable_sort(band.begin(), band.end(),
                     [](const AnalyticState& a, const AnalyticState& b) { return a.energy < b.energy; });
    for (auto& st : band) states.push_back(std::move(st));
  }
  return states;
}

/// Explicit eigenvector |K> = c+_{k1} ... c+_{kn} |0> in the site basis,
/// via string-dressed fermion modes. Serves as the brute-force oracle for
/// transition matrix elements.
inline Vector jw_state_vector(int n_sites, const KSet& kset) {
  const HilbertSpace hs = HilbertSpace::ring(n_sites);
  const long d = hs.dim();
  // c+_j = s+_j * prod_{m<j} exp(i pi n_m); the phase factor is diag(1,-1).
  Matrix phase = Matrix::Identity(2, 2);
  phase(1, 1) = -1.0;
  std::vector<Matrix> cdag(static_cast<size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    Matrix m = hs.site_op(sigma_plus(), j);
    for (int l = 0; l < j; ++l) m = m * hs.site_op(phase, l);
    cdag[static_cast<size_t>(j)] = std::move(m);
  }
  Vector v = Vector::Zero(d);
  v(0) = 1.0;
  for (auto it = kset.ks.rbegin(); it != kset.ks.rend(); ++it) {
    Matrix ck = Matrix::Zero(d, d);
    for (int j = 0; j < n_sites; ++j)
      ck += std::exp(Complex(0.0, *it * j)) * cdag[static_cast<size_t>(j)];
    v = (ck * v / std::sqrt(static_cast<double>(n_sites))).eval();
  }
  return v;
}

enum class StateLabel { Ground, BrightConnected, Ratchet, Dark };

inline std::string to_string(StateLabel l) {
  switch (l) {
    case StateLabel::Ground: return "ground";
    case StateLabel::BrightConnected: return "bright";
    case StateLabel::Ratchet: return "ratchet";
    case StateLabel::Dark: return "dark";
  }
  return "?";
}

/// Eigen-decomposition with per-state exciton band labels. Eigenvalues ascend
/// within each band; columns of `states` are the eigenvectors.
struct EigenSystem {
  RealVector energies;
  Matrix states;
  std::vector<int> band;
  std::vector<StateLabel> labels;  // filled by classify_states
  long dim = 0;

  std::vector<int> band_members(int n) const {
    std::vector<int> out;
    for (long i = 0; i < dim; ++i)
      if (band[static_cast<size_t>(i)] == n) out.push_back(static_cast<int>(i));
    return out;
  }
  int max_band() const { return band.empty() ? 0 : *std::max_element(band.begin(), band.end()); }

  /// Index of the lowest- or highest-energy state of a band (energies are
  /// sorted ascending within bands).
  int band_edge(int n, bool lowest) const {
    auto m = band_members(n);
    require(!m.empty(), "band_edge: empty band");
    return lowest ? m.front() : m.back();
  }
};

/// Hermitian eigendecomposition with band assignment from a number operator
/// that is diagonal in the computational basis. Diagonalizing each band block
/// separately keeps band labels exact and degenerate subspaces orthonormal.
inline EigenSystem numeric_diagonalize(const Matrix& h, const Matrix& number_op) {
  require(h.rows() == h.cols() && h.rows() == number_op.rows(), "dimension mismatch");
  require(is_hermitian(h, 1e-10), "numeric_diagonalize: Hamiltonian not Hermitian");
  require(max_abs(commutator(h, number_op)) < 1e-9,
          "numeric_diagonalize: [H, N] != 0, band structure undefined");
  const long d = h.rows();
  // The number operator must be diagonal with near-integer entries.
  std::vector<int> basis_band(static_cast<size_t>(d));
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j)
      if (i != j)
        require(std::abs(number_op(i, j)) < 1e-12, "number operator not diagonal in site basis");
    const double v = number_op(i, i).real();
    require(std::abs(v - std::round(v)) < 1e-6, "number operator has non-integer spectrum");
    basis_band[static_cast<size_t>(i)] = static_cast<int>(std::llround(v));
  }
  const int top = *std::max_element(basis_band.begin(), basis_band.end());

  EigenSystem es;
  es.dim = d;
  es.energies = RealVector::Zero(d);
  es.states = Matrix::Zero(d, d);
  es.band.resize(static_cast<size_t>(d));
  long col = 0;
  for (int n = 0; n <= top; ++n) {
    std::vector<long> members;
    for (long i = 0; i < d; ++i)
      if (basis_band[static_cast<size_t>(i)] == n) members.push_back(i);
    if (members.empty()) continue;
    const long m = static_cast<long>(members.size());
    Matrix block(m, m);
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) block(a, b) = h(members[static_cast<size_t>(a)], members[static_cast<size_t>(b)]);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    require(solver.info() == Eigen::Success, "eigensolver failed");
    for (long s = 0; s < m; ++s, ++col) {
      es.energies(col) = solver.eigenvalues()(s);
      es.band[static_cast<size_t>(col)] = n;
      for (long a = 0; a < m; ++a)
        es.states(members[static_cast<size_t>(a)], col) = solver.eigenvectors()(a, s);
    }
  }
  return es;
}

/// |<b| J^+ |a>|^2 from numeric eigenvectors. The only rate source for
/// disordered rings, and the oracle for the analytic expression.
inline double transition_rate_numeric(const EigenSystem& es, const Matrix& j_plus, int a, int b) {
  const Complex amp = es.states.col(b).dot(j_plus * es.states.col(a));
  return std::norm(amp);
}

/// Analytic |<K'| J^+ |K>|^2 between adjacent bands of the uniform ring
/// (Slater-determinant expression). Product accumulated in the log domain.
inline double transition_rate_analytic(const KSet& kset, const KSet& kset_to, int n_sites) {
  const int n = kset.excitons();
  require(kset_to.excitons() == n + 1, "transition_rate_analytic: |K'| must equal |K|+1");
  // Momentum conservation: sum k' = sum k (mod 2pi).
  const double dm = (kset_to.momentum() - kset.momentum()) / (2.0 * pi);
  if (std::abs(dm - std::round(dm)) > 1e-9) return 0.0;

  long double log_mag = n * std::log(2.0L) + (0.5L - n) * std::log(static_cast<long double>(n_sites));
  auto pair_factor = [](double ka, double kb, double sign) {
    const Complex f = std::exp(Complex(0, sign * ka)) - std::exp(Complex(0, sign * kb));
    return f;
  };
  for (int i = 0; i < n; ++i)
    for (int ip = i + 1; ip < n; ++ip)
      log_mag += std::log(static_cast<long double>(std::abs(pair_factor(kset.ks[static_cast<size_t>(i)], kset.ks[static_cast<size_t>(ip)], +1.0))));
  for (int j = 0; j < n + 1; ++j)
    for (int jp = j + 1; jp < n + 1; ++jp)
      log_mag += std::log(static_cast<long double>(std::abs(pair_factor(kset_to.ks[static_cast<size_t>(j)], kset_to.ks[static_cast<size_t>(jp)], -1.0))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n + 1; ++j) {
      const Complex f = 1.0 - std::exp(Complex(0, kset_to.ks[static_cast<size_t>(j)] - kset.ks[static_cast<size_t>(i)]));
      require(std::abs(f) > 1e-12,
              "transition_rate_analytic: singular denominator (coincident k across parity sectors)");
      log_mag -= std::log(static_cast<long double>(std::abs(f)));
    }
  return static_cast<double>(std::exp(2.0L * log_mag));
}

/// Dimensionless dipole weights between adjacent bands plus per-state sums.
/// weight(a,b) = |<b|J^+|a>|^2 for band(b) = band(a)+1, else 0.
struct TransitionTable {
  RealMatrix weight;
  RealVector gamma_plus;
  RealVector gamma_minus;
};

inline TransitionTable build_transition_table(const EigenSystem& es, const Matrix& j_plus) {
  TransitionTable t;
  const long d = es.dim;
  t.weight = RealMatrix::Zero(d, d);
  t.gamma_plus = RealVector::Zero(d);
  t.gamma_minus = RealVector::Zero(d);
  const Matrix jp_eig = es.states.adjoint() * j_plus * es.states;
  for (long a = 0; a < d; ++a)
    for (long b = 0; b < d; ++b) {
      if (es.band[static_cast<size_t>(b)] != es.band[static_cast<size_t>(a)] + 1) continue;
      const double w = std::norm(jp_eig(b, a));
      t.weight(a, b) = w;
      t.gamma_plus(a) += w;
      t.gamma_minus(b) += w;
    }
  return t;
}

/// Threshold separating analytic zeros (numerically ~1e-14) from physical
/// dipole weights (>= 0.1).
inline constexpr double ratchet_threshold = 1e-9;

/// Labels each state from its dipole sums:
/// ratchet = absorbs but cannot emit, dark = neither, ground stays ground.
inline TransitionTable classify_states(EigenSystem& es, const Matrix& j_plus,
                                       double tau = ratchet_threshold) {
  TransitionTable t = build_transition_table(es, j_plus);
  es.labels.resize(static_cast<size_t>(es.dim));
  for (long i = 0; i < es.dim; ++i) {
    const bool up = t.gamma_plus(i) > tau;
    const bool down = t.gamma_minus(i) > tau;
    StateLabel l;
    if (es.band[static_cast<size_t>(i)] == 0)
      l = StateLabel::Ground;
    else if (down)
      l = StateLabel::BrightConnected;
    else
      l = up ? StateLabel::Ratchet : StateLabel::Dark;
    es.labels[static_cast<size_t>(i)] = l;
  }
  return t;
}

}  // namespace ratchet
