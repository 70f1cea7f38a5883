#pragma once

#include "ratchet/dissipators.hpp"
#include "ratchet/realrep.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ratchet {

struct AssembleOptions {
  bool keep_components = false;
};

/// Master-equation generator in the composite product eigenbasis, split into
/// the load-independent part and the unit-rate trap decay channel so the trap
/// rate can be swept without reassembly.
struct Liouvillian {
  ScenarioContext ctx;
  Matrix base;        // -i[H,.] + D_o + D_p + D_x (+ D_nr + D_eea)
  Matrix trap_decay;  // D[sigma_t^-] at unit rate; scale by gamma_t
  double gamma_t = 0.0;
  std::vector<Superoperator> components;  // populated when keep_components

  long dim() const { return ctx.dim; }
  Matrix total() const { return gamma_t == 0.0 ? base : Matrix(base + gamma_t * trap_decay); }
};

inline Liouvillian assemble_liouvillian(ScenarioKind scenario, const RingSpec& ring,
                                        const BathSpec& bath, const TrapSpec& trap,
                                        const ImperfectionSpec& imperfections = {},
                                        const AssembleOptions& opts = {}) {
  Liouvillian L;
  L.ctx = ScenarioContext::create(scenario, ring, bath, trap, imperfections);
  const ScenarioContext& ctx = L.ctx;
  const long d2 = ctx.dim * ctx.dim;

  Matrix h = Matrix::Zero(ctx.dim, ctx.dim);
  h.diagonal() = ctx.energies.cast<Complex>();
  L.base = commutator_superop(h);
  auto add = [&](Matrix part, const std::string& name) {
    L.base += part;
    if (opts.keep_components) L.components.push_back({std::move(part), name});
  };
  if (ctx.bath.gamma_o > 0.0)
    add(scenario == ScenarioKind::ForcedDark ? forced_dark_optical_dissipator(ctx)
                                             : optical_dissipator(ctx),
        "optical");
  if (ctx.bath.gamma_p > 0.0) add(phonon_dissipator(ctx), "phonon");
  if (ctx.with_trap && ctx.trap.gamma_x > 0.0) add(extraction_dissipator(ctx), "extraction");
  if (ctx.imperfections.gamma_nr > 0.0) add(non_radiative_dissipator(ctx), "non_radiative");
  if (ctx.imperfections.gamma_eea > 0.0) add(eea_dissipator(ctx), "eea");

  if (ctx.with_trap) {
    L.trap_decay = trap_decay_dissipator(ctx, 1.0);
    L.gamma_t = ctx.trap.gamma_t;
  } else {
    L.trap_decay = Matrix::Zero(d2, d2);
    L.gamma_t = 0.0;
  }
  return L;
}

struct SteadyState {
  Matrix rho_eigen;  // solve basis (composite product eigenbasis)
  Matrix rho_site;
  double residual = 0.0;          // max |L rho| over vectorized entries
  double trace_error = 0.0;       // |tr rho - 1| before exact renormalization
  double hermiticity_error = 0.0;
  double positivity_deficit = 0.0;  // most negative eigenvalue of rho
  std::optional<double> uniqueness_gap;
  std::vector<std::string> flags;

  bool flagged(const std::string& f) const {
    for (const auto& x : flags)
      if (x == f) return true;
    return false;
  }
};

/// Observable-grade copy of rho: small negative eigenvalues clamped to zero
/// and renormalized. Raw rho stays untouched in SteadyState.
inline Matrix clamp_positive(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> s(rho);
  RealVector ev = s.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  require(total > 0.0, "clamp_positive: state has no positive weight");
  return s.eigenvectors() * (ev / total).asDiagonal() * s.eigenvectors().adjoint();
}

inline double expectation(const Matrix& rho, const Matrix& op) {
  require(rho.rows() == op.rows() && rho.cols() == op.cols(), "expectation: dimension mismatch");
  const Complex v = (op * rho).trace();
  require(std::abs(v.imag()) < 1e-8 * std::max(1.0, std::abs(v.real())) + 1e-10,
          "expectation: non-real value for Hermitian observable");
  return v.real();
}

/// Reusable steady-state solver: real-basis representation built once, then
/// LU-factored per trap rate. Long-double iterative refinement pushes the
/// residual to the 1e-10*gamma_o criterion.
class SteadyStateEngine {
 public:
  explicit SteadyStateEngine(const Liouvillian& liouv)
      : L_(&liouv), basis_(liouv.dim()), d_(liouv.dim()) {
    base_real_ = basis_.to_real(liouv.base);
    trap_real_ = basis_.to_real(liouv.trap_decay);
  }

  SteadyState solve(double gamma_t, bool compute_gap = false) const {
    const long n = d_ * d_;
    RealMatrix full = base_real_;
    if (gamma_t != 0.0) full += gamma_t * trap_real_;

    RealMatrix m = full;
    m.row(0).setZero();
    for (long a = 0; a < d_; ++a) m(0, a) = 1.0;  // trace row over diagonal coordinates
    RealVector b = RealVector::Zero(n);
    b(0) = 1.0;

    Eigen::PartialPivLU<RealMatrix> lu(m);
    RealVector x = lu.solve(b);

    const double gamma_scale = std::max(L_->ctx.bath.gamma_o, 1e-12);
    const double target = 1e-10 * gamma_scale;
    double res = residual_long_double(full, x);
    for (int iter = 0; iter < 4 && res > 0.25 * target; ++iter) {
      RealVector r = refine_rhs(m, x, b);
      const RealVector dx = lu.solve(r);
      const RealVector x2 = x + dx;
      const double res2 = residual_long_double(full, x2);
      if (!(res2 < res)) break;
      x = x2;
      res = res2;
    }

    SteadyState out;
    const double tr = x.head(d_).sum();
    out.trace_error = std::abs(tr - 1.0);
    if (!(std::abs(tr) > 1e-6)) {
      out.flags.push_back("singular_solve");
      out.residual = std::numeric_limits<double>::infinity();
      return out;
    }
    x /= tr;
    out.residual = residual_long_double(full, x);
    out.rho_eigen = basis_.from_real_vec(x);
    out.hermiticity_error = max_abs(out.rho_eigen - out.rho_eigen.adjoint());

    const Matrix u = L_->ctx.with_trap
                         ? kron(L_->ctx.ring_es.states, Matrix::Identity(2, 2))
                         : L_->ctx.ring_es.states;
    out.rho_site = u * out.rho_eigen * u.adjoint();

    Eigen::SelfAdjointEigenSolver<Matrix> es(out.rho_eigen);
    out.positivity_deficit = es.eigenvalues().minCoeff();
    if (out.positivity_deficit < -1e-8)
      throw std::runtime_error("steady state positivity deficit " +
                               std::to_string(out.positivity_deficit) +
                               " below -1e-8: generator or parameters outside the model's "
                               "weak-coupling validity");
    if (out.residual > target) out.flags.push_back("residual_above_target");

    if (compute_gap) {
      out.uniqueness_gap = uniqueness_gap(full);
      if (*out.uniqueness_gap < 1e3 * std::max(out.residual, 1e-300))
        out.flags.push_back("ambiguous_steady_state");
    }
    return out;
  }

  /// Shifted inverse power iteration, the iterative mirror of the direct
  /// solve; used for cross-validation only.
  Matrix solve_power_iteration(double gamma_t, int iters = 8) const {
    const long n = d_ * d_;
    RealMatrix m = base_real_;
    if (gamma_t != 0.0) m += gamma_t * trap_real_;
    const double shift = 1e-9 * max_abs_real(m);
    m -= shift * RealMatrix::Identity(n, n);
    Eigen::PartialPivLU<RealMatrix> lu(m);
    RealVector x = basis_.to_real_vec(Matrix::Identity(d_, d_) / static_cast<double>(d_));
    for (int i = 0; i < iters; ++i) {
      x = lu.solve(x);
      const double tr = x.head(d_).sum();
      require(std::abs(tr) > 0.0, "power iteration collapsed to traceless direction");
      x /= tr;
    }
    return basis_.from_real_vec(x);
  }

  /// Second-smallest singular value of L; the smallest belongs to the
  /// stationary direction.
  double uniqueness_gap(const RealMatrix& full) const {
    Eigen::BDCSVD<RealMatrix> svd(full);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 2);
  }

  const Liouvillian& liouvillian() const { return *L_; }
  const HermitianBasis& basis() const { return basis_; }

 private:
  static double max_abs_real(const RealMatrix& a) { return a.cwiseAbs().maxCoeff(); }

  static double residual_long_double(const RealMatrix& a, const RealVector& x) {
    const long n = a.rows();
    long double worst = 0.0L;
    for (long i = 0; i < n; ++i) {
      long double acc = 0.0L;
      const double* row = a.data() + i;  // column-major: stride n
      for (long j = 0; j < n; ++j)
        acc += static_cast<long double>(row[j * n]) * static_cast<long double>(x(j));
      worst = std::max(worst, std::abs(acc));
    }
    return static_cast<double>(worst);
  }

  static RealVector refine_rhs(const RealMatrix& m, const RealVector& x, const RealVector& b) {
    const long n = m.rows();
    RealVector r(n);
    for (long i = 0; i < n; ++i) {
      long double acc = static_cast<long double>(b(i));
      const double* row = m.data() + i;
      for (long j = 0; j < n; ++j)
        acc -= static_cast<long double>(row[j * n]) * static_cast<long double>(x(j));
      r(i) = static_cast<double>(acc);
    }
    return r;
  }

  const Liouvillian* L_;
  HermitianBasis basis_;
  long d_;
  RealMatrix base_real_;
  RealMatrix trap_real_;
};

inline SteadyState steady_state(const Liouvillian& liouv, bool compute_gap = false) {
  SteadyStateEngine engine(liouv);
  return engine.solve(liouv.gamma_t, compute_gap);
}

struct PhotocellMetrics {
  double current_ev = 0.0;   // e * gamma_t * <rho_alpha>, e suppressed, eV units
  double voltage_v = 0.0;
  double power_ev2 = 0.0;    // current * voltage
  double current_per_gamma_o = 0.0;
  double power_per_gamma_o = 0.0;  // in gamma_o * eV
  double trap_alpha = 0.0;
  double trap_beta = 0.0;
  bool clamped = false;
};

/// Trap populations from the composite state (trap level = index parity in the
/// composite ordering).
inline std::pair<double, double> trap_populations(const Matrix& rho_eigen) {
  const long dim = rho_eigen.rows();
  double alpha = 0.0, beta = 0.0;
  for (long i = 0; i < dim; ++i)
    (i % 2 == 1 ? alpha : beta) += rho_eigen(i, i).real();
  return {alpha, beta};
}

inline PhotocellMetrics photocell_metrics(const SteadyState& ss, double gamma_t, double omega_t,
                                          const BathSpec& bath) {
  const Matrix rho = clamp_positive(ss.rho_eigen);
  auto [alpha, beta] = trap_populations(rho);
  PhotocellMetrics m;
  m.trap_alpha = alpha;
  m.trap_beta = beta;
  if (alpha < 1e-300) {
    alpha = 1e-300;
    m.clamped = true;
  }
  if (beta < 1e-300) {
    beta = 1e-300;
    m.clamped = true;
  }
  m.current_ev = gamma_t * m.trap_alpha;
  m.voltage_v = omega_t + k_boltzmann_ev * bath.t_p * (std::log(alpha) - std::log(beta));
  m.power_ev2 = m.current_ev * m.voltage_v;
  m.current_per_gamma_o = m.current_ev / bath.gamma_o;
  m.power_per_gamma_o = m.power_ev2 / bath.gamma_o;
  return m;
}

/// Net extraction flux into the excited trap state, for the current
/// continuity (Kirchhoff) check against e*gamma_t*<rho_alpha>.
inline double extraction_flux(const ScenarioContext& ctx, const Matrix& rho_eigen) {
  require(ctx.with_trap, "extraction_flux: no trap");
  double flux = 0.0;
  if (ctx.trap.extraction_mode == ExtractionMode::SingleSite) {
    const HilbertSpace hs = HilbertSpace::ring(ctx.ring.n_sites);
    const Matrix a = kron(ctx.ring_es.states.adjoint() *
                              hs.site_op(sigma_minus(), ctx.trap.extraction_site) *
                              ctx.ring_es.states,
                          sigma_plus());
    flux = ctx.trap.gamma_x * expectation(rho_eigen, (a.adjoint() * a).eval());
  } else {
    for (const Matrix& c : collective_extraction_ops(ctx))
      flux += ctx.trap.gamma_x * expectation(rho_eigen, (c.adjoint() * c).eval());
  }
  return flux;
}

struct TrapRateOptimum {
  double gamma_t = 0.0;
  PhotocellMetrics metrics;
  SteadyState state;
  bool degenerate_objective = false;
  int evaluations = 0;
};

/// Maximizes output power over the trap decay rate: >= 25-point log grid then
/// golden-section refinement on log(gamma_t) until the relative power change
/// drops below 1e-4. The optimizer objective clamps negative power to zero;
/// reported metrics keep the raw value.
inline TrapRateOptimum optimize_trap_rate(const Liouvillian& liouv, double gamma_t_min,
                                          double gamma_t_max, int coarse_points = 25) {
  require(gamma_t_min > 0 && gamma_t_max > gamma_t_min, "optimize_trap_rate: bad search range");
  require(coarse_points >= 25, "optimize_trap_rate: need at least 25 coarse points");
  SteadyStateEngine engine(liouv);
  const double omega_t = liouv.ctx.omega_t;
  const BathSpec& bath = liouv.ctx.bath;

  TrapRateOptimum best;
  int evals = 0;
  auto power_at = [&](double g) {
    const SteadyState ss = engine.solve(g);
    const PhotocellMetrics m = photocell_metrics(ss, g, omega_t, bath);
    ++evals;
    if (m.power_ev2 > best.metrics.power_ev2 || evals == 1) {
      best.gamma_t = g;
      best.metrics = m;
      best.state = ss;
    }
    return std::max(m.power_ev2, 0.0);
  };

  const double la = std::log(gamma_t_min), lb = std::log(gamma_t_max);
  std::vector<double> grid_power(static_cast<size_t>(coarse_points));
  int best_idx = 0;
  for (int i = 0; i < coarse_points; ++i) {
    const double g = std::exp(la + (lb - la) * i / (coarse_points - 1));
    grid_power[static_cast<size_t>(i)] = power_at(g);
    if (grid_power[static_cast<size_t>(i)] > grid_power[static_cast<size_t>(best_idx)]) best_idx = i;
  }
  const double peak = grid_power[static_cast<size_t>(best_idx)];
  double spread = 0.0;
  for (double p : grid_power) spread = std::max(spread, std::abs(p - peak));
  if (peak <= 0.0 || spread < 1e-14 * std::max(peak, 1e-300)) {
    best.degenerate_objective = true;
    best.evaluations = evals;
    return best;
  }

  const double step = (lb - la) / (coarse_points - 1);
  double lo = la + step * std::max(0, best_idx - 1);
  double hi = la + step * std::min(coarse_points - 1, best_idx + 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = power_at(std::exp(x1)), f2 = power_at(std::exp(x2));
  double prev_best = std::max(f1, f2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = power_at(std::exp(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = power_at(std::exp(x1));
    }
    const double cur = std::max(f1, f2);
    if (std::abs(cur - prev_best) < 1e-4 * std::max(cur, 1e-300) && it >= 3) break;
    prev_best = std::max(prev_best, cur);
  }
  best.evaluations = evals;
  return best;
}

}  // namespace ratchet
