#include <catch2/catch_amalgamated.hpp>

#include "ratchet/hamiltonians.hpp"
#include "ratchet/spectral.hpp"

#include <cmath>
#include <map>
#include <vector>

using namespace ratchet;

TEST_CASE("k values per parity sector", "[spectral]") {
  auto odd4 = k_values(4, 1);
  std::vector<double> expect_odd = {0, pi / 2, pi, 3 * pi / 2};
  for (size_t i = 0; i < 4; ++i) CHECK_THAT(odd4[i], Catch::Matchers::WithinAbs(expect_odd[i], 1e-15));
  auto even4 = k_values(4, 2);
  std::vector<double> expect_even = {pi / 4, 3 * pi / 4, 5 * pi / 4, 7 * pi / 4};
  for (size_t i = 0; i < 4; ++i) CHECK_THAT(even4[i], Catch::Matchers::WithinAbs(expect_even[i], 1e-15));
  auto n2 = k_values(2, 1);
  CHECK_THAT(n2[0], Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(n2[1], Catch::Matchers::WithinAbs(pi, 1e-15));
  CHECK_THROWS(k_values(4, 5));
}

TEST_CASE("analytic spectrum: N=4 band examples", "[spectral]") {
  const double s = 0.02, omega = 1.8 - 2 * s;
  auto states = analytic_spectrum(4, omega, s);
  REQUIRE(states.size() == 16);
  CHECK_THAT(states[0].energy, Catch::Matchers::WithinAbs(0.0, 1e-15));  // empty K set
  std::vector<double> band1, band2;
  for (const auto& st : states) {
    if (st.band == 1) band1.push_back(st.energy);
    if (st.band == 2) band2.push_back(st.energy);
  }
  REQUIRE(band1.size() == 4);
  CHECK_THAT(band1[0], Catch::Matchers::WithinAbs(omega - 2 * s, 1e-13));
  CHECK_THAT(band1[1], Catch::Matchers::WithinAbs(omega, 1e-13));
  CHECK_THAT(band1[2], Catch::Matchers::WithinAbs(omega, 1e-13));
  CHECK_THAT(band1[3], Catch::Matchers::WithinAbs(omega + 2 * s, 1e-13));
  const double r2 = std::sqrt(2.0);
  CHECK_THAT(band2.front(), Catch::Matchers::WithinAbs(2 * omega - 2 * r2 * s, 1e-13));
  CHECK_THAT(band2.back(), Catch::Matchers::WithinAbs(2 * omega + 2 * r2 * s, 1e-13));
}

TEST_CASE("analytic eigenvalues match numeric diagonalization, N=4..6", "[spectral][acceptance-oracle]") {
  const double s = 0.03, omega = 1.74;
  for (int n : {4, 5, 6}) {
    auto analytic = analytic_spectrum(n, omega, s);
    const EigenSystem es =
        numeric_diagonalize(build_ring_hamiltonian(RingSpec::uniform(n, omega, s)),
                            HilbertSpace::ring(n).number_op());
    // Both collections are grouped by band with ascending energies.
    std::map<int, std::vector<double>> by_band_analytic, by_band_numeric;
    for (const auto& st : analytic) by_band_analytic[st.band].push_back(st.energy);
    for (long i = 0; i < es.dim; ++i)
      by_band_numeric[es.band[static_cast<size_t>(i)]].push_back(es.energies(i));
    for (auto& [bandn, evs] : by_band_analytic) {
      auto& num = by_band_numeric[bandn];
      REQUIRE(num.size() == evs.size());
      for (size_t i = 0; i < evs.size(); ++i) {
        const double scale = std::max(1.0, std::abs(evs[i]));
        CHECK_THAT(num[i], Catch::Matchers::WithinAbs(evs[i], 1e-10 * scale));
      }
    }
  }
}

TEST_CASE("JW states are eigenstates with the analytic energy", "[spectral]") {
  const double s = 0.05, omega = 1.7;
  for (int n : {4, 5}) {
    const Matrix h = build_ring_hamiltonian(RingSpec::uniform(n, omega, s));
    for (const auto& st : analytic_spectrum(n, omega, s)) {
      const Vector v = jw_state_vector(n, st.kset);
      CHECK_THAT(v.squaredNorm(), Catch::Matchers::WithinAbs(1.0, 1e-10));
      CHECK(max_abs(Matrix(h * v - st.energy * v)) < 1e-10);
    }
  }
}

TEST_CASE("transition rates: analytic equals brute force on JW states", "[spectral][acceptance-oracle]") {
  for (int n : {4, 5, 6}) {
    const Matrix jp = HilbertSpace::ring(n).collective_dipole(true);
    auto states = analytic_spectrum(n, 1.76, 0.02);
    for (const auto& a : states) {
      if (a.band == n) continue;
      const Vector va = jw_state_vector(n, a.kset);
      for (const auto& b : states) {
        if (b.band != a.band + 1) continue;
        const Vector vb = jw_state_vector(n, b.kset);
        const double brute = std::norm(vb.dot(jp * va));
        const double analytic = transition_rate_analytic(a.kset, b.kset, n);
        CHECK_THAT(analytic, Catch::Matchers::WithinAbs(brute, 1e-9));
      }
    }
  }
}

TEST_CASE("ground-to-band-1 rates: only the symmetric state couples", "[spectral]") {
  const int n = 4;
  KSet ground{{}, KParity::Even};
  KSet bright{{0.0}, KParity::Odd};
  KSet other{{pi / 2}, KParity::Odd};
  CHECK_THAT(transition_rate_analytic(ground, bright, n), Catch::Matchers::WithinAbs(4.0, 1e-12));
  CHECK_THAT(transition_rate_analytic(ground, other, n), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("momentum conservation checked exhaustively for N=4", "[spectral]") {
  const int n = 4;
  auto states = analytic_spectrum(n, 1.76, 0.02);
  for (const auto& a : states)
    for (const auto& b : states) {
      if (b.band != a.band + 1) continue;
      const double dm = (b.kset.momentum() - a.kset.momentum()) / (2 * pi);
      if (std::abs(dm - std::round(dm)) > 1e-9)
        CHECK(transition_rate_analytic(a.kset, b.kset, n) == 0.0);
    }
}

TEST_CASE("numeric rates: sum rule and intra-band selection", "[spectral]") {
  const int n = 4;
  const Matrix h = build_ring_hamiltonian(RingSpec::uniform(n, 1.76, 0.02));
  const Matrix jp = HilbertSpace::ring(n).collective_dipole(true);
  EigenSystem es = numeric_diagonalize(h, HilbertSpace::ring(n).number_op());
  // Sum over band 1 from ground equals <G|J- J+|G> = N.
  double total = 0;
  for (int b : es.band_members(1)) total += transition_rate_numeric(es, jp, 0, b);
  CHECK_THAT(total, Catch::Matchers::WithinAbs(static_cast<double>(n), 1e-10));
  // Same-band elements vanish: J+ changes the exciton number.
  auto band1 = es.band_members(1);
  for (int a : band1)
    for (int b : band1) CHECK(transition_rate_numeric(es, jp, a, b) < 1e-24);
}

TEST_CASE("classification: N=4 has exactly 3 ratchets at omega, omega, omega-2S", "[spectral]") {
  const double s = 0.02, omega = 1.8 - 2 * s;
  const Matrix h = build_ring_hamiltonian(RingSpec::uniform(4, omega, s));
  const Matrix jp = HilbertSpace::ring(4).collective_dipole(true);
  EigenSystem es = numeric_diagonalize(h, HilbertSpace::ring(4).number_op());
  TransitionTable table = classify_states(es, jp);

  std::vector<double> ratchet_energies;
  int bright_in_band1 = 0;
  for (int i : es.band_members(1)) {
    if (es.labels[static_cast<size_t>(i)] == StateLabel::Ratchet)
      ratchet_energies.push_back(es.energies(i));
    if (es.labels[static_cast<size_t>(i)] == StateLabel::BrightConnected) ++bright_in_band1;
  }
  REQUIRE(ratchet_energies.size() == 3);
  CHECK(bright_in_band1 == 1);
  CHECK_THAT(ratchet_energies[0], Catch::Matchers::WithinAbs(omega - 2 * s, 1e-12));
  CHECK_THAT(ratchet_energies[1], Catch::Matchers::WithinAbs(omega, 1e-12));
  CHECK_THAT(ratchet_energies[2], Catch::Matchers::WithinAbs(omega, 1e-12));

  // Top band has no band above.
  for (int i : es.band_members(4)) CHECK(table.gamma_plus(i) == 0.0);
  // Band-3 state on the symmetric ladder is connected downward.
  bool some_band3_bright = false;
  for (int i : es.band_members(3))
    if (table.gamma_minus(i) > ratchet_threshold) some_band3_bright = true;
  CHECK(some_band3_bright);
}

TEST_CASE("classification is invariant under a global site-energy shift", "[spectral]") {
  const Matrix jp = HilbertSpace::ring(4).collective_dipole(true);
  const Matrix nop = HilbertSpace::ring(4).number_op();
  EigenSystem a = numeric_diagonalize(build_ring_hamiltonian(RingSpec::uniform(4, 1.76, 0.02)), nop);
  EigenSystem b = numeric_diagonalize(build_ring_hamiltonian(RingSpec::uniform(4, 2.36, 0.02)), nop);
  classify_states(a, jp);
  classify_states(b, jp);
  for (long i = 0; i < a.dim; ++i)
    CHECK(a.labels[static_cast<size_t>(i)] == b.labels[static_cast<size_t>(i)]);
}

TEST_CASE("trace identity: band sums and total trace", "[spectral]") {
  const double s = 0.02, omega = 1.76;
  for (int n : {4, 5}) {
    const Matrix h = build_ring_hamiltonian(RingSpec::uniform(n, omega, s));
    const EigenSystem es = numeric_diagonalize(h, HilbertSpace::ring(n).number_op());
    auto choose = [](int a, int b) {
      double r = 1;
      for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
      return r;
    };
    for (int bandn = 0; bandn <= n; ++bandn) {
      double sum = 0;
      for (int i : es.band_members(bandn)) sum += es.energies(i);
      // The hopping contribution cancels over a full band: sum_k cos k = 0.
      CHECK_THAT(sum, Catch::Matchers::WithinAbs(choose(n, bandn) * bandn * omega, 1e-9));
    }
    CHECK_THAT(h.trace().real(),
               Catch::Matchers::WithinAbs(n * std::pow(2.0, n - 1) * omega, 1e-9));
  }
}

TEST_CASE("numeric_diagonalize guards", "[spectral]") {
  Matrix bad = Matrix::Random(4, 4);  // generically non-Hermitian
  CHECK_THROWS(numeric_diagonalize(bad, Matrix::Identity(4, 4)));
  // Diagonal H with S=0: eigenvectors are the standard basis.
  RingSpec spec = RingSpec::uniform(3, 1.5, 0.0);
  const EigenSystem es =
      numeric_diagonalize(build_ring_hamiltonian(spec), HilbertSpace::ring(3).number_op());
  for (long c = 0; c < es.dim; ++c) {
    long nonzero = 0;
    for (long r = 0; r < es.dim; ++r)
      if (std::abs(es.states(r, c)) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
  }
}
