#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "quenchlab/eigensolver.hpp"
#include "quenchlab/errors.hpp"
#include "quenchlab/free_fermion.hpp"
#include "quenchlab/verification.hpp"

using namespace quenchlab;

namespace {

double ed_ground(int n, double j, double h, Boundary b) {
  ChainSpec s;
  s.n_sites = n;
  s.jx = s.jy = j;
  s.field_h = h;
  s.pin_strength = 0.0;
  s.boundary = b;
  double best = INFINITY;
  for (int m : all_sectors(n)) {
    best = std::min(best, spectrum_values(build_hamiltonian(s, build_basis(n, m))).front());
  }
  return best;
}

}  // namespace

TEST_CASE("two-site modes rebuild the many-body spectrum") {
  const auto e = xx_mode_energies(2, 1.0, 0.0);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-14));
  // Fillings {}, {e0}, {e1}, {e0, e1} at h = 0.
  std::vector<double> many{0.0, e[0], e[1], e[0] + e[1]};
  std::sort(many.begin(), many.end());
  const auto ref = oracle::eigenvalues(oracle::chain_hamiltonian({2, 1, 1, 0, 0, 0, 0, false}));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(many[k] - ref[k]) < 1e-12);
}

TEST_CASE("open modes follow the cosine band") {
  const int n = 9;
  const auto e = xx_mode_energies(n, 0.7, 0.3);
  std::vector<double> ref;
  for (int k = 1; k <= n; ++k) ref.push_back(0.6 + 2.8 * std::cos(k * std::numbers::pi / (n + 1)));
  std::sort(ref.begin(), ref.end());
  for (int k = 0; k < n; ++k) CHECK(std::abs(e[k] - ref[k]) < 1e-13);
}

TEST_CASE("empty band far above the edge") {
  for (int n : {3, 64, 200}) {
    for (double e : xx_mode_energies(n, 1.0, 10.0)) CHECK(e > 0.0);
  }
  const auto m = xx_magnetization(64, 1.0, 10.0);
  CHECK(m.value == -64.0);
  CHECK_FALSE(m.zero_mode);
  CHECK(xx_magnetization(64, 1.0, 0.0).value == 0.0);
  CHECK(xx_ground_energy(64, 1.0, 10.0) == doctest::Approx(-640.0).epsilon(1e-14));
}

TEST_CASE("filled sea equals ED for open chains") {
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k < 21; ++k) {
      const double h = 3.0 * k / 20;
      CHECK(std::abs(xx_ground_energy(n, 1.0, h) - ed_ground(n, 1.0, h, Boundary::open)) < 1e-9);
    }
  }
}

TEST_CASE("periodic parity sectors equal ED") {
  for (int n : {3, 4, 5, 6, 7, 8, 9, 10}) {
    for (double h : {0.0, 0.35, 1.1, 1.9, 2.6}) {
      CHECK(std::abs(xx_ground_energy(n, 1.0, h, Boundary::periodic) -
                     ed_ground(n, 1.0, h, Boundary::periodic)) < 1e-9);
    }
  }
}

TEST_CASE("n=12 magnetization and moments against dense ED") {
  const auto ed = dense_xx_quench(12, 1.0, 1.0, 1e-3);
  CHECK(std::abs(xx_magnetization(12, 1.0, 1.0).value - ed.magnetization) < 1e-9);
  const auto q = xx_quench_moments(12, 1.0, 1.7, 1e-3);
  const auto r = dense_xx_quench(12, 1.0, 1.7, 1e-3);
  CHECK(std::abs(q.moments.avg_work - r.moments.avg_work) < 1e-9);
  CHECK(std::abs(q.moments.delta_u - r.moments.delta_u) < 1e-9);
  CHECK(std::abs(q.moments.irr_work - r.moments.irr_work) < 1e-9);
  CHECK(std::abs(q.moments.variance - r.moments.variance) < 1e-9);
}

TEST_CASE("quench moments across a zero mode") {
  // A mode crossing inside [h, h + dh] makes W_irr positive.
  const int n = 10;
  const auto fields = xx_zero_mode_fields(n, 1.0, 0.0, 3.0);
  REQUIRE(!fields.empty());
  for (double hz : fields) {
    const double h = hz - 4e-4;
    const auto q = xx_quench_moments(n, 1.0, h, 1e-3);
    CHECK(q.moments.irr_work > 0.0);
    CHECK(q.moments.irr_work == doctest::Approx(2.0 * 6e-4).epsilon(1e-9));
    const auto ed = dense_xx_quench(n, 1.0, h, 1e-3);
    CHECK(std::abs(q.moments.irr_work - ed.moments.irr_work) < 1e-9);
  }
}

TEST_CASE("polarized chain is adiabatic") {
  const auto q = xx_quench_moments(512, 1.0, 10.0, 1e-3);
  CHECK(std::abs(q.moments.irr_work) <= 1e-12);
  CHECK(q.moments.variance == 0.0);
  CHECK(q.moments.commuting);
}

TEST_CASE("Hellmann-Feynman magnetization") {
  for (double h : {0.13, 0.77, 1.42, 2.5}) {
    const int n = 40;
    const double d = 1e-6;
    const double fd = (xx_ground_energy(n, 1.0, h + d) - xx_ground_energy(n, 1.0, h - d)) / (2 * d);
    const FreeFermionChain c(n, 1.0, h);
    REQUIRE_FALSE(c.with_field(h - d).has_zero_mode());
    CHECK(std::abs(fd - c.magnetization()) < 1e-6 * n);
  }
}

TEST_CASE("Clausius over a dense grid") {
  for (int n : {16, 128}) {
    for (int k = 0; k <= 300; ++k) {
      const auto q = xx_quench_moments(n, 1.0, 0.01 * k + 0.003, 1e-3);
      CHECK(q.moments.irr_work >= -1e-12);
    }
  }
}

TEST_CASE("zero-mode fields") {
  const auto f = xx_zero_mode_fields(3, 1.0, -5.0, 5.0);
  REQUIRE(f.size() == 3);
  CHECK(std::abs(f[1]) < 1e-15);
  CHECK(f[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const FreeFermionChain c(3, 1.0, f[2]);
  CHECK(c.has_zero_mode());
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(xx_mode_energies(1, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(FreeFermionChain(4, 1.0, INFINITY), ValidationError);
  CHECK_THROWS_AS(xx_quench_moments(FreeFermionChain(4, 1.0, 0.0, Boundary::periodic), 1e-3),
                  ValidationError);
}
