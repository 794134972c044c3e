#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quenchlab/eigensolver.hpp"
#include "quenchlab/errors.hpp"
#include "quenchlab/free_fermion.hpp"
#include "quenchlab/lz_analytics.hpp"
#include "quenchlab/verification.hpp"
#include "quenchlab/work_stats.hpp"

using namespace quenchlab;

namespace {

struct Quench {
  EigenResult initial;
  EigenResult final;
  SparseOperator v;
};

Quench dense_quench(const ChainSpec& s, QuenchParam q, double d) {
  const auto basis = build_basis(s.n_sites);
  return {full_spectrum(build_hamiltonian(s, basis)),
          full_spectrum(build_hamiltonian(s.with(q, s.value(q) + d), basis)),
          build_potential(s, q, basis)};
}

}  // namespace

TEST_CASE("identity quench") {
  ChainSpec s;
  s.n_sites = 4;
  s.lambda_z = 0.3;
  const auto q = dense_quench(s, QuenchParam::lambda_z, 0.0);
  const auto d = work_distribution(q.initial.vector(0), q.final, q.initial.energies[0]);
  REQUIRE(d.outcomes.size() == 1);
  CHECK(std::abs(d.outcomes[0].work) < 1e-15);
  CHECK(d.outcomes[0].probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(average_work_hf(q.initial.vector(0), q.v, 0.0) == 0.0);
  const auto m = moments(make_distribution({{0.0, 1.0}}), 0.0);
  CHECK(m.avg_work == 0.0);
  CHECK(m.irr_work == 0.0);
  CHECK(m.variance == 0.0);
  CHECK(m.commuting);
}

TEST_CASE("two-site lambda quench against 4x4 data") {
  ChainSpec s;
  s.pin_strength = 0.0;
  const auto q = dense_quench(s, QuenchParam::lambda_z, 0.2);
  const auto psi0 = q.initial.vector(0);
  const auto d = work_distribution(psi0, q.final, q.initial.energies[0]);
  const double hf = average_work_hf(psi0, q.v, 0.2);
  // The singlet (-2) has sz sz = -1, so <V> = -1/2.
  CHECK(hf == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(std::abs(d.mean() - hf) < 1e-14);
  CHECK(d.total_probability() == doctest::Approx(1.0).epsilon(1e-14));
  // The singlet is an eigenstate of sz sz, so the quench commutes.
  CHECK(d.variance() <= 1e-18);
}

TEST_CASE("merging and floor") {
  const auto d = make_distribution({{1.0, 0.25}, {0.0, 0.5}, {1.0 + 1e-13, 0.25}, {2.0, 1e-25}});
  REQUIRE(d.outcomes.size() == 2);
  CHECK(d.outcomes[0].work == 0.0);
  CHECK(d.outcomes[1].probability == 0.5);
  const auto g = make_distribution({{-1.0, 0.0}, {0.5, 1.0}});
  REQUIRE(g.outcomes.size() == 2);
  CHECK(g.min_work() == -1.0);
}

TEST_CASE("incomplete spectrum and unnormalized state are rejected") {
  ChainSpec s;
  s.n_sites = 4;
  const auto basis = build_basis(4);
  const auto op = build_hamiltonian(s, basis);
  const auto partial = ground_state(op);
  const auto full = full_spectrum(op);
  CHECK_THROWS_AS(work_distribution(full.vector(0), partial, 0.0), ValidationError);
  std::vector<double> bad(full.vector(0).begin(), full.vector(0).end());
  for (double& x : bad) x *= 2.0;
  CHECK_THROWS_AS(work_distribution(bad, full, 0.0), ValidationError);
}

TEST_CASE("ferro product state average work") {
  ChainSpec s;
  s.n_sites = 4;
  s.lambda_z = -6.0;
  const auto q = dense_quench(s, QuenchParam::lambda_z, 1e-3);
  CHECK(average_work_hf(q.initial.vector(0), q.v, 1e-3) ==
        doctest::Approx(1e-3 * 1.5).epsilon(1e-12));
  const auto d = work_distribution(q.initial.vector(0), q.final, q.initial.energies[0]);
  const auto c = check_distribution(d, q.final.energies[0] - q.initial.energies[0],
                                    average_work_hf(q.initial.vector(0), q.v, 1e-3));
  CHECK(c.ok());
  CHECK(d.variance() <= 1e-18);
}

TEST_CASE("XX field quench is commuting and tracks the order parameter") {
  const auto r = dense_xx_quench(12, 1.0, 1.7, 1e-3);
  CHECK(r.moments.variance <= 1e-18);
  CHECK(r.moments.commuting);
  CHECK(std::abs(r.moments.avg_work - 1e-3 * xx_magnetization(12, 1.0, 1.7).value) < 1e-12);
  const auto c = check_distribution(r.distribution, r.moments.delta_u, r.moments.avg_work);
  CHECK(c.ok());
}

TEST_CASE("Landau-Zener moments against the divergence formula") {
  const LzParams p{2.0, 1.0, 0.1};
  const double dl = 0.01;
  const auto d = lz_work_distribution(p, 1.0, 1.0 + dl);
  const double du = lz_ground_energy(p, 1.0 + dl) - lz_ground_energy(p, 1.0);
  const auto m = moments(d, du);
  CHECK(std::abs(m.irr_work - 5e-4) <= 2.0 * dl * 5e-4);
}

TEST_CASE("second-order check") {
  CHECK(second_order_irr({1.0, 0.0, 1.0}) == -1.0);
  const LzParams p{2.0, 1.0, 0.5};
  auto disc = [&](double dl) {
    const double lam = 1.25;
    return irr_second_order_check(
        {lz_ground_energy(p, lam - dl), lz_ground_energy(p, lam), lz_ground_energy(p, lam + dl)},
        dl, lz_irr_work(p, lam, dl));
  };
  const double r1 = disc(1e-2) / disc(1e-3);
  const double r2 = disc(1e-3) / disc(1e-4);
  CHECK(r1 > 5.0);
  CHECK(r1 < 20.0);
  CHECK(r2 > 5.0);
  CHECK(r2 < 20.0);
  CHECK_THROWS_AS(irr_second_order_check({0, 0, 0}, 0.0, 1.0), ValidationError);
}

TEST_CASE("second-order check vanishes on both sides in adiabatic phases") {
  // Pinned ferromagnet: E0 linear in lambda.
  ChainSpec s;
  s.n_sites = 6;
  const double d = 1e-3;
  std::array<double, 3> e{};
  for (int k = 0; k < 3; ++k) {
    s.lambda_z = -4.0 + (k - 1) * d;
    e[k] = ground_state(build_hamiltonian(s, build_basis(6, 6))).energies[0];
  }
  CHECK(std::abs(second_order_irr(e)) < 1e-12);
  const auto q = dense_xx_quench(8, 1.0, 5.0, d);
  CHECK(std::abs(q.moments.irr_work) < 1e-12);
  CHECK(std::abs(second_order_irr({xx_ground_energy(8, 1, 5 - d), xx_ground_energy(8, 1, 5),
                                   xx_ground_energy(8, 1, 5 + d)})) < 1e-12);
}

TEST_CASE("Clausius on random chain quenches") {
  for (double lam : {-2.5, -0.5, 0.8, 2.2}) {
    for (double d : {1e-3, -1e-2, 0.3}) {
      ChainSpec s;
      s.n_sites = 6;
      s.lambda_z = lam;
      s.jy = 0.6;
      const auto q = dense_quench(s, QuenchParam::lambda_z, d);
      const auto psi0 = q.initial.vector(0);
      const double hf = average_work_hf(psi0, q.v, d);
      const double du = q.final.energies[0] - q.initial.energies[0];
      const auto dist = work_distribution(psi0, q.final, q.initial.energies[0]);
      CHECK(hf - du >= -1e-12);
      CHECK(check_distribution(dist, du, hf).ok());
    }
  }
}
