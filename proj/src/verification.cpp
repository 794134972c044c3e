#include "quenchlab/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "quenchlab/errors.hpp"
#include "quenchlab/lz_analytics.hpp"

namespace quenchlab {

// ---------------------------------------------------------------------------
// invariants

void InvariantTally::add(const WorkDistribution& dist, double delta_u, double avg_hf,
                         double irr, bool commuting_quench) {
  const DistributionCheck c = check_distribution(dist, delta_u, avg_hf);
  ++distributions;
  normalization_error = std::max(normalization_error, c.normalization_error);
  min_support_error = std::max(min_support_error, c.min_support_error);
  first_moment_error = std::max(first_moment_error, c.first_moment_error);
  min_probability = std::min(min_probability, c.min_probability);
  if (commuting_quench) {
    ++commuting_instances;
    commuting_variance = std::max(commuting_variance, dist.variance());
  }
  min_irr = std::min(min_irr, irr);
  ++instances;
}

void InvariantTally::add(const PointResult& p, bool commuting_quench) {
  const SweepRow& r = p.row;
  if (r.has_flag(flag::solver_failure)) {
    ++solver_failures;
    return;
  }
  if (p.distribution) {
    add(*p.distribution, r.delta_u, r.avg_work, r.irr_work, commuting_quench);
    return;
  }
  ++instances;
  min_irr = std::min(min_irr, r.irr_work);
  if (commuting_quench) {
    ++commuting_instances;
    commuting_variance = std::max(commuting_variance, r.variance);
  }
}

bool InvariantTally::ok() const {
  return instances > 0 && solver_failures == 0 && normalization_error <= 1e-12 &&
         min_support_error <= 1e-10 && first_moment_error <= 1e-10 &&
         min_probability >= 0.0 && min_irr >= -1e-12 && commuting_variance <= 1e-18;
}

std::string InvariantTally::summary() const {
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "%ld instances (%ld distributions, %ld commuting, %ld solver failures): "
                "|sum p - 1| <= %.2g, |min W - dU| <= %.2g, |mean - <W>| <= %.2g, "
                "min irr = %.2g, commuting var <= %.2g",
                instances, distributions, commuting_instances, solver_failures,
                normalization_error, min_support_error, first_moment_error, min_irr,
                commuting_variance);
  return buf;
}

// ---------------------------------------------------------------------------
// dense XX pipeline

DenseXxQuench dense_xx_quench(int n, double j, double h, double dh) {
  ChainSpec base;
  base.n_sites = n;
  base.jx = base.jy = j;
  base.lambda_z = 0.0;
  base.pin_strength = 0.0;
  const ChainSpec spec_i = base.with(QuenchParam::field_h, h);
  const ChainSpec spec_f = base.with(QuenchParam::field_h, h + dh);

  std::vector<SpinBasis> blocks;
  for (int m : all_sectors(n)) blocks.push_back(build_basis(n, m));
  std::size_t s0 = 0;
  double e_min = INFINITY;
  double e_min_f = INFINITY;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double ei = spectrum_values(build_hamiltonian(spec_i, blocks[k])).front();
    const double ef = spectrum_values(build_hamiltonian(spec_f, blocks[k])).front();
    if (ei < e_min) {
      e_min = ei;
      s0 = k;
    }
    e_min_f = std::min(e_min_f, ef);
  }
  const EigenResult ini = full_spectrum(build_hamiltonian(spec_i, blocks[s0]));
  const EigenResult fin = full_spectrum(build_hamiltonian(spec_f, blocks[s0]));
  const auto psi0 = ini.vector(0);
  const SparseOperator v = build_potential(spec_i, QuenchParam::field_h, blocks[s0]);

  DenseXxQuench out;
  out.e0 = ini.energies[0];
  out.magnetization = v.expectation(psi0);
  const double e0_f = std::min(e_min_f, fin.energies[0]);
  out.distribution = work_distribution(psi0, fin, out.e0, e0_f);
  out.moments = moments(out.distribution, e0_f - out.e0);
  out.moments.avg_work = average_work_hf(psi0, v, dh);
  out.moments.irr_work = out.moments.avg_work - out.moments.delta_u;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CheckResult timed(const std::string& name, const std::function<CheckResult()>& body) {
  const auto t0 = Clock::now();
  CheckResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = name;
  r.seconds = seconds_since(t0);
  return r;
}

// Each check may add a wall-clock budget on top of its numerical condition.
void apply_budget(CheckResult& r, double budget) {
  if (r.seconds >= budget) {
    r.passed = false;
    r.detail += fmt("; runtime %.2f s exceeds budget %.0f s", r.seconds, budget);
  }
}

std::string describe_jumps(const std::vector<Jump>& jumps) {
  std::ostringstream os;
  os << jumps.size() << " jump(s)";
  for (std::size_t k = 0; k < jumps.size() && k < 4; ++k) {
    os << (k ? ", " : ": ") << '[' << jumps[k].left << ", " << jumps[k].right << "] size "
       << jumps[k].size;
  }
  if (jumps.size() > 4) os << ", ...";
  return os.str();
}

double distance_to_interval(double x, const Jump& j) {
  if (x < j.left) return j.left - x;
  if (x > j.right) return x - j.right;
  return 0.0;
}

// ---------------------------------------------------------------------------
// Landau-Zener checks

CheckResult lz_latent_jump_check(InvariantTally& tally) {
  SweepPlan plan;
  plan.model = Model::lz;
  plan.lz = {2.0, 1.0, 0.0};
  plan.grid = {0.5, 1.5, 101};
  plan.delta = 1e-5;
  const auto results = run_sweep_detailed(plan);
  std::vector<SweepRow> rows;
  double worst = 0.0;
  for (const auto& p : results) {
    tally.add(p, false);
    rows.push_back(p.row);
    const double want = p.row.grid_value < 1.0 ? 1.0 : -1.0;
    worst = std::max(worst, std::abs(p.row.avg_work_per_delta - want));
  }
  const auto jumps = detect_jumps(rows, Column::avg_work_per_delta);
  const bool one = jumps.size() == 1 && std::abs(jumps[0].size - 2.0) <= 1e-9;
  return {"", worst <= 1e-9 && one,
          fmt("max |<W>/dl -/+ 1| = %.3g; ", worst) + describe_jumps(jumps)};
}

CheckResult lz_divergence_check() {
  const double dl = 1e-3;
  const double tol = 5.0 * dl;
  std::vector<double> w;
  double worst = 0.0;
  for (double eps : {0.1, 0.05, 0.025}) {
    const LzParams p{2.0, 1.0, eps};
    const double irr = lz_irr_work(p, p.critical_lambda(), dl, IrrMode::exact);
    const double target = dl * dl * p.a * p.a / (2.0 * eps);
    worst = std::max(worst, std::abs(irr - target) / target);
    w.push_back(irr);
  }
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    worst_ratio = std::max(worst_ratio, std::abs(w[k] / w[k - 1] - 2.0) / 2.0);
  }
  return {"", worst <= tol && worst_ratio <= tol,
          fmt("max rel. error vs dl^2 a^2/(2 eps) = %.3g, max rel. error of doubling = %.3g "
              "(tol %.3g)",
              worst, worst_ratio, tol)};
}

double lz_order_discrepancy(const LzParams& p, double lam, double dl) {
  const std::array<double, 3> e{lz_ground_energy(p, lam - dl), lz_ground_energy(p, lam),
                                lz_ground_energy(p, lam + dl)};
  return irr_second_order_check(e, dl, lz_irr_work(p, lam, dl, IrrMode::exact));
}

CheckResult lz_order_check() {
  // Off the critical point the leading correction is odd in dl.
  const LzParams p{2.0, 1.0, 0.5};
  const double lam = 1.25;
  const double coarse = lz_order_discrepancy(p, lam, 1e-2);
  const double fine = lz_order_discrepancy(p, lam, 1e-3);
  const double ratio = coarse / fine;
  return {"", ratio >= 5.0 && ratio <= 20.0,
          fmt("lambda_i = %.2f: discrepancy %.4g (dl=1e-2) / %.4g (dl=1e-3) = %.3f", lam,
              coarse, fine, ratio)};
}

CheckResult lz_pipeline_check(InvariantTally& tally, int points) {
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    LzParams p;
    p.delta = -3.0 + 6.0 * u(rng);
    p.a = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 1.8 * u(rng));
    p.eps = 0.05 + 0.95 * u(rng);
    const double lam = -3.0 + 6.0 * u(rng);
    const double dl = (u(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -4.0 + 3.0 * u(rng));

    const EigenResult ini = full_spectrum(lz_hamiltonian(p, lam));
    const EigenResult fin = full_spectrum(lz_hamiltonian(p, lam + dl));
    const auto psi0 = ini.vector(0);
    const double avg = average_work_hf(psi0, lz_potential(p), dl);
    const double du = fin.energies[0] - ini.energies[0];
    const WorkDistribution num = work_distribution(psi0, fin, ini.energies[0]);
    const WorkMoments mom = moments(num, du);
    const WorkDistribution closed = lz_work_distribution(p, lam, lam + dl);
    tally.add(num, du, avg, avg - du, false);
    tally.add(closed, lz_ground_energy(p, lam + dl) - lz_ground_energy(p, lam),
              lz_average_work(p, lam, dl), lz_irr_work(p, lam, dl, IrrMode::exact), false);

    const double diffs[] = {
        ini.energies[0] - lz_ground_energy(p, lam),
        fin.energies[0] - lz_ground_energy(p, lam + dl),
        avg - lz_average_work(p, lam, dl),
        du - (lz_ground_energy(p, lam + dl) - lz_ground_energy(p, lam)),
        (avg - du) - lz_irr_work(p, lam, dl, IrrMode::exact),
        mom.variance - closed.variance(),
        mom.avg_work - closed.mean(),
    };
    for (double d : diffs) worst = std::max(worst, std::abs(d));
    if (num.outcomes.size() != closed.outcomes.size()) {
      worst = INFINITY;
      continue;
    }
    for (std::size_t m = 0; m < num.outcomes.size(); ++m) {
      worst = std::max(worst, std::abs(num.outcomes[m].work - closed.outcomes[m].work));
      worst = std::max(worst,
                       std::abs(num.outcomes[m].probability - closed.outcomes[m].probability));
    }
  }
  return {"", worst <= 1e-12,
          fmt("%d random points, max |closed form - 2x2 pipeline| = %.3g", points, worst)};
}

// ---------------------------------------------------------------------------
// chain checks

SweepPlan xxz_plan(int n, double pin, const Grid& grid, double delta) {
  SweepPlan plan;
  plan.model = Model::xxz_ed;
  plan.chain.n_sites = n;
  plan.chain.pin_strength = pin;
  plan.param = QuenchParam::lambda_z;
  plan.grid = grid;
  plan.delta = delta;
  return plan;
}

std::vector<SweepRow> rows_of(const std::vector<PointResult>& results) {
  std::vector<SweepRow> rows;
  rows.reserve(results.size());
  for (const auto& p : results) rows.push_back(p.row);
  return rows;
}

CheckResult adiabatic_check(const std::vector<PointResult>& results, double below) {
  double worst_irr = -INFINITY;
  double worst_overlap = INFINITY;
  int count = 0;
  bool missing = false;
  for (const auto& p : results) {
    if (!(p.row.grid_value < below)) continue;
    ++count;
    worst_irr = std::max(worst_irr, p.row.irr_work);
    if (!p.ground_overlap) {
      missing = true;
      continue;
    }
    worst_overlap = std::min(worst_overlap, *p.ground_overlap);
  }
  return {"", count > 0 && !missing && worst_irr <= 1e-12 && worst_overlap >= 1.0 - 1e-12,
          fmt("%d rows below %.2f: max irr = %.3g, min overlap = 1 - %.3g", count, below,
              worst_irr, 1.0 - worst_overlap)};
}

CheckResult bkt_null_check(const std::vector<SweepRow>& rows, double lo, double hi) {
  std::string detail;
  bool ok = true;
  for (Column c : {Column::avg_work_per_delta, Column::irr_per_delta2}) {
    std::vector<Jump> inside;
    for (const Jump& j : detect_jumps(rows, c)) {
      if (j.right >= lo && j.left <= hi) inside.push_back(j);
    }
    ok = ok && inside.empty();
    detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(c)) + " in [" +
              format_double(lo) + ", " + format_double(hi) + "]: " + describe_jumps(inside);
  }
  return {"", ok, detail};
}

CheckResult first_order_check(const std::vector<SweepRow>& main_rows,
                              const std::vector<std::pair<double, std::vector<SweepRow>>>& pins,
                              double critical) {
  std::string detail;
  bool ok = true;
  for (Column c : {Column::avg_work_per_delta, Column::irr_per_delta2}) {
    const auto jumps = detect_jumps(main_rows, c);
    bool col_ok = jumps.size() == 1 && distance_to_interval(critical, jumps[0]) <= 0.5;
    detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(c)) + ": " +
              describe_jumps(jumps);
    for (const auto& [pin, rows] : pins) {
      const auto other = detect_jumps(rows, c);
      const bool same = jumps.size() == 1 && other.size() == 1 && other[0].index == jumps[0].index;
      col_ok = col_ok && same;
      detail += fmt(" | pin %g: ", pin) + describe_jumps(other);
    }
    ok = ok && col_ok;
  }
  return {"", ok, detail};
}

CheckResult xx_criticality_check(InvariantTally& tally) {
  std::vector<double> peaks;
  std::string detail;
  bool located = false;
  for (int n : {128, 512, 2048}) {
    SweepPlan plan;
    plan.model = Model::xx_ff;
    plan.chain.n_sites = n;
    plan.chain.lambda_z = 0.0;
    plan.param = QuenchParam::field_h;
    plan.grid = {0.0, 3.0, 301};
    plan.delta = 1e-3;
    const auto results = run_sweep_detailed(plan);
    for (const auto& p : results) tally.add(p, true);
    const auto best = std::max_element(results.begin(), results.end(), [](auto& a, auto& b) {
      return a.row.irr_per_delta2 < b.row.irr_per_delta2;
    });
    peaks.push_back(best->row.irr_per_delta2);
    if (n == 512) located = std::abs(best->row.grid_value - 2.0) <= plan.grid.step() + 1e-12;
    detail += fmt("%sn=%d: max irr/dh^2 = %.6g at h = %.4g", detail.empty() ? "" : "; ", n,
                  best->row.irr_per_delta2, best->row.grid_value);
  }
  const bool increasing = peaks[0] < peaks[1] && peaks[1] < peaks[2];
  return {"", located && increasing,
          detail + fmt("; peak at h=2 +- 1 step (n=512): %s; peaks increasing: %s",
                       located ? "yes" : "no", increasing ? "yes" : "no")};
}

CheckResult oracle_check(InvariantTally& tally, const std::vector<int>& sizes, int h_points,
                         int lz_points) {
  const double dh = 1e-3;
  double worst = 0.0;
  int count = 0;
  for (int n : sizes) {
    for (int k = 0; k < h_points; ++k) {
      const double h = 3.0 * k / (h_points - 1);
      const DenseXxQuench ed = dense_xx_quench(n, 1.0, h, dh);
      const FreeFermionChain ff(n, 1.0, h);
      const XxQuench q = xx_quench_moments(ff, dh);
      tally.add(ed.distribution, ed.moments.delta_u, ed.moments.avg_work, ed.moments.irr_work,
                true);
      const double diffs[] = {
          ed.e0 - ff.ground_energy(),
          ed.magnetization - ff.magnetization(),
          ed.moments.avg_work - q.moments.avg_work,
          ed.moments.delta_u - q.moments.delta_u,
          ed.moments.irr_work - q.moments.irr_work,
          ed.moments.variance - q.moments.variance,
      };
      for (double d : diffs) worst = std::max(worst, std::abs(d));
      ++count;
    }
  }
  CheckResult out{"", worst <= 1e-9,
                  fmt("%d chain points, max |free fermion - dense ED| = %.3g", count, worst)};
  if (lz_points > 0) {
    const CheckResult lz = lz_pipeline_check(tally, lz_points);
    out.passed = out.passed && lz.passed;
    out.detail += "; " + lz.detail;
  }
  return out;
}

CheckResult invariant_check(const InvariantTally& tally) {
  return {"", tally.ok(), tally.summary()};
}

// ---------------------------------------------------------------------------
// suites

std::vector<CheckResult> quick_checks() {
  std::vector<CheckResult> out;
  InvariantTally tally;
  out.push_back(timed("lz latent jump", [&] { return lz_latent_jump_check(tally); }));
  out.push_back(timed("lz divergence at the avoided crossing", lz_divergence_check));
  out.push_back(timed("lz second-order convergence", lz_order_check));
  out.push_back(timed("lz closed forms vs 2x2 pipeline",
                      [&] { return lz_pipeline_check(tally, 50); }));
  out.push_back(timed("xx free fermions vs dense ED (n <= 8)",
                      [&] { return oracle_check(tally, {4, 6, 8}, 11, 0); }));
  std::vector<PointResult> small;
  out.push_back(timed("xxz n=8 sweep ferro adiabaticity", [&] {
    small = run_sweep_detailed(xxz_plan(8, -1e-3, {-3.0, 3.0, 25}, 1e-4));
    for (const auto& p : small) tally.add(p, false);
    return adiabatic_check(small, -2.5);
  }));
  out.push_back(timed("invariants", [&] { return invariant_check(tally); }));
  return out;
}

std::vector<CheckResult> full_checks() {
  std::vector<CheckResult> out;
  InvariantTally tally;

  auto c1 = timed("1 lz latent jump", [&] { return lz_latent_jump_check(tally); });
  apply_budget(c1, 1.0);
  out.push_back(c1);
  auto c2 = timed("2 lz irreversible work divergence", lz_divergence_check);
  apply_budget(c2, 1.0);
  out.push_back(c2);
  auto c3 = timed("3 second-order discrepancy scaling", lz_order_check);
  apply_budget(c3, 1.0);
  out.push_back(c3);

  const Grid grid{-3.0, 3.0, 121};
  std::vector<PointResult> main_sweep;
  auto c4 = timed("4 xxz first-order jump", [&] {
    main_sweep = run_sweep_detailed(xxz_plan(12, -1e-3, grid, 1e-4));
    for (const auto& p : main_sweep) tally.add(p, false);
    std::vector<std::pair<double, std::vector<SweepRow>>> pins;
    for (double pin : {1e-3, 1e-4}) {
      const auto res = run_sweep_detailed(xxz_plan(12, pin, grid, 1e-4));
      for (const auto& p : res) tally.add(p, false);
      pins.emplace_back(pin, rows_of(res));
    }
    return first_order_check(rows_of(main_sweep), pins, -2.0);
  });
  apply_budget(c4, 300.0);
  out.push_back(c4);

  out.push_back(timed("5 ferro adiabaticity", [&] {
    if (main_sweep.empty()) return CheckResult{"", false, "xxz sweep unavailable", 0.0};
    return adiabatic_check(main_sweep, -2.5);
  }));
  out.push_back(timed("6 no jump at the bkt point", [&] {
    if (main_sweep.empty()) return CheckResult{"", false, "xxz sweep unavailable", 0.0};
    return bkt_null_check(rows_of(main_sweep), 1.0, 3.0);
  }));

  auto c7 = timed("7 xx criticality", [&] { return xx_criticality_check(tally); });
  apply_budget(c7, 30.0);
  out.push_back(c7);
  out.push_back(timed("8 oracle equivalence",
                      [&] { return oracle_check(tally, {8, 10, 12}, 21, 50); }));
  out.push_back(timed("9 universal invariants", [&] { return invariant_check(tally); }));
  return out;
}

}  // namespace

std::vector<CheckResult> run_checks(VerifyLevel level) {
  return level == VerifyLevel::quick ? quick_checks() : full_checks();
}

std::string format_check(const CheckResult& r) {
  return std::string(r.passed ? "PASS " : "FAIL ") + r.name + fmt(" (%.2f s) ", r.seconds) +
         r.detail;
}

}  // namespace quenchlab
