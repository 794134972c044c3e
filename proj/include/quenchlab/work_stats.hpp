#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "quenchlab/eigensolver.hpp"
#include "quenchlab/spin_hamiltonian.hpp"

namespace quenchlab {

inline constexpr double kMergeTol = 1e-12;
inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kCommutingVarianceTol = 1e-18;
/// Outcomes above the ground outcome with smaller weight are dropped.
inline constexpr double kProbabilityFloor = 1e-20;

/// Sudden quench value_i -> value_i + delta of one Hamiltonian parameter.
struct QuenchSpec {
  QuenchParam param = QuenchParam::lambda_z;
  double value_i = 0.0;
  double delta = 0.0;

  double value_f() const { return value_i + delta; }
};

struct WorkOutcome {
  double work = 0.0;
  double probability = 0.0;
};

/// Two-point-measurement work distribution P(W) = sum_m p_m delta(W - W_m).
/// Outcomes are ascending in work; the first one is the final ground level,
/// kept even when its weight vanishes.
struct WorkDistribution {
  std::vector<WorkOutcome> outcomes;

  double total_probability() const;
  double mean() const;
  /// Sum p (w - mean)^2, two-pass.
  double variance() const;
  double min_work() const { return outcomes.front().work; }
};

/// Sorts raw (w, p) pairs, merges works within kMergeTol and drops
/// non-ground outcomes below kProbabilityFloor.
WorkDistribution make_distribution(std::vector<WorkOutcome> raw);

struct WorkMoments {
  double avg_work = 0.0;
  double delta_u = 0.0;
  double irr_work = 0.0;
  double variance = 0.0;
  bool commuting = false;
};

/// p_m = |<psi0|phi_m>|^2 over a complete final spectrum, W_m = E_m - e0_i.
/// If `final_ground_energy` lies below the supplied spectrum (the final
/// ground state sits in a symmetry sector orthogonal to psi0), it enters as
/// a zero-weight outcome so that min W equals Delta U.
WorkDistribution work_distribution(std::span<const double> psi0,
                                   const EigenResult& final_spectrum, double e0_i,
                                   std::optional<double> final_ground_energy = std::nullopt);

/// delta * <psi0|V|psi0>
double average_work_hf(std::span<const double> psi0, const SparseOperator& v_op,
                       double delta);

WorkMoments moments(const WorkDistribution& dist, double delta_u);

/// -(delta^2 / 2) times the centred second difference of E0 over
/// {E0(x - delta), E0(x), E0(x + delta)}.
double second_order_irr(const std::array<double, 3>& e0_grid);

/// |irr_exact - second_order_irr| / max(|irr_exact|, 1e-300)
double irr_second_order_check(const std::array<double, 3>& e0_grid, double delta,
                              double irr_exact);

/// Per-instance invariant report used by tests and the verification suite.
struct DistributionCheck {
  double normalization_error = 0.0;    // |sum p - 1|
  double min_support_error = 0.0;      // |min W - delta_u|
  double first_moment_error = 0.0;     // |mean - avg_hf|
  double min_probability = 0.0;
  bool ok() const {
    return normalization_error <= 1e-12 && min_support_error <= 1e-10 &&
           first_moment_error <= 1e-10 && min_probability >= 0.0;
  }
};

DistributionCheck check_distribution(const WorkDistribution& dist, double delta_u,
                                     double avg_hf);

}  // namespace quenchlab
