#include "quenchlab/work_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quenchlab/errors.hpp"

namespace quenchlab {

double WorkDistribution::total_probability() const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.probability;
  return acc;
}

double WorkDistribution::mean() const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.probability * o.work;
  return acc;
}

double WorkDistribution::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (const auto& o : outcomes) {
    const double d = o.work - m;
    acc += o.probability * d * d;
  }
  return acc;
}

WorkDistribution make_distribution(std::vector<WorkOutcome> raw) {
  if (raw.empty()) throw ValidationError("work distribution needs at least one outcome");
  std::stable_sort(raw.begin(), raw.end(), [](const WorkOutcome& a, const WorkOutcome& b) {
    return a.work < b.work;
  });
  WorkDistribution dist;
  double anchor = raw.front().work;
  dist.outcomes.push_back(raw.front());
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].work - anchor <= kMergeTol) {
      dist.outcomes.back().probability += raw[k].probability;
    } else {
      anchor = raw[k].work;
      dist.outcomes.push_back(raw[k]);
    }
  }
  auto tail = std::remove_if(dist.outcomes.begin() + 1, dist.outcomes.end(),
                             [](const WorkOutcome& o) { return o.probability < kProbabilityFloor; });
  dist.outcomes.erase(tail, dist.outcomes.end());
  return dist;
}

WorkDistribution work_distribution(std::span<const double> psi0,
                                   const EigenResult& final_spectrum, double e0_i,
                                   std::optional<double> final_ground_energy) {
  const std::size_t dim = psi0.size();
  if (final_spectrum.dim != dim) {
    throw ValidationError("state and spectrum dimensions differ");
  }
  if (final_spectrum.count() != dim || final_spectrum.vector_data.size() != dim * dim) {
    throw ValidationError("work distribution needs a complete final spectrum (" +
                          std::to_string(final_spectrum.count()) + " of " +
                          std::to_string(dim) + " eigenpairs)");
  }
  double nrm = 0.0;
  for (double x : psi0) nrm += x * x;
  if (std::abs(nrm - 1.0) > kNormalizationTol) {
    throw ValidationError("initial state is not normalized (|psi|^2 - 1 = " +
                          std::to_string(nrm - 1.0) + ")");
  }

  std::vector<WorkOutcome> raw;
  raw.reserve(dim + 1);
  for (std::size_t m = 0; m < dim; ++m) {
    const auto phi = final_spectrum.vector(m);
    double overlap = 0.0;
    for (std::size_t k = 0; k < dim; ++k) overlap += phi[k] * psi0[k];
    raw.push_back({final_spectrum.energies[m] - e0_i, overlap * overlap});
  }
  if (final_ground_energy && *final_ground_energy < final_spectrum.energies.front() - kMergeTol) {
    raw.push_back({*final_ground_energy - e0_i, 0.0});
  }
  return make_distribution(std::move(raw));
}

double average_work_hf(std::span<const double> psi0, const SparseOperator& v_op,
                       double delta) {
  if (psi0.size() != v_op.dim()) {
    throw ValidationError("state dimension " + std::to_string(psi0.size()) +
                          " does not match operator dimension " +
                          std::to_string(v_op.dim()));
  }
  if (delta == 0.0) return 0.0;
  return delta * v_op.expectation(psi0);
}

WorkMoments moments(const WorkDistribution& dist, double delta_u) {
  WorkMoments m;
  m.avg_work = dist.mean();
  m.delta_u = delta_u;
  m.irr_work = m.avg_work - delta_u;
  m.variance = dist.variance();
  m.commuting = m.variance <= kCommutingVarianceTol;
  return m;
}

double second_order_irr(const std::array<double, 3>& e0_grid) {
  return -0.5 * ((e0_grid[2] - e0_grid[1]) - (e0_grid[1] - e0_grid[0]));
}

double irr_second_order_check(const std::array<double, 3>& e0_grid, double delta,
                              double irr_exact) {
  if (!(delta > 0.0)) throw ValidationError("grid spacing must be positive");
  return std::abs(irr_exact - second_order_irr(e0_grid)) /
         std::max(std::abs(irr_exact), 1e-300);
}

DistributionCheck check_distribution(const WorkDistribution& dist, double delta_u,
                                     double avg_hf) {
  DistributionCheck c;
  c.normalization_error = std::abs(dist.total_probability() - 1.0);
  c.min_support_error = std::abs(dist.min_work() - delta_u);
  c.first_moment_error = std::abs(dist.mean() - avg_hf);
  c.min_probability = INFINITY;
  for (const auto& o : dist.outcomes) c.min_probability = std::min(c.min_probability, o.probability);
  return c;
}

}  // namespace quenchlab
