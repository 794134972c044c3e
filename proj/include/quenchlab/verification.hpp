#pragma once

#include <string>
#include <vector>

#include "quenchlab/free_fermion.hpp"
#include "quenchlab/sweep_engine.hpp"
#include "quenchlab/work_stats.hpp"

namespace quenchlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

enum class VerifyLevel { quick, full };

/// quick: Landau-Zener oracles and small-chain cross-checks.
/// full: the nine acceptance checks, numbered in order.
std::vector<CheckResult> run_checks(VerifyLevel level);

/// One line per check: "PASS name (1.23 s) detail".
std::string format_check(const CheckResult& r);

/// Worst-case invariant errors over every instance seen.
struct InvariantTally {
  long instances = 0;
  long distributions = 0;
  long commuting_instances = 0;
  double normalization_error = 0.0;
  double min_support_error = 0.0;
  double first_moment_error = 0.0;
  double min_probability = 0.0;
  double min_irr = 0.0;
  double commuting_variance = 0.0;
  long solver_failures = 0;

  void add(const PointResult& p, bool commuting_quench);
  void add(const WorkDistribution& dist, double delta_u, double avg_hf, double irr,
           bool commuting_quench);
  bool ok() const;
  std::string summary() const;
};

/// Moments of the open XX chain h -> h + dh obtained from dense
/// diagonalization of each magnetization block.
struct DenseXxQuench {
  double e0 = 0.0;
  double magnetization = 0.0;
  WorkMoments moments;
  WorkDistribution distribution;
};

DenseXxQuench dense_xx_quench(int n, double j, double h, double dh);

}  // namespace quenchlab
