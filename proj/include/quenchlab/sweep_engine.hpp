#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quenchlab/eigensolver.hpp"
#include "quenchlab/lz_analytics.hpp"
#include "quenchlab/spin_hamiltonian.hpp"
#include "quenchlab/work_stats.hpp"

namespace quenchlab {

enum class Model { lz, xxz_ed, xx_ed, xx_ff };

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view s);

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  void validate() const;
  double step() const { return (stop - start) / (steps - 1); }
};

/// Parses "start:stop:steps".
Grid parse_grid(std::string_view text);

struct SolverOptions {
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-10;
  int max_iterations = 500;
};

inline constexpr double kDefaultJumpThreshold = 20.0;
inline constexpr double kGridNudgeTol = 1e-12;

struct SweepPlan {
  Model model = Model::lz;
  LzParams lz;
  ChainSpec chain;
  QuenchParam param = QuenchParam::lambda_z;
  Grid grid;
  double delta = 1e-5;
  SolverOptions solver;
  unsigned workers = 1;

  /// Throws ValidationError on any violated guard.
  void validate() const;
  std::string param_name() const;
  int n_sites() const;
};

/// Model-specific default quench size: 1e-3 for free fermions, else 1e-5.
double default_delta(Model m);

/// Grid values with points within 1e-12 of a known degeneracy point moved
/// forward by half a step.
std::vector<double> grid_values(const SweepPlan& plan);

/// Points where the ground state of the swept model is exactly degenerate.
std::vector<double> singular_points(const SweepPlan& plan);

namespace flag {
inline constexpr std::string_view degenerate = "degenerate";
inline constexpr std::string_view zero_mode = "zero_mode";
inline constexpr std::string_view sector_change = "sector_change";
inline constexpr std::string_view no_distribution = "no_distribution";
inline constexpr std::string_view solver_failure = "solver_failure";
inline constexpr std::string_view first_moment = "first_moment_mismatch";
inline constexpr std::string_view clausius = "clausius_violation";
inline constexpr std::string_view commuting = "commuting";
}  // namespace flag

struct SweepRow {
  std::string model;
  int n_sites = 0;
  std::string param;
  double grid_value = 0.0;
  double delta = 0.0;
  double e0_i = 0.0;
  double e0_f = 0.0;
  double avg_work = 0.0;
  double delta_u = 0.0;
  double irr_work = 0.0;
  double variance = 0.0;
  double avg_work_per_delta = 0.0;
  double irr_per_delta2 = 0.0;
  double eq2_discrepancy = 0.0;
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const;
  /// Field-wise equality; doubles compare bitwise, NaN equal to NaN.
  friend bool operator==(const SweepRow& a, const SweepRow& b);
};

/// Row plus the data behind it, for invariant checks.
struct PointResult {
  SweepRow row;
  std::optional<WorkDistribution> distribution;
  /// |<psi0(value_i)|psi0(value_f)>|^2 when available.
  std::optional<double> ground_overlap;
};

PointResult evaluate_point(const SweepPlan& plan, double grid_value);

/// Rows for grid indices [begin, end) in grid order.
std::vector<PointResult> run_sweep_detailed(const SweepPlan& plan, std::size_t begin,
                                            std::size_t end);
std::vector<PointResult> run_sweep_detailed(const SweepPlan& plan);
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

enum class Column {
  e0_i,
  e0_f,
  avg_work,
  delta_u,
  irr_work,
  variance,
  avg_work_per_delta,
  irr_per_delta2,
  eq2_discrepancy,
};

std::optional<Column> parse_column(std::string_view name);
std::string_view to_string(Column c);
double column_value(const SweepRow& row, Column c);

struct Jump {
  std::size_t index = 0;  // rows[index] -> rows[index + 1]
  double left = 0.0;
  double right = 0.0;
  double size = 0.0;  // left value minus right value
};

/// Adjacent differences above threshold_factor times the median absolute
/// adjacent difference (floored at 1e-12). Non-finite entries are skipped.
std::vector<Jump> detect_jumps(const std::vector<SweepRow>& rows, Column column,
                               double threshold_factor = kDefaultJumpThreshold);

struct Slope {
  double at = 0.0;  // midpoint of the two grid values
  double value = 0.0;
};

/// Finite-difference derivative of a column between adjacent rows; pairs with
/// a non-finite entry are skipped.
std::vector<Slope> column_slopes(const std::vector<SweepRow>& rows, Column column);

inline constexpr std::string_view kCsvHeader =
    "model,n_sites,param,grid_value,delta,e0_i,e0_f,avg_work,delta_u,irr_work,"
    "variance,avg_work_per_delta,irr_per_delta2,eq2_discrepancy,flags";

std::string format_double(double v);
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> read_csv(std::istream& in);
std::vector<SweepRow> read_csv(const std::filesystem::path& path);

}  // namespace quenchlab
