#pragma once

#include "quenchlab/spin_hamiltonian.hpp"
#include "quenchlab/work_stats.hpp"

namespace quenchlab {

/// Two-level system H(lambda) = (-delta/2 + a lambda) sz + eps sx.
struct LzParams {
  double delta = 2.0;
  double a = 1.0;
  double eps = 0.0;

  /// Throws ValidationError unless a != 0, eps >= 0 and all fields finite.
  void validate() const;
  /// lambda_c = delta / (2a), centre of the (avoided) crossing.
  double critical_lambda() const { return delta / (2.0 * a); }
  /// True when eps == 0 and lambda is within 1e-12 of lambda_c.
  bool is_degenerate(double lambda) const;
};

inline constexpr double kLzDegeneracyTol = 1e-12;
inline constexpr double kLzMinSecondOrderEps = 1e-8;

enum class IrrMode { exact, second_order };

double lz_ground_energy(const LzParams& p, double lambda);

/// dE0/dlambda. Throws DegeneratePointError at the level crossing.
double lz_denergy(const LzParams& p, double lambda);

/// d2E0/dlambda2; -a^2/eps at lambda_c. Throws DegeneratePointError at the
/// level crossing.
double lz_d2energy(const LzParams& p, double lambda);

/// Hellmann-Feynman average work dlam * dE0/dlambda at lam_i.
double lz_average_work(const LzParams& p, double lam_i, double dlam);

/// Jump of <W>/dlambda across lambda_c (left limit minus right limit), 2a.
/// Only defined for a true level crossing; eps > 0 throws ValidationError.
double lz_latent_jump(const LzParams& p);

/// Exact two-outcome distribution from the 2x2 eigendecompositions of
/// H(lam_i) and H(lam_f).
WorkDistribution lz_work_distribution(const LzParams& p, double lam_i, double lam_f);

/// Irreversible work of the quench lam_i -> lam_i + dlam. `exact` is
/// <W> - Delta U in closed form; `second_order` is -(dlam^2/2) d2E0 and
/// requires eps >= 1e-8.
double lz_irr_work(const LzParams& p, double lam_i, double dlam,
                   IrrMode mode = IrrMode::exact);

/// H(lambda) in the (up, down) basis, for numerical cross-checks.
SparseOperator lz_hamiltonian(const LzParams& p, double lambda);
/// dH/dlambda = a sz.
SparseOperator lz_potential(const LzParams& p);

}  // namespace quenchlab
