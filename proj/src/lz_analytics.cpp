#include "quenchlab/lz_analytics.hpp"

#include <cmath>
#include <string>

#include "quenchlab/errors.hpp"

namespace quenchlab {

namespace {

// x = delta - 2 a lambda; the gap is R = sqrt(4 eps^2 + x^2) and E0 = -R/2.
double detuning(const LzParams& p, double lambda) { return p.delta - 2.0 * p.a * lambda; }

double gap(const LzParams& p, double lambda) {
  return std::hypot(2.0 * p.eps, detuning(p, lambda));
}

void require_nondegenerate(const LzParams& p, double lambda) {
  if (p.is_degenerate(lambda)) {
    throw DegeneratePointError(
        "ground state is degenerate at lambda = lambda_c with eps = 0 "
        "(derivatives undefined at the level crossing)");
  }
}

}  // namespace

void LzParams::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(a) || !std::isfinite(eps)) {
    throw ValidationError("Landau-Zener parameters must be finite");
  }
  if (a == 0.0) {
    throw ValidationError("invariant a != 0 violated: lambda is not a control parameter");
  }
  if (eps < 0.0) throw ValidationError("invariant eps >= 0 violated");
}

bool LzParams::is_degenerate(double lambda) const {
  return eps == 0.0 && std::abs(lambda - critical_lambda()) <= kLzDegeneracyTol;
}

double lz_ground_energy(const LzParams& p, double lambda) {
  p.validate();
  return -0.5 * gap(p, lambda);
}

double lz_denergy(const LzParams& p, double lambda) {
  p.validate();
  require_nondegenerate(p, lambda);
  const double x = detuning(p, lambda);
  return p.a * x / gap(p, lambda);
}

double lz_d2energy(const LzParams& p, double lambda) {
  p.validate();
  require_nondegenerate(p, lambda);
  if (p.eps == 0.0) return 0.0;
  const double r = gap(p, lambda);
  return -8.0 * p.a * p.a * p.eps * p.eps / (r * r * r);
}

double lz_average_work(const LzParams& p, double lam_i, double dlam) {
  return dlam * lz_denergy(p, lam_i);
}

double lz_latent_jump(const LzParams& p) {
  p.validate();
  if (p.eps > 0.0) {
    throw ValidationError("latent jump needs a level crossing (eps = 0); eps = " +
                          std::to_string(p.eps) + " gives an avoided crossing");
  }
  return 2.0 * p.a;
}

WorkDistribution lz_work_distribution(const LzParams& p, double lam_i, double lam_f) {
  p.validate();
  require_nondegenerate(p, lam_i);
  // Half-gaps r and field components b = -x/2 of H = b sz + eps sx.
  const double bi = -0.5 * detuning(p, lam_i);
  const double bf = -0.5 * detuning(p, lam_f);
  const double ri = 0.5 * gap(p, lam_i);
  const double rf = 0.5 * gap(p, lam_f);
  const double w_ground = ri - rf;
  if (rf == 0.0) return make_distribution({{w_ground, 1.0}});

  // cos of the angle between the two ground-state Bloch vectors is
  // s / (ri rf); both weights are rationalized to avoid cancellation.
  const double rr = ri * rf;
  const double s = bi * bf + p.eps * p.eps;
  const double cross = p.eps * p.eps * (bi - bf) * (bi - bf);
  double p_ground = 0.0;
  double p_excited = 0.0;
  if (s >= 0.0) {
    p_excited = cross / (2.0 * rr * (rr + s));
    p_ground = (rr + s) / (2.0 * rr);
  } else {
    p_ground = cross / (2.0 * rr * (rr - s));
    p_excited = (rr - s) / (2.0 * rr);
  }
  return make_distribution({{w_ground, p_ground}, {ri + rf, p_excited}});
}

double lz_irr_work(const LzParams& p, double lam_i, double dlam, IrrMode mode) {
  p.validate();
  require_nondegenerate(p, lam_i);
  if (mode == IrrMode::second_order) {
    if (p.eps < kLzMinSecondOrderEps) {
      throw ValidationError("second-order irreversible work needs eps >= 1e-8");
    }
    return -0.5 * dlam * dlam * lz_d2energy(p, lam_i);
  }
  // <W> - Delta U = (R_f - (c^2 + u v) / R_i) / 2 with u, v the detunings at
  // lam_i, lam_f and c = 2 eps; rationalized when c^2 + u v > 0.
  const double u = detuning(p, lam_i);
  const double v = detuning(p, lam_i + dlam);
  const double c2 = 4.0 * p.eps * p.eps;
  const double ri = gap(p, lam_i);
  const double rf = gap(p, lam_i + dlam);
  const double k = c2 + u * v;
  if (k > 0.0) {
    const double d = u - v;
    return c2 * d * d / (2.0 * ri * (rf * ri + k));
  }
  return 0.5 * (rf - k / ri);
}

SparseOperator lz_hamiltonian(const LzParams& p, double lambda) {
  p.validate();
  const double b = -0.5 * p.delta + p.a * lambda;
  return SparseOperator(2, {{0, 0, b}, {1, 1, -b}, {0, 1, p.eps}, {1, 0, p.eps}});
}

SparseOperator lz_potential(const LzParams& p) {
  p.validate();
  return SparseOperator(2, {{0, 0, p.a}, {1, 1, -p.a}});
}

}  // namespace quenchlab
