#include "quenchlab/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quenchlab/eigensolver.hpp"
#include "quenchlab/errors.hpp"

namespace quenchlab {

namespace {

void require_size(int n) {
  if (n < 2) throw ValidationError("free-fermion chain needs n >= 2");
}

std::vector<double> periodic_modes(int n, double j, double h, Parity parity) {
  // Even filling sees antiperiodic fermions, odd filling periodic ones.
  const double offset = parity == Parity::even ? 0.5 : 0.0;
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double k = 2.0 * std::numbers::pi * (m + offset) / n;
    e[static_cast<std::size_t>(m)] = 2.0 * h + 4.0 * j * std::cos(k);
  }
  std::sort(e.begin(), e.end());
  return e;
}

struct Filling {
  double energy = 0.0;  // sum of occupied mode energies
  int count = 0;
};

// Lowest filling of an ascending mode list with no constraint on parity.
Filling fill_negative(const std::vector<double>& modes) {
  Filling f;
  for (double e : modes) {
    if (e >= 0.0) break;
    f.energy += e;
    ++f.count;
  }
  return f;
}

// Lowest filling whose particle number has the requested parity.
Filling fill_with_parity(const std::vector<double>& modes, Parity parity) {
  Filling f = fill_negative(modes);
  const int want = parity == Parity::even ? 0 : 1;
  if (f.count % 2 == want) return f;
  const auto n = static_cast<int>(modes.size());
  Filling best{INFINITY, -1};
  if (f.count < n) best = {f.energy + modes[static_cast<std::size_t>(f.count)], f.count + 1};
  if (f.count > 0) {
    const Filling removed{f.energy - modes[static_cast<std::size_t>(f.count - 1)], f.count - 1};
    if (removed.energy < best.energy) best = removed;
  }
  return best;
}

}  // namespace

std::vector<double> xx_mode_energies(int n, double j, double h, Boundary boundary,
                                     Parity parity) {
  require_size(n);
  if (boundary == Boundary::periodic) return periodic_modes(n, j, h, parity);
  const std::vector<double> diag(static_cast<std::size_t>(n), 2.0 * h);
  const std::vector<double> hop(static_cast<std::size_t>(n - 1), 2.0 * j);
  return tridiagonal_eigenvalues(diag, hop);
}

FreeFermionChain::FreeFermionChain(int n, double j, double h, Boundary boundary)
    : n_(n), j_(j), h_(h), boundary_(boundary) {
  require_size(n);
  if (!std::isfinite(j) || !std::isfinite(h)) {
    throw ValidationError("free-fermion couplings must be finite");
  }
  even_ = xx_mode_energies(n, j, h, boundary, Parity::even);
  if (boundary == Boundary::periodic) odd_ = xx_mode_energies(n, j, h, boundary, Parity::odd);
}

FreeFermionChain FreeFermionChain::with_field(double h) const {
  FreeFermionChain out = *this;
  const double shift = 2.0 * (h - h_);
  out.h_ = h;
  for (double& e : out.even_) e += shift;
  for (double& e : out.odd_) e += shift;
  return out;
}

int FreeFermionChain::filled_modes() const {
  if (boundary_ == Boundary::open) return fill_negative(even_).count;
  const Filling e = fill_with_parity(even_, Parity::even);
  const Filling o = fill_with_parity(odd_, Parity::odd);
  return e.energy <= o.energy ? e.count : o.count;
}

double FreeFermionChain::ground_energy() const {
  double occupied = 0.0;
  if (boundary_ == Boundary::open) {
    occupied = fill_negative(even_).energy;
  } else {
    occupied = std::min(fill_with_parity(even_, Parity::even).energy,
                        fill_with_parity(odd_, Parity::odd).energy);
  }
  return occupied - n_ * h_;
}

int FreeFermionChain::magnetization() const { return 2 * filled_modes() - n_; }

bool FreeFermionChain::has_zero_mode() const {
  auto near_zero = [](double e) { return std::abs(e) < kZeroModeTol; };
  return std::any_of(even_.begin(), even_.end(), near_zero) ||
         std::any_of(odd_.begin(), odd_.end(), near_zero);
}

double xx_ground_energy(int n, double j, double h, Boundary boundary) {
  return FreeFermionChain(n, j, h, boundary).ground_energy();
}

Magnetization xx_magnetization(int n, double j, double h, Boundary boundary) {
  const FreeFermionChain chain(n, j, h, boundary);
  return {static_cast<double>(chain.magnetization()), chain.has_zero_mode()};
}

XxQuench xx_quench_moments(const FreeFermionChain& chain, double dh) {
  if (chain.boundary() != Boundary::open) {
    throw ValidationError("quench moments are defined for the open chain");
  }
  XxQuench out;
  out.zero_mode = chain.has_zero_mode();
  const int n = chain.n_sites();
  WorkMoments& m = out.moments;
  m.avg_work = dh * chain.magnetization();

  // Delta U = -n dh + sum_k [min(e_k + 2dh, 0) - min(e_k, 0)], with the
  // common shift 2dh taken exactly for modes that stay occupied.
  double occupied_change = 0.0;
  int stay_filled = 0;
  for (double e : chain.mode_energies()) {
    const double e_f = e + 2.0 * dh;
    if (e < 0.0 && e_f < 0.0) {
      ++stay_filled;
    } else if (e < 0.0) {
      occupied_change -= e;
    } else if (e_f < 0.0) {
      occupied_change += e_f;
    }
  }
  m.delta_u = (2 * stay_filled - n) * dh + occupied_change;
  m.irr_work = m.avg_work - m.delta_u;
  m.variance = 0.0;
  m.commuting = true;
  return out;
}

XxQuench xx_quench_moments(int n, double j, double h_i, double dh) {
  return xx_quench_moments(FreeFermionChain(n, j, h_i), dh);
}

std::vector<double> xx_zero_mode_fields(int n, double j, double lo, double hi) {
  require_size(n);
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) {
    const double h = -2.0 * j * std::cos(k * std::numbers::pi / (n + 1));
    if (h >= lo && h <= hi) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace quenchlab
