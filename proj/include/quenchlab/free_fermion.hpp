#pragma once

#include <vector>

#include "quenchlab/spin_hamiltonian.hpp"
#include "quenchlab/work_stats.hpp"

namespace quenchlab {

// The XX chain H = J sum (sx sx + sy sy) + h sum sz is a free-fermion
// problem under Jordan-Wigner with single-particle energies
//   e_k = 2h + 4J cos(k)
// and E0 = sum_{e_k < 0} e_k - n h. An occupied mode is an up spin, so
// sum sz = 2 N_filled - n and large positive h favours sz = -1.

inline constexpr double kZeroModeTol = 1e-12;

/// Fermion-number parity. Periodic spin chains map to antiperiodic fermions
/// for even filling and periodic fermions for odd filling.
enum class Parity { even, odd };

/// Single-particle energies, ascending. Open boundary: eigenvalues of the
/// tridiagonal matrix with diagonal 2h and hopping 2J. Periodic boundary:
/// the momentum set of the given parity sector.
std::vector<double> xx_mode_energies(int n, double j, double h,
                                     Boundary boundary = Boundary::open,
                                     Parity parity = Parity::even);

/// Open chain with its modes, shifted rigidly when the field changes.
class FreeFermionChain {
 public:
  FreeFermionChain(int n, double j, double h, Boundary boundary = Boundary::open);

  int n_sites() const noexcept { return n_; }
  double coupling() const noexcept { return j_; }
  double field() const noexcept { return h_; }
  Boundary boundary() const noexcept { return boundary_; }
  /// Open: the n modes. Periodic: the even-parity (antiperiodic) set.
  const std::vector<double>& mode_energies() const noexcept { return even_; }

  /// Same chain at field `h`; modes move by 2 (h - field()).
  FreeFermionChain with_field(double h) const;

  double ground_energy() const;
  /// 2 N_filled - n for the ground-state filling.
  int magnetization() const;
  bool has_zero_mode() const;
  int filled_modes() const;

 private:
  FreeFermionChain() = default;

  int n_ = 0;
  double j_ = 0.0;
  double h_ = 0.0;
  Boundary boundary_ = Boundary::open;
  std::vector<double> even_;
  std::vector<double> odd_;  // periodic only
};

double xx_ground_energy(int n, double j, double h, Boundary boundary = Boundary::open);

struct Magnetization {
  double value = 0.0;
  bool zero_mode = false;
};

/// Ground-state sum of <sz_i>.
Magnetization xx_magnetization(int n, double j, double h,
                               Boundary boundary = Boundary::open);

struct XxQuench {
  WorkMoments moments;
  bool zero_mode = false;
};

/// Moments of the commuting quench h_i -> h_i + dh on the open chain.
/// <W> = dh * M(h_i); Delta U is accumulated mode by mode.
XxQuench xx_quench_moments(int n, double j, double h_i, double dh);
XxQuench xx_quench_moments(const FreeFermionChain& chain, double dh);

/// Fields h in [lo, hi] at which an open-chain mode energy vanishes.
std::vector<double> xx_zero_mode_fields(int n, double j, double lo, double hi);

}  // namespace quenchlab
