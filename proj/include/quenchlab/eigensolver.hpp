#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quenchlab/spin_hamiltonian.hpp"

namespace quenchlab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr double kDegeneracyTol = 1e-10;
inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << kMaxDenseSites;

/// Eigenpairs in ascending order. Vectors are stored column by column.
struct EigenResult {
  std::size_t dim = 0;
  std::vector<double> energies;
  std::vector<double> vector_data;
  std::optional<double> gap;
  bool degenerate = false;
  double max_residual = 0.0;
  int iterations = 0;

  std::size_t count() const noexcept { return energies.size(); }
  std::span<const double> vector(std::size_t k) const {
    return std::span<const double>(vector_data).subspan(k * dim, dim);
  }
};

struct LanczosOptions {
  double tol = 1e-10;
  int max_iterations = 500;
  std::uint64_t seed = kDefaultSeed;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization. Converged when
/// ||Hv - Ev|| <= tol * max(1, |E|). `gap` is the distance to the second Ritz
/// value when one exists; `degenerate` is set if it falls below
/// kDegeneracyTol. Throws ConvergenceError after max_iterations.
EigenResult ground_state(const SparseOperator& op, const LanczosOptions& opts = {});

/// Complete dense eigendecomposition (LAPACK dsyevd). Throws ValidationError
/// above kMaxDenseDim.
EigenResult full_spectrum(const SparseOperator& op);

/// Eigenvalues only, same guard as full_spectrum.
std::vector<double> spectrum_values(const SparseOperator& op);

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal, ascending.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag);

/// ||A v - e v||
double residual_norm(const SparseOperator& op, std::span<const double> v, double e);

}  // namespace quenchlab
