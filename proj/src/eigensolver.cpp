#include "quenchlab/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "quenchlab/errors.hpp"

namespace quenchlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void scale(std::span<double> a, double s) {
  for (double& x : a) x *= s;
}

// Lowest `count` eigenpairs of a symmetric tridiagonal matrix.
struct TridiagonalPairs {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major, m x count
};

TridiagonalPairs lowest_tridiagonal(const std::vector<double>& alpha,
                                    const std::vector<double>& beta, int count) {
  const auto m = static_cast<lapack_int>(alpha.size());
  count = std::min<int>(count, static_cast<int>(m));
  std::vector<double> d = alpha;
  std::vector<double> e(beta.begin(), beta.begin() + (m - 1));
  e.push_back(0.0);
  TridiagonalPairs out;
  out.values.resize(static_cast<std::size_t>(m));
  out.vectors.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(count));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(m));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', m, d.data(), e.data(), 0.0, 0.0, 1, count, 0.0,
      &found, out.values.data(), out.vectors.data(), m, support.data());
  if (info != 0) throw Error("dstevr failed with info " + std::to_string(info));
  out.values.resize(static_cast<std::size_t>(found));
  return out;
}

void fill_dense_metadata(EigenResult& r) {
  if (r.energies.size() >= 2) {
    r.gap = r.energies[1] - r.energies[0];
    r.degenerate = *r.gap < kDegeneracyTol;
  }
}

void check_dense_guard(const SparseOperator& op) {
  if (op.dim() == 0) throw ValidationError("operator has dimension 0");
  if (op.dim() > kMaxDenseDim) {
    throw ValidationError("dense spectrum requested for dimension " +
                          std::to_string(op.dim()) + " > " +
                          std::to_string(kMaxDenseDim));
  }
}

}  // namespace

double residual_norm(const SparseOperator& op, std::span<const double> v, double e) {
  std::vector<double> hv(op.dim());
  op.apply(v, hv);
  double acc = 0.0;
  for (std::size_t i = 0; i < hv.size(); ++i) {
    const double r = hv[i] - e * v[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

EigenResult ground_state(const SparseOperator& op, const LanczosOptions& opts) {
  const std::size_t dim = op.dim();
  if (dim == 0) throw ValidationError("operator has dimension 0");

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> q(dim);
  for (double& x : q) x = uniform(rng);
  scale(q, 1.0 / norm(q));

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> w(dim);
  basis.push_back(std::move(q));

  const int max_iter = std::max(1, opts.max_iterations);
  double last_residual = INFINITY;

  for (int it = 0; it < max_iter; ++it) {
    const std::vector<double>& qj = basis.back();
    op.apply(qj, w);
    alpha.push_back(dot(qj, w));
    // Two passes of classical Gram-Schmidt against the whole Krylov basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : basis) {
        const double c = dot(qi, w);
        for (std::size_t k = 0; k < dim; ++k) w[k] -= c * qi[k];
      }
    }
    const double b = norm(w);
    const double scale_ref =
        std::max({1.0, std::abs(alpha.back()), beta.empty() ? 0.0 : beta.back()});
    const bool exhausted = b <= 1e-13 * scale_ref || basis.size() == dim;
    beta.push_back(b);

    const bool check = exhausted || it % 4 == 3 || it + 1 == max_iter;
    if (check) {
      const auto ritz = lowest_tridiagonal(alpha, beta, 2);
      const std::size_t m = alpha.size();
      const double theta = ritz.values[0];
      const double estimate = std::abs(b * ritz.vectors[m - 1]);
      if (exhausted || estimate <= opts.tol * std::max(1.0, std::abs(theta))) {
        EigenResult r;
        r.dim = dim;
        r.vector_data.assign(dim, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          const double s = ritz.vectors[i];
          const auto& qi = basis[i];
          for (std::size_t k = 0; k < dim; ++k) r.vector_data[k] += s * qi[k];
        }
        scale(r.vector_data, 1.0 / norm(r.vector_data));
        const double energy = op.expectation(r.vector_data);
        const double res = residual_norm(op, r.vector_data, energy);
        last_residual = res;
        if (exhausted || res <= opts.tol * std::max(1.0, std::abs(energy))) {
          r.energies = {energy};
          if (ritz.values.size() >= 2) {
            r.gap = ritz.values[1] - theta;
            r.degenerate = *r.gap < kDegeneracyTol;
          }
          r.max_residual = res;
          r.iterations = it + 1;
          return r;
        }
      }
    }
    if (exhausted) break;
    scale(w, 1.0 / b);
    basis.push_back(w);
  }
  throw ConvergenceError("Lanczos did not converge in " +
                             std::to_string(max_iter) +
                             " iterations (residual " +
                             std::to_string(last_residual) + ")",
                         last_residual, max_iter);
}

EigenResult full_spectrum(const SparseOperator& op) {
  check_dense_guard(op);
  const auto n = static_cast<lapack_int>(op.dim());
  EigenResult r;
  r.dim = op.dim();
  r.vector_data = op.to_dense();
  r.energies.resize(op.dim());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n,
                                         r.vector_data.data(), n, r.energies.data());
  if (info != 0) throw Error("dsyevd failed with info " + std::to_string(info));
  fill_dense_metadata(r);
  for (std::size_t k = 0; k < r.count(); ++k) {
    r.max_residual = std::max(r.max_residual, residual_norm(op, r.vector(k), r.energies[k]));
  }
  return r;
}

std::vector<double> spectrum_values(const SparseOperator& op) {
  check_dense_guard(op);
  const auto n = static_cast<lapack_int>(op.dim());
  std::vector<double> a = op.to_dense();
  std::vector<double> w(op.dim());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data());
  if (info != 0) throw Error("dsyevd failed with info " + std::to_string(info));
  return w;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag) {
  if (diag.empty()) return {};
  if (offdiag.size() + 1 != diag.size()) {
    throw ValidationError("tridiagonal off-diagonal must have n - 1 entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());
  e.push_back(0.0);
  const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N',
                                        static_cast<lapack_int>(d.size()), d.data(),
                                        e.data(), nullptr, 1);
  if (info != 0) throw Error("dstev failed with info " + std::to_string(info));
  return d;
}

}  // namespace quenchlab
