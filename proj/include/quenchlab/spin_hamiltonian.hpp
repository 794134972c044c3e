#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace quenchlab {

// Site i is bit i of the configuration; bit 1 is spin up (sigma^z = +1).
using Config = std::uint32_t;

inline constexpr int kMaxSparseSites = 24;
inline constexpr int kMaxDenseSites = 14;

enum class Boundary { open, periodic };

/// Parameter whose value is quenched; both generators are diagonal in the
/// computational basis.
enum class QuenchParam { lambda_z, field_h };

std::string_view to_string(Boundary b);
std::string_view to_string(QuenchParam p);

/// Open or periodic XYZ chain
///   H = sum_<ij> [jx sx sx + jy sy sy + (lambda_z/2) sz sz] + field_h sum_i sz_i
///       + pin_strength sz_{pin_site}
struct ChainSpec {
  int n_sites = 2;
  double jx = 1.0;
  double jy = 1.0;
  double lambda_z = 0.0;
  double field_h = 0.0;
  double pin_strength = -1e-3;  // negative selects the all-up ferromagnet
  int pin_site = 0;
  Boundary boundary = Boundary::open;

  /// Throws ValidationError when n_sites, pin_site or the boundary setting is
  /// out of range.
  void validate() const;

  double value(QuenchParam p) const;
  ChainSpec with(QuenchParam p, double v) const;
};

/// One nearest-neighbour bond with its own couplings; `jz` multiplies sz sz
/// directly (the chain default is lambda_z / 2).
struct Bond {
  int i = 0;
  int j = 1;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
};

std::vector<Bond> chain_bonds(const ChainSpec& spec);

class SpinBasis {
 public:
  SpinBasis(int n_sites, std::optional<int> sector, std::vector<Config> states);

  int n_sites() const noexcept { return n_sites_; }
  const std::optional<int>& sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return states_.size(); }
  Config state(std::size_t k) const { return states_[k]; }
  std::span<const Config> states() const noexcept { return states_; }

  /// Position of `c` in the basis, or nullopt if it is outside the sector.
  std::optional<std::size_t> index_of(Config c) const;

 private:
  int n_sites_;
  std::optional<int> sector_;
  std::vector<Config> states_;
};

/// Full basis when `sector` is unset; otherwise the states whose sum of
/// sigma^z equals `sector`.
SpinBasis build_basis(int n_sites, std::optional<int> sector = std::nullopt);

/// Total-magnetization sectors -n, -n+2, ..., n.
std::vector<int> all_sectors(int n_sites);

int magnetization(Config c, int n_sites);

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Real symmetric operator in coordinate form. Triplets are kept sorted by
/// (row, col) with duplicates summed; a row index supports fast products.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, std::vector<Triplet> triplets);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Triplet> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  /// y = A x
  void apply(std::span<const double> x, std::span<double> y) const;
  double expectation(std::span<const double> x) const;

  /// Column-major dense copy.
  std::vector<double> to_dense() const;
  std::vector<double> diagonal() const;
  double trace() const;
  double frobenius_norm_squared() const;
  bool is_symmetric(double tol = 0.0) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Triplet> entries_;
  std::vector<std::size_t> row_start_;
};

/// a + t * b
SparseOperator axpy(const SparseOperator& a, double t, const SparseOperator& b);

/// Largest absolute entry-wise difference, treating missing entries as 0.
double max_abs_difference(const SparseOperator& a, const SparseOperator& b);

SparseOperator build_hamiltonian(const ChainSpec& spec, const SpinBasis& basis);

/// General form used by the chain builder. `field_h` and the pin are taken
/// from `spec`; bonds come from the caller.
SparseOperator build_hamiltonian(const ChainSpec& spec, const SpinBasis& basis,
                                 std::span<const Bond> bonds);

/// dH/d(param): (1/2) sum sz sz for lambda_z, sum sz for field_h.
SparseOperator build_potential(const ChainSpec& spec, QuenchParam param,
                               const SpinBasis& basis);

}  // namespace quenchlab
