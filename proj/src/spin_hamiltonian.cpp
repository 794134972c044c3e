#include "quenchlab/spin_hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "quenchlab/errors.hpp"

namespace quenchlab {

std::string_view to_string(Boundary b) {
  return b == Boundary::open ? "open" : "periodic";
}

std::string_view to_string(QuenchParam p) {
  return p == QuenchParam::lambda_z ? "lambda_z" : "h";
}

void ChainSpec::validate() const {
  if (n_sites < 2) {
    throw ValidationError("n_sites must be >= 2 (got " +
                          std::to_string(n_sites) + ")");
  }
  if (n_sites > kMaxSparseSites) {
    throw ValidationError("n_sites must be <= " +
                          std::to_string(kMaxSparseSites) + " (got " +
                          std::to_string(n_sites) + ")");
  }
  if (pin_site < 0 || pin_site >= n_sites) {
    throw ValidationError("pin_site must satisfy 0 <= pin_site < n_sites");
  }
  if (boundary == Boundary::periodic && n_sites < 3) {
    throw ValidationError("periodic boundary needs n_sites >= 3");
  }
  for (double v : {jx, jy, lambda_z, field_h, pin_strength}) {
    if (!std::isfinite(v)) throw ValidationError("chain couplings must be finite");
  }
}

double ChainSpec::value(QuenchParam p) const {
  return p == QuenchParam::lambda_z ? lambda_z : field_h;
}

ChainSpec ChainSpec::with(QuenchParam p, double v) const {
  ChainSpec out = *this;
  (p == QuenchParam::lambda_z ? out.lambda_z : out.field_h) = v;
  return out;
}

std::vector<Bond> chain_bonds(const ChainSpec& spec) {
  std::vector<Bond> bonds;
  const int last = spec.boundary == Boundary::open ? spec.n_sites - 1 : spec.n_sites;
  bonds.reserve(static_cast<std::size_t>(last));
  for (int i = 0; i < last; ++i) {
    bonds.push_back({i, (i + 1) % spec.n_sites, spec.jx, spec.jy,
                     spec.lambda_z / 2.0});
  }
  return bonds;
}

// ---------------------------------------------------------------------------
// basis

SpinBasis::SpinBasis(int n_sites, std::optional<int> sector,
                     std::vector<Config> states)
    : n_sites_(n_sites), sector_(sector), states_(std::move(states)) {}

std::optional<std::size_t> SpinBasis::index_of(Config c) const {
  if (!sector_) {
    if (c >= states_.size()) return std::nullopt;
    return static_cast<std::size_t>(c);
  }
  auto it = std::lower_bound(states_.begin(), states_.end(), c);
  if (it == states_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

int magnetization(Config c, int n_sites) {
  return 2 * std::popcount(c) - n_sites;
}

std::vector<int> all_sectors(int n_sites) {
  std::vector<int> out;
  for (int m = -n_sites; m <= n_sites; m += 2) out.push_back(m);
  return out;
}

SpinBasis build_basis(int n_sites, std::optional<int> sector) {
  if (n_sites < 1 || n_sites > kMaxSparseSites) {
    throw ValidationError("n_sites must be in [1, " +
                          std::to_string(kMaxSparseSites) + "]");
  }
  const Config full = Config{1} << n_sites;
  std::vector<Config> states;
  if (!sector) {
    states.resize(full);
    for (Config c = 0; c < full; ++c) states[c] = c;
    return SpinBasis(n_sites, sector, std::move(states));
  }
  const int m = *sector;
  if (std::abs(m) > n_sites || (m + n_sites) % 2 != 0) {
    throw ValidationError("empty sector: total sigma^z " + std::to_string(m) +
                          " is unreachable with " + std::to_string(n_sites) +
                          " sites");
  }
  const int n_up = (m + n_sites) / 2;
  if (n_up == 0) {
    states.push_back(0);
  } else {
    // Gosper's hack enumerates fixed-popcount words in increasing order.
    Config c = (Config{1} << n_up) - 1;
    while (c < full) {
      states.push_back(c);
      const Config lowest = c & (~c + 1);
      const Config ripple = c + lowest;
      c = (((ripple ^ c) >> 2) / lowest) | ripple;
    }
  }
  return SpinBasis(n_sites, sector, std::move(states));
}

// ---------------------------------------------------------------------------
// sparse operator

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> triplets)
    : dim_(dim) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  entries_.reserve(triplets.size());
  for (const Triplet& t : triplets) {
    if (t.row >= dim || t.col >= dim) {
      throw ValidationError("triplet index out of range");
    }
    if (!entries_.empty() && entries_.back().row == t.row &&
        entries_.back().col == t.col) {
      entries_.back().value += t.value;
    } else {
      entries_.push_back(t);
    }
  }
  std::erase_if(entries_, [](const Triplet& t) { return t.value == 0.0; });

  row_start_.assign(dim_ + 1, 0);
  for (const Triplet& t : entries_) ++row_start_[t.row + 1];
  for (std::size_t r = 0; r < dim_; ++r) row_start_[r + 1] += row_start_[r];
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw ValidationError("operator dimension mismatch");
  }
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      acc += entries_[k].value * x[entries_[k].col];
    }
    y[r] = acc;
  }
}

double SparseOperator::expectation(std::span<const double> x) const {
  if (x.size() != dim_) throw ValidationError("operator dimension mismatch");
  double acc = 0.0;
  for (const Triplet& t : entries_) acc += x[t.row] * t.value * x[t.col];
  return acc;
}

std::vector<double> SparseOperator::to_dense() const {
  std::vector<double> m(dim_ * dim_, 0.0);
  for (const Triplet& t : entries_) m[t.col * dim_ + t.row] = t.value;
  return m;
}

std::vector<double> SparseOperator::diagonal() const {
  std::vector<double> d(dim_, 0.0);
  for (const Triplet& t : entries_) {
    if (t.row == t.col) d[t.row] = t.value;
  }
  return d;
}

double SparseOperator::trace() const {
  double acc = 0.0;
  for (const Triplet& t : entries_) {
    if (t.row == t.col) acc += t.value;
  }
  return acc;
}

double SparseOperator::frobenius_norm_squared() const {
  double acc = 0.0;
  for (const Triplet& t : entries_) acc += t.value * t.value;
  return acc;
}

bool SparseOperator::is_symmetric(double tol) const {
  for (const Triplet& t : entries_) {
    if (t.row == t.col) continue;
    const auto begin = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[t.col]);
    const auto end = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[t.col + 1]);
    auto it = std::lower_bound(begin, end, t.row, [](const Triplet& e, std::size_t c) {
      return e.col < c;
    });
    if (it == end || it->col != t.row) return false;
    if (std::abs(it->value - t.value) > tol) return false;
  }
  return true;
}

SparseOperator axpy(const SparseOperator& a, double t, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("operator dimension mismatch");
  std::vector<Triplet> out(a.entries().begin(), a.entries().end());
  out.reserve(a.nnz() + b.nnz());
  for (const Triplet& e : b.entries()) out.push_back({e.row, e.col, t * e.value});
  return SparseOperator(a.dim(), std::move(out));
}

double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("operator dimension mismatch");
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  const auto ea = a.entries().end();
  const auto eb = b.entries().end();
  auto before = [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  };
  double worst = 0.0;
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && before(*ia, *ib))) {
      worst = std::max(worst, std::abs(ia->value));
      ++ia;
    } else if (ia == ea || before(*ib, *ia)) {
      worst = std::max(worst, std::abs(ib->value));
      ++ib;
    } else {
      worst = std::max(worst, std::abs(ia->value - ib->value));
      ++ia;
      ++ib;
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// builders

namespace {

inline double sz(Config c, int site) { return (c >> site) & 1U ? 1.0 : -1.0; }

void check_basis(const ChainSpec& spec, const SpinBasis& basis) {
  spec.validate();
  if (basis.n_sites() != spec.n_sites) {
    throw ValidationError("basis and chain disagree on n_sites");
  }
}

}  // namespace

SparseOperator build_hamiltonian(const ChainSpec& spec, const SpinBasis& basis) {
  const auto bonds = chain_bonds(spec);
  return build_hamiltonian(spec, basis, bonds);
}

SparseOperator build_hamiltonian(const ChainSpec& spec, const SpinBasis& basis,
                                 std::span<const Bond> bonds) {
  check_basis(spec, basis);
  const bool restricted = basis.sector().has_value();
  for (const Bond& b : bonds) {
    if (b.i < 0 || b.j < 0 || b.i >= spec.n_sites || b.j >= spec.n_sites || b.i == b.j) {
      throw ValidationError("bond sites out of range");
    }
    if (restricted && b.jx != b.jy) {
      throw ValidationError(
          "sector-restricted basis requires jx == jy (unequal XY couplings do "
          "not conserve total sigma^z)");
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(basis.size() * (bonds.size() + 1));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Config c = basis.state(col);
    double diag = 0.0;
    for (const Bond& b : bonds) {
      const bool parallel = ((c >> b.i) & 1U) == ((c >> b.j) & 1U);
      diag += b.jz * (parallel ? 1.0 : -1.0);
      // sx sx flips both spins; sy sy adds a phase of -1 on parallel pairs.
      const double amp = parallel ? b.jx - b.jy : b.jx + b.jy;
      if (amp != 0.0) {
        const Config flipped = c ^ (Config{1} << b.i) ^ (Config{1} << b.j);
        if (auto row = basis.index_of(flipped)) triplets.push_back({*row, col, amp});
      }
    }
    double field = 0.0;
    for (int s = 0; s < spec.n_sites; ++s) field += sz(c, s);
    diag += spec.field_h * field;
    diag += spec.pin_strength * sz(c, spec.pin_site);
    triplets.push_back({col, col, diag});
  }
  return SparseOperator(basis.size(), std::move(triplets));
}

SparseOperator build_potential(const ChainSpec& spec, QuenchParam param,
                               const SpinBasis& basis) {
  check_basis(spec, basis);
  if (basis.sector() && spec.jx != spec.jy) {
    throw ValidationError("sector-restricted basis requires jx == jy");
  }
  const auto bonds = chain_bonds(spec);
  std::vector<Triplet> triplets;
  triplets.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Config c = basis.state(k);
    double v = 0.0;
    if (param == QuenchParam::lambda_z) {
      for (const Bond& b : bonds) v += 0.5 * sz(c, b.i) * sz(c, b.j);
    } else {
      v = magnetization(c, spec.n_sites);
    }
    triplets.push_back({k, k, v});
  }
  return SparseOperator(basis.size(), std::move(triplets));
}

}  // namespace quenchlab
