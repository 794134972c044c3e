#include "quenchlab/sweep_engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "quenchlab/errors.hpp"
#include "quenchlab/free_fermion.hpp"

namespace quenchlab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// plan

std::string_view to_string(Model m) {
  switch (m) {
    case Model::lz: return "LZ";
    case Model::xxz_ed: return "XXZ_ED";
    case Model::xx_ed: return "XX_ED";
    case Model::xx_ff: return "XX_FF";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view s) {
  for (Model m : {Model::lz, Model::xxz_ed, Model::xx_ed, Model::xx_ff}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

void Grid::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ValidationError("grid bounds must be finite");
  }
  if (!(start < stop)) throw ValidationError("grid needs start < stop");
  if (steps < 2) throw ValidationError("grid needs steps >= 2");
}

Grid parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw ValidationError("grid must be start:stop:steps (got '" + std::string(text) + "')");
  }
  auto number = [&](std::string_view part, auto& out) {
    const char* b = part.data();
    const char* e = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e) {
      throw ValidationError("cannot parse grid component '" + std::string(part) + "'");
    }
  };
  Grid g;
  number(text.substr(0, first), g.start);
  number(text.substr(first + 1, second - first - 1), g.stop);
  number(text.substr(second + 1), g.steps);
  g.validate();
  return g;
}

double default_delta(Model m) { return m == Model::xx_ff ? 1e-3 : 1e-5; }

int SweepPlan::n_sites() const { return model == Model::lz ? 1 : chain.n_sites; }

std::string SweepPlan::param_name() const {
  if (model == Model::lz) return "lambda";
  return std::string(to_string(param));
}

void SweepPlan::validate() const {
  grid.validate();
  if (!std::isfinite(delta) || delta == 0.0) {
    throw ValidationError("quench size delta must be finite and non-zero");
  }
  if (workers < 1) throw ValidationError("workers must be >= 1");
  if (!(solver.tol > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (solver.max_iterations < 1) throw ValidationError("solver max_iterations must be >= 1");
  switch (model) {
    case Model::lz:
      lz.validate();
      break;
    case Model::xxz_ed:
    case Model::xx_ed:
      chain.validate();
      if (model == Model::xx_ed && param != QuenchParam::field_h) {
        throw ValidationError("XX_ED sweeps quench the field h");
      }
      if (chain.jx != chain.jy && chain.n_sites > kMaxDenseSites) {
        throw ValidationError("jx != jy needs the full basis, limited to n_sites <= " +
                              std::to_string(kMaxDenseSites));
      }
      break;
    case Model::xx_ff:
      if (chain.n_sites < 2) throw ValidationError("n_sites must be >= 2");
      if (chain.jx != chain.jy) throw ValidationError("free-fermion XX chain needs jx == jy");
      if (chain.lambda_z != 0.0) throw ValidationError("free-fermion XX chain needs lambda_z = 0");
      if (chain.boundary != Boundary::open) {
        throw ValidationError("free-fermion sweeps use the open chain");
      }
      if (param != QuenchParam::field_h) throw ValidationError("XX_FF sweeps quench the field h");
      break;
  }
}

std::vector<double> singular_points(const SweepPlan& plan) {
  switch (plan.model) {
    case Model::lz:
      if (plan.lz.eps == 0.0) return {plan.lz.critical_lambda()};
      return {};
    case Model::xxz_ed:
      // The isotropic ferromagnet at lambda = -2|J| has a degenerate
      // multiplet spanning every magnetization sector.
      if (plan.param == QuenchParam::lambda_z && plan.chain.jx == plan.chain.jy &&
          plan.chain.field_h == 0.0) {
        return {-2.0 * std::abs(plan.chain.jx)};
      }
      return {};
    case Model::xx_ed:
    case Model::xx_ff:
      if (plan.param == QuenchParam::field_h && plan.chain.jx == plan.chain.jy &&
          plan.chain.lambda_z == 0.0 && plan.chain.boundary == Boundary::open) {
        return xx_zero_mode_fields(plan.chain.n_sites, plan.chain.jx, plan.grid.start - 1.0,
                                   plan.grid.stop + 1.0);
      }
      return {};
  }
  return {};
}

std::vector<double> grid_values(const SweepPlan& plan) {
  plan.grid.validate();
  const auto singular = singular_points(plan);
  const double step = plan.grid.step();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(plan.grid.steps));
  for (int k = 0; k < plan.grid.steps; ++k) {
    double g = k + 1 == plan.grid.steps ? plan.grid.stop : plan.grid.start + k * step;
    for (double s : singular) {
      if (std::abs(g - s) <= kGridNudgeTol) {
        g += 0.5 * step;
        break;
      }
    }
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// rows

bool SweepRow::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

namespace {

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

bool operator==(const SweepRow& a, const SweepRow& b) {
  return a.model == b.model && a.n_sites == b.n_sites && a.param == b.param &&
         same_double(a.grid_value, b.grid_value) && same_double(a.delta, b.delta) &&
         same_double(a.e0_i, b.e0_i) && same_double(a.e0_f, b.e0_f) &&
         same_double(a.avg_work, b.avg_work) && same_double(a.delta_u, b.delta_u) &&
         same_double(a.irr_work, b.irr_work) && same_double(a.variance, b.variance) &&
         same_double(a.avg_work_per_delta, b.avg_work_per_delta) &&
         same_double(a.irr_per_delta2, b.irr_per_delta2) &&
         same_double(a.eq2_discrepancy, b.eq2_discrepancy) && a.flags == b.flags;
}

namespace {

SweepRow blank_row(const SweepPlan& plan, double g) {
  SweepRow r;
  r.model = std::string(to_string(plan.model));
  r.n_sites = plan.n_sites();
  r.param = plan.param_name();
  r.grid_value = g;
  r.delta = plan.delta;
  r.e0_i = r.e0_f = r.avg_work = r.delta_u = r.irr_work = r.variance = kNaN;
  r.avg_work_per_delta = r.irr_per_delta2 = r.eq2_discrepancy = kNaN;
  return r;
}

void add_flag(SweepRow& r, std::string_view f) {
  if (!r.has_flag(f)) r.flags.emplace_back(f);
}

void finish_row(SweepRow& r, double e0_m) {
  r.avg_work_per_delta = r.avg_work / r.delta;
  r.irr_per_delta2 = r.irr_work / (r.delta * r.delta);
  r.eq2_discrepancy = irr_second_order_check({e0_m, r.e0_i, r.e0_f}, std::abs(r.delta),
                                             r.irr_work);
  if (r.irr_work < -1e-12) add_flag(r, flag::clausius);
}

void check_first_moment(PointResult& out) {
  if (!out.distribution) return;
  const auto c = check_distribution(*out.distribution, out.row.delta_u, out.row.avg_work);
  if (c.first_moment_error > 1e-10) add_flag(out.row, flag::first_moment);
  if (out.row.variance <= kCommutingVarianceTol) add_flag(out.row, flag::commuting);
}

PointResult evaluate_lz(const SweepPlan& plan, double g) {
  const LzParams& p = plan.lz;
  const double d = plan.delta;
  PointResult out{blank_row(plan, g), std::nullopt, std::nullopt};
  SweepRow& r = out.row;
  r.e0_i = lz_ground_energy(p, g);
  r.e0_f = lz_ground_energy(p, g + d);
  r.avg_work = lz_average_work(p, g, d);
  r.delta_u = r.e0_f - r.e0_i;
  r.irr_work = lz_irr_work(p, g, d, IrrMode::exact);
  out.distribution = lz_work_distribution(p, g, g + d);
  r.variance = out.distribution->variance();
  out.ground_overlap = out.distribution->outcomes.front().probability;
  finish_row(r, lz_ground_energy(p, g - d));
  check_first_moment(out);
  return out;
}

// `base` is the same chain at any field; its modes are shifted rigidly.
PointResult evaluate_free_fermion(const SweepPlan& plan, double g,
                                  const FreeFermionChain& base) {
  const double d = plan.delta;
  PointResult out{blank_row(plan, g), std::nullopt, std::nullopt};
  SweepRow& r = out.row;
  const FreeFermionChain chain = base.with_field(g);
  const XxQuench q = xx_quench_moments(chain, d);
  r.e0_i = chain.ground_energy();
  r.e0_f = chain.with_field(g + d).ground_energy();
  r.avg_work = q.moments.avg_work;
  r.delta_u = q.moments.delta_u;
  r.irr_work = q.moments.irr_work;
  r.variance = q.moments.variance;
  finish_row(r, chain.with_field(g - d).ground_energy());
  if (q.zero_mode) add_flag(r, flag::zero_mode);
  add_flag(r, flag::commuting);
  return out;
}

// Lowest energy of each symmetry block of H(spec).
struct BlockGround {
  std::vector<EigenResult> ground;
  std::size_t best = 0;
  double second_best_gap = INFINITY;
};

BlockGround block_grounds(const ChainSpec& spec, const std::vector<SpinBasis>& blocks,
                          const LanczosOptions& opts) {
  BlockGround out;
  out.ground.reserve(blocks.size());
  for (const SpinBasis& b : blocks) {
    out.ground.push_back(ground_state(build_hamiltonian(spec, b), opts));
  }
  for (std::size_t k = 1; k < out.ground.size(); ++k) {
    if (out.ground[k].energies[0] < out.ground[out.best].energies[0]) out.best = k;
  }
  for (std::size_t k = 0; k < out.ground.size(); ++k) {
    if (k == out.best) continue;
    out.second_best_gap = std::min(
        out.second_best_gap, out.ground[k].energies[0] - out.ground[out.best].energies[0]);
  }
  return out;
}

double min_energy(const BlockGround& g) { return g.ground[g.best].energies[0]; }

std::vector<SpinBasis> symmetry_blocks(const ChainSpec& spec) {
  std::vector<SpinBasis> blocks;
  if (spec.jx == spec.jy) {
    for (int m : all_sectors(spec.n_sites)) blocks.push_back(build_basis(spec.n_sites, m));
  } else {
    blocks.push_back(build_basis(spec.n_sites));
  }
  return blocks;
}

PointResult evaluate_chain(const SweepPlan& plan, double g) {
  const double d = plan.delta;
  PointResult out{blank_row(plan, g), std::nullopt, std::nullopt};
  SweepRow& r = out.row;
  const LanczosOptions opts{plan.solver.tol, plan.solver.max_iterations, plan.solver.seed};
  const ChainSpec spec_i = plan.chain.with(plan.param, g);
  const ChainSpec spec_f = plan.chain.with(plan.param, g + d);
  const ChainSpec spec_m = plan.chain.with(plan.param, g - d);
  const auto blocks = symmetry_blocks(plan.chain);

  const BlockGround gi = block_grounds(spec_i, blocks, opts);
  const BlockGround gf = block_grounds(spec_f, blocks, opts);
  const BlockGround gm = block_grounds(spec_m, blocks, opts);
  const std::size_t s0 = gi.best;
  const EigenResult& initial = gi.ground[s0];
  const auto psi0 = initial.vector(0);
  if (gi.second_best_gap < kDegeneracyTol || initial.degenerate) add_flag(r, flag::degenerate);

  r.e0_i = initial.energies[0];
  r.e0_f = min_energy(gf);
  r.avg_work = average_work_hf(psi0, build_potential(spec_i, plan.param, blocks[s0]), d);

  if (blocks[s0].size() <= kMaxDenseDim && plan.chain.n_sites <= kMaxDenseSites) {
    const EigenResult fin = full_spectrum(build_hamiltonian(spec_f, blocks[s0]));
    if (fin.degenerate) add_flag(r, flag::degenerate);
    // The dense minimum is the better estimate of this block's ground level.
    const bool same_block = gf.best == s0;
    if (same_block || fin.energies[0] < r.e0_f) r.e0_f = fin.energies[0];
    out.distribution = work_distribution(psi0, fin, r.e0_i, r.e0_f);
    r.variance = out.distribution->variance();
    if (r.e0_f < fin.energies[0] - kMergeTol) {
      add_flag(r, flag::sector_change);
      out.ground_overlap = 0.0;
    } else {
      double ov = 0.0;
      const auto phi0 = fin.vector(0);
      for (std::size_t k = 0; k < psi0.size(); ++k) ov += phi0[k] * psi0[k];
      out.ground_overlap = ov * ov;
    }
  } else {
    add_flag(r, flag::no_distribution);
    if (gf.best != s0) add_flag(r, flag::sector_change);
  }
  r.delta_u = r.e0_f - r.e0_i;
  r.irr_work = r.avg_work - r.delta_u;
  finish_row(r, min_energy(gm));
  check_first_moment(out);
  return out;
}

}  // namespace

namespace {

PointResult evaluate_point(const SweepPlan& plan, double grid_value,
                           const std::optional<FreeFermionChain>& modes) {
  try {
    switch (plan.model) {
      case Model::lz: return evaluate_lz(plan, grid_value);
      case Model::xx_ff:
        return evaluate_free_fermion(
            plan, grid_value,
            modes ? *modes : FreeFermionChain(plan.chain.n_sites, plan.chain.jx, 0.0));
      case Model::xxz_ed:
      case Model::xx_ed: return evaluate_chain(plan, grid_value);
    }
  } catch (const DegeneratePointError&) {
    PointResult out{blank_row(plan, grid_value), std::nullopt, std::nullopt};
    add_flag(out.row, flag::degenerate);
    return out;
  } catch (const ConvergenceError&) {
    PointResult out{blank_row(plan, grid_value), std::nullopt, std::nullopt};
    add_flag(out.row, flag::solver_failure);
    return out;
  }
  throw Error("unknown model");
}

}  // namespace

PointResult evaluate_point(const SweepPlan& plan, double grid_value) {
  return evaluate_point(plan, grid_value, std::nullopt);
}

std::vector<PointResult> run_sweep_detailed(const SweepPlan& plan, std::size_t begin,
                                            std::size_t end) {
  plan.validate();
  const auto values = grid_values(plan);
  end = std::min(end, values.size());
  if (begin >= end) return {};
  std::vector<PointResult> results(end - begin);
  std::optional<FreeFermionChain> modes;
  if (plan.model == Model::xx_ff) modes.emplace(plan.chain.n_sites, plan.chain.jx, 0.0);

  std::atomic<std::size_t> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < end; k = next++) {
      try {
        results[k - begin] = evaluate_point(plan, values[k], modes);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(plan.workers, end - begin));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<PointResult> run_sweep_detailed(const SweepPlan& plan) {
  return run_sweep_detailed(plan, 0, static_cast<std::size_t>(plan.grid.steps));
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
  std::vector<SweepRow> rows;
  for (auto& p : run_sweep_detailed(plan)) rows.push_back(std::move(p.row));
  return rows;
}

// ---------------------------------------------------------------------------
// jumps

namespace {

constexpr std::pair<Column, std::string_view> kColumnNames[] = {
    {Column::e0_i, "e0_i"},
    {Column::e0_f, "e0_f"},
    {Column::avg_work, "avg_work"},
    {Column::delta_u, "delta_u"},
    {Column::irr_work, "irr_work"},
    {Column::variance, "variance"},
    {Column::avg_work_per_delta, "avg_work_per_delta"},
    {Column::irr_per_delta2, "irr_per_delta2"},
    {Column::eq2_discrepancy, "eq2_discrepancy"},
};

}  // namespace

std::optional<Column> parse_column(std::string_view name) {
  for (auto [c, n] : kColumnNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(Column c) {
  for (auto [col, n] : kColumnNames) {
    if (col == c) return n;
  }
  return "?";
}

double column_value(const SweepRow& row, Column c) {
  switch (c) {
    case Column::e0_i: return row.e0_i;
    case Column::e0_f: return row.e0_f;
    case Column::avg_work: return row.avg_work;
    case Column::delta_u: return row.delta_u;
    case Column::irr_work: return row.irr_work;
    case Column::variance: return row.variance;
    case Column::avg_work_per_delta: return row.avg_work_per_delta;
    case Column::irr_per_delta2: return row.irr_per_delta2;
    case Column::eq2_discrepancy: return row.eq2_discrepancy;
  }
  return kNaN;
}

std::vector<Jump> detect_jumps(const std::vector<SweepRow>& rows, Column column,
                               double threshold_factor) {
  if (rows.size() < 4) throw ValidationError("jump detection needs at least 4 rows");
  if (!(threshold_factor > 0.0)) throw ValidationError("threshold factor must be positive");
  std::vector<Jump> candidates;
  std::vector<double> magnitudes;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double a = column_value(rows[k], column);
    const double b = column_value(rows[k + 1], column);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    candidates.push_back({k, rows[k].grid_value, rows[k + 1].grid_value, a - b});
    magnitudes.push_back(std::abs(a - b));
  }
  if (magnitudes.empty()) return {};
  std::vector<double> sorted = magnitudes;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  double median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(sorted.begin(),
                                               sorted.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  const double threshold = threshold_factor * std::max(median, 1e-12);
  std::vector<Jump> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (magnitudes[k] > threshold) out.push_back(candidates[k]);
  }
  return out;
}

std::vector<Slope> column_slopes(const std::vector<SweepRow>& rows, Column column) {
  std::vector<Slope> out;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double a = column_value(rows[k], column);
    const double b = column_value(rows[k + 1], column);
    const double dx = rows[k + 1].grid_value - rows[k].grid_value;
    if (!std::isfinite(a) || !std::isfinite(b) || dx == 0.0) continue;
    out.push_back({0.5 * (rows[k].grid_value + rows[k + 1].grid_value), (b - a) / dx});
  }
  return out;
}

// ---------------------------------------------------------------------------
// csv

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const SweepRow& r) {
  out << r.model << ',' << r.n_sites << ',' << r.param;
  for (double v : {r.grid_value, r.delta, r.e0_i, r.e0_f, r.avg_work, r.delta_u, r.irr_work,
                   r.variance, r.avg_work_per_delta, r.irr_per_delta2, r.eq2_discrepancy}) {
    out << ',' << format_double(v);
  }
  out << ',';
  for (std::size_t k = 0; k < r.flags.size(); ++k) {
    if (k) out << ';';
    out << r.flags[k];
  }
  out << '\n';
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_csv(rows, out);
  if (!out) throw Error("write to " + path.string() + " failed");
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_double(std::string_view field, std::string_view column, std::size_t line) {
  double v = 0.0;
  const char* b = field.data();
  const char* e = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || field.empty()) {
    throw SchemaError("cannot parse '" + std::string(field) + "' in column " +
                          std::string(column),
                      line);
  }
  return v;
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream& in) {
  const auto expected = split(kCsvHeader, ',');
  std::vector<SweepRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (!have_header) {
      for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k >= fields.size() || fields[k] != expected[k]) {
          throw SchemaError("header mismatch at column '" + std::string(expected[k]) +
                                "' (found '" +
                                (k < fields.size() ? std::string(fields[k]) : std::string()) +
                                "')",
                            line_no);
        }
      }
      if (fields.size() != expected.size()) {
        throw SchemaError("header has unexpected extra column '" +
                              std::string(fields[expected.size()]) + "'",
                          line_no);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      throw SchemaError("expected " + std::to_string(expected.size()) + " fields, found " +
                            std::to_string(fields.size()),
                        line_no);
    }
    SweepRow r;
    r.model = std::string(fields[0]);
    {
      const auto f = fields[1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), r.n_sites);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw SchemaError("cannot parse '" + std::string(f) + "' in column n_sites", line_no);
      }
    }
    r.param = std::string(fields[2]);
    double* targets[] = {&r.grid_value, &r.delta, &r.e0_i, &r.e0_f, &r.avg_work,
                         &r.delta_u, &r.irr_work, &r.variance, &r.avg_work_per_delta,
                         &r.irr_per_delta2, &r.eq2_discrepancy};
    for (std::size_t k = 0; k < std::size(targets); ++k) {
      *targets[k] = parse_double(fields[3 + k], expected[3 + k], line_no);
    }
    if (!fields[14].empty()) {
      for (auto f : split(fields[14], ';')) {
        if (!f.empty()) r.flags.emplace_back(f);
      }
    }
    rows.push_back(std::move(r));
  }
  if (!have_header) throw SchemaError("missing header row", line_no == 0 ? 1 : line_no);
  return rows;
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace quenchlab
