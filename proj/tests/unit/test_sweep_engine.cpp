#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "quenchlab/errors.hpp"
#include "quenchlab/free_fermion.hpp"
#include "quenchlab/sweep_engine.hpp"

using namespace quenchlab;

namespace {

SweepPlan lz_plan(double eps, Grid g, double d = 1e-5) {
  SweepPlan p;
  p.model = Model::lz;
  p.lz = {2.0, 1.0, eps};
  p.grid = g;
  p.delta = d;
  return p;
}

SweepPlan xxz_plan(int n, Grid g, double d = 1e-4) {
  SweepPlan p;
  p.model = Model::xxz_ed;
  p.chain.n_sites = n;
  p.param = QuenchParam::lambda_z;
  p.grid = g;
  p.delta = d;
  return p;
}

std::string csv_text(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

}  // namespace

TEST_CASE("grid parsing") {
  const Grid g = parse_grid("-3:3:121");
  CHECK(g.start == -3.0);
  CHECK(g.stop == 3.0);
  CHECK(g.steps == 121);
  CHECK(g.step() == doctest::Approx(0.05));
  CHECK_THROWS_AS(parse_grid("1:0:5"), ValidationError);
  CHECK_THROWS_AS(parse_grid("0:1:1"), ValidationError);
  CHECK_THROWS_AS(parse_grid("0:1"), ValidationError);
  CHECK_THROWS_AS(parse_grid("0:x:4"), ValidationError);
}

TEST_CASE("grid points are nudged off degeneracies") {
  const auto v = grid_values(lz_plan(0.0, {0.5, 1.5, 101}));
  CHECK(v.size() == 101);
  CHECK(v[50] == doctest::Approx(1.005).epsilon(1e-12));
  const auto w = grid_values(lz_plan(0.3, {0.5, 1.5, 101}));
  CHECK(std::abs(w[50] - 1.0) < 1e-12);
  const auto x = grid_values(xxz_plan(6, {-3, 3, 121}));
  CHECK(x[20] == doctest::Approx(-1.975).epsilon(1e-12));
}

TEST_CASE("plan guards") {
  auto p = lz_plan(0.0, {0, 1, 5});
  p.lz.a = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = lz_plan(0.0, {0, 1, 5}, 0.0);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  auto c = xxz_plan(15, {0, 1, 5});
  c.chain.jy = 0.5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  SweepPlan f;
  f.model = Model::xx_ff;
  f.chain.n_sites = 16;
  f.param = QuenchParam::field_h;
  f.chain.lambda_z = 1.0;
  CHECK_THROWS_AS(f.validate(), ValidationError);
}

TEST_CASE("LZ latent jump sweep") {
  const auto rows = run_sweep(lz_plan(0.0, {0.5, 1.5, 101}));
  REQUIRE(rows.size() == 101);
  for (const auto& r : rows) {
    CHECK(r.avg_work_per_delta == (r.grid_value < 1.0 ? 1.0 : -1.0));
    CHECK(r.n_sites == 1);
    CHECK(r.param == "lambda");
  }
  const auto jumps = detect_jumps(rows, Column::avg_work_per_delta);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].left < 1.0);
  CHECK(jumps[0].right > 1.0);
  CHECK(std::abs(jumps[0].size - 2.0) <= 1e-9);
}

TEST_CASE("detected jump converges to 2a as the grid is refined") {
  std::vector<double> err;
  for (int steps : {21, 201, 2001}) {
    const auto rows = run_sweep(lz_plan(0.0, {0.5, 1.5, steps}));
    const auto jumps = detect_jumps(rows, Column::avg_work_per_delta);
    REQUIRE(jumps.size() == 1);
    err.push_back(std::abs(jumps[0].size - 2.0));
  }
  CHECK(err[1] <= err[0]);
  CHECK(err[2] <= err[1]);
  CHECK(err[2] <= 1e-9);
}

TEST_CASE("jump detection on flat and short columns") {
  std::vector<SweepRow> rows(6);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].grid_value = static_cast<double>(k);
    rows[k].avg_work = 3.0;
  }
  CHECK(detect_jumps(rows, Column::avg_work).empty());
  rows[3].avg_work = 3.0 + 1e-9;
  CHECK(detect_jumps(rows, Column::avg_work).size() == 2);
  rows.resize(3);
  CHECK_THROWS_AS(detect_jumps(rows, Column::avg_work), ValidationError);
}

TEST_CASE("XXZ rows carry consistent moments") {
  const auto res = run_sweep_detailed(xxz_plan(8, {-3, 3, 13}));
  REQUIRE(res.size() == 13);
  for (const auto& p : res) {
    const auto& r = p.row;
    CHECK(r.flags.end() == std::find(r.flags.begin(), r.flags.end(), "solver_failure"));
    REQUIRE(p.distribution.has_value());
    const auto c = check_distribution(*p.distribution, r.delta_u, r.avg_work);
    CHECK(c.ok());
    CHECK(r.irr_work >= -1e-12);
    CHECK(r.irr_work == r.avg_work - r.delta_u);
    CHECK(r.avg_work_per_delta == r.avg_work / r.delta);
    if (r.grid_value < -2.5) {
      CHECK(*p.ground_overlap >= 1.0 - 1e-12);
      CHECK(r.irr_work <= 1e-12);
    }
  }
}

TEST_CASE("XX ED and free-fermion rows agree") {
  SweepPlan ed;
  ed.model = Model::xx_ed;
  ed.chain.n_sites = 10;
  ed.chain.pin_strength = 0.0;
  ed.param = QuenchParam::field_h;
  ed.grid = {0.0, 3.0, 16};
  ed.delta = 1e-3;
  SweepPlan ff = ed;
  ff.model = Model::xx_ff;
  const auto a = run_sweep(ed);
  const auto b = run_sweep(ff);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].grid_value == b[k].grid_value);
    CHECK(std::abs(a[k].e0_i - b[k].e0_i) < 1e-9);
    CHECK(std::abs(a[k].e0_f - b[k].e0_f) < 1e-9);
    CHECK(std::abs(a[k].avg_work - b[k].avg_work) < 1e-9);
    CHECK(std::abs(a[k].irr_work - b[k].irr_work) < 1e-9);
    CHECK(b[k].has_flag(flag::commuting));
  }
}

TEST_CASE("sector change is flagged with a zero-weight ground outcome") {
  SweepPlan p;
  p.model = Model::xx_ed;
  p.chain.n_sites = 8;
  p.chain.pin_strength = 0.0;
  p.param = QuenchParam::field_h;
  p.grid = {0.0, 3.0, 4};
  const double hz = xx_zero_mode_fields(8, 1.0, 0.5, 3.0).front();
  p.delta = 1e-3;
  const auto r = evaluate_point(p, hz - 4e-4);
  CHECK(r.row.has_flag(flag::sector_change));
  REQUIRE(r.distribution.has_value());
  CHECK(r.distribution->outcomes.front().probability == 0.0);
  CHECK(std::abs(r.distribution->min_work() - r.row.delta_u) < 1e-10);
  CHECK(r.row.irr_work == doctest::Approx(1.2e-3).epsilon(1e-8));
  CHECK(*r.ground_overlap == 0.0);
}

TEST_CASE("derivative of the order parameter peaks at the band edge") {
  SweepPlan p;
  p.model = Model::xx_ff;
  p.chain.n_sites = 2048;
  p.chain.pin_strength = 0.0;
  p.param = QuenchParam::field_h;
  p.grid = {0.0, 3.0, 301};
  p.delta = 1e-3;
  const auto rows = run_sweep(p);
  const auto s = column_slopes(rows, Column::avg_work_per_delta);
  const auto steepest = std::max_element(s.begin(), s.end(), [](auto& a, auto& b) {
    return std::abs(a.value) < std::abs(b.value);
  });
  CHECK(std::abs(steepest->at - 2.0) <= 0.05);
  for (const auto& x : s) {
    if (x.at > 2.02) CHECK(x.value == 0.0);
  }
}

TEST_CASE("solver failure degrades to a flagged row") {
  auto p = xxz_plan(12, {0.0, 1.0, 4});
  p.solver.max_iterations = 2;
  const auto rows = run_sweep(p);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.has_flag(flag::solver_failure));
    CHECK(std::isnan(r.avg_work));
  }
}

TEST_CASE("determinism and order independence") {
  auto p = xxz_plan(8, {-3, 3, 9});
  const auto a = csv_text(run_sweep(p));
  p.workers = 3;
  const auto b = csv_text(run_sweep(p));
  CHECK(a == b);
  const auto values = grid_values(p);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(1));
  std::vector<SweepRow> shuffled(values.size());
  for (std::size_t k : order) shuffled[k] = evaluate_point(p, values[k]).row;
  CHECK(csv_text(shuffled) == a);
  const auto part = run_sweep_detailed(p, 3, 6);
  REQUIRE(part.size() == 3);
  CHECK(part[0].row == shuffled[3]);
}

TEST_CASE("csv round trip") {
  auto rows = run_sweep(lz_plan(0.3, {-1, 3, 17}));
  rows[2].flags = {"degenerate", "commuting"};
  rows[3].e0_i = std::numeric_limits<double>::quiet_NaN();
  rows[4].avg_work = 1.0 / 3.0;
  const auto path = std::filesystem::temp_directory_path() / "quenchlab_roundtrip.csv";
  write_csv(rows, path);
  const auto back = read_csv(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(back[k] == rows[k]);
  std::filesystem::remove(path);
}

TEST_CASE("empty csv") {
  std::ostringstream os;
  write_csv({}, os);
  CHECK(os.str() == std::string(kCsvHeader) + "\n");
  std::istringstream is("# comment\n" + os.str());
  CHECK(read_csv(is).empty());
}

TEST_CASE("bad header names the first mismatched column") {
  std::string text(kCsvHeader);
  text.replace(text.find("e0_f"), 4, "E0_f");
  std::istringstream is("# provenance\n" + text + "\n");
  try {
    read_csv(is);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("e0_f") != std::string::npos);
  }
}

TEST_CASE("malformed rows report their line") {
  std::istringstream is(std::string(kCsvHeader) + "\nLZ,1,lambda,0,1e-5\n");
  CHECK_THROWS_AS(read_csv(is), SchemaError);
  std::istringstream bad(std::string(kCsvHeader) +
                         "\nLZ,1,lambda,zero,1,1,1,1,1,1,1,1,1,1,\n");
  try {
    read_csv(bad);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("grid_value") != std::string::npos);
  }
}
