// quenchlab: sudden-quench work statistics sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "quenchlab/errors.hpp"
#include "quenchlab/sweep_engine.hpp"
#include "quenchlab/verification.hpp"

namespace ql = quenchlab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string grid;
  double dlam = 0.0;
  std::optional<double> at;
  std::string out;
  unsigned workers = 1;
  std::uint64_t seed = ql::kDefaultSeed;
  double threshold = ql::kDefaultJumpThreshold;
  std::string config;
};

struct LzArgs {
  double delta = 2.0;
  double a = 1.0;
  double eps = 0.0;
};

struct ChainArgs {
  std::string model = "xxz";
  int n = 12;
  double jx = 1.0;
  double jy = 1.0;
  double lambda = 0.0;
  double h = 0.0;
  double pin = -1e-3;
  int pin_site = 0;
  std::string boundary = "open";
  std::string param;
  double tol = 1e-10;
  int max_iter = 500;
};

struct FfArgs {
  int n = 512;
  double j = 1.0;
};

void add_common(CLI::App* sub, Common& c, const std::string& grid_default,
                const std::string& step_name, double step_default) {
  c.grid = grid_default;
  c.dlam = step_default;
  sub->add_option("--grid", c.grid,
                  "sweep grid start:stop:steps over the initial parameter value, steps >= 2")
      ->capture_default_str();
  sub->add_option("--" + step_name, c.dlam,
                  "quench size, final minus initial parameter value (parameter units)")
      ->capture_default_str();
  sub->add_option("--at", c.at, "evaluate a single initial parameter value instead of a grid");
  sub->add_option("--out", c.out, "output CSV path (default: standard output)");
  sub->add_option("--workers", c.workers, "worker threads for grid points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed,
                  "solver seed; QUENCHLAB_SEED overrides the default when this flag is absent")
      ->capture_default_str();
  sub->add_option("--threshold", c.threshold,
                  "jump report threshold, multiple of the median adjacent difference")
      ->capture_default_str();
  sub->add_option("--config", c.config,
                  "JSON file of flag values (keys are long flag names); explicit flags win");
}

// Config values fill only options the command line left unset.
std::vector<std::string> merge_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ql::ValidationError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ql::ValidationError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ql::ValidationError("config file must hold a JSON object");
  std::vector<std::string> used;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") throw ql::ValidationError("config files cannot nest");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw ql::ValidationError("unknown config key '" + key + "' for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number() || value.is_boolean()) {
      text = value.dump();
    } else {
      throw ql::ValidationError("config key '" + key + "' must be a string or number");
    }
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ql::ValidationError("config key '" + key + "': " + e.what());
    }
    used.push_back(key);
  }
  return used;
}

std::string provenance(const CLI::App* sub, const std::vector<std::string>& from_config) {
  std::ostringstream os;
  os << "# quenchlab " << kVersion << ' ' << sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    // Worker count does not change results, so it stays out of the record.
    if (name.empty() || name == "help" || name == "config" || name == "out" ||
        name == "workers") {
      continue;
    }
    const auto results = opt->results();
    if (!results.empty()) {
      os << " --" << name << '=' << results.back();
    } else if (!opt->get_default_str().empty()) {
      os << " --" << name << '=' << opt->get_default_str();
    }
  }
  if (!from_config.empty()) {
    os << " (from config:";
    for (const auto& k : from_config) os << ' ' << k;
    os << ')';
  }
  return os.str();
}

ql::SweepPlan lz_plan(const Common& c, const LzArgs& a) {
  ql::SweepPlan plan;
  plan.model = ql::Model::lz;
  plan.lz = {a.delta, a.a, a.eps};
  plan.grid = ql::parse_grid(c.grid);
  plan.delta = c.dlam;
  return plan;
}

ql::SweepPlan chain_plan(const Common& c, const ChainArgs& a) {
  ql::SweepPlan plan;
  if (a.model == "xxz") {
    plan.model = ql::Model::xxz_ed;
  } else if (a.model == "xx") {
    plan.model = ql::Model::xx_ed;
    if (a.lambda != 0.0) throw ql::ValidationError("the xx model has lambda_z = 0");
  } else {
    throw ql::ValidationError("--model must be xxz or xx");
  }
  plan.chain.n_sites = a.n;
  plan.chain.jx = a.jx;
  plan.chain.jy = a.jy;
  plan.chain.lambda_z = a.lambda;
  plan.chain.field_h = a.h;
  plan.chain.pin_strength = a.pin;
  plan.chain.pin_site = a.pin_site;
  if (a.boundary == "open") {
    plan.chain.boundary = ql::Boundary::open;
  } else if (a.boundary == "periodic") {
    plan.chain.boundary = ql::Boundary::periodic;
  } else {
    throw ql::ValidationError("--boundary must be open or periodic");
  }
  std::string param = a.param;
  if (param.empty()) param = plan.model == ql::Model::xxz_ed ? "lambda_z" : "h";
  if (param == "lambda_z") {
    plan.param = ql::QuenchParam::lambda_z;
  } else if (param == "h") {
    plan.param = ql::QuenchParam::field_h;
  } else {
    throw ql::ValidationError("--param must be lambda_z or h");
  }
  plan.grid = ql::parse_grid(c.grid);
  plan.delta = c.dlam;
  plan.solver.tol = a.tol;
  plan.solver.max_iterations = a.max_iter;
  return plan;
}

ql::SweepPlan ff_plan(const Common& c, const FfArgs& a) {
  ql::SweepPlan plan;
  plan.model = ql::Model::xx_ff;
  plan.chain.n_sites = a.n;
  plan.chain.jx = plan.chain.jy = a.j;
  plan.chain.lambda_z = 0.0;
  plan.chain.pin_strength = 0.0;
  plan.param = ql::QuenchParam::field_h;
  plan.grid = ql::parse_grid(c.grid);
  plan.delta = c.dlam;
  return plan;
}

void report_jumps(std::ostream& os, const std::vector<ql::SweepRow>& rows, double factor) {
  if (rows.size() < 4) return;
  for (ql::Column col : {ql::Column::avg_work_per_delta, ql::Column::irr_per_delta2}) {
    const auto jumps = ql::detect_jumps(rows, col, factor);
    os << "jumps in " << ql::to_string(col) << ": " << jumps.size() << '\n';
    for (const auto& j : jumps) {
      os << "  [" << ql::format_double(j.left) << ", " << ql::format_double(j.right)
         << "] size " << ql::format_double(j.size) << '\n';
    }
  }
}

int run_plan(ql::SweepPlan plan, const Common& c, const std::string& header_line) {
  plan.workers = c.workers;
  plan.solver.seed = c.seed;
  if (c.at) {
    plan.grid = {*c.at, *c.at + 1.0, 2};
  }
  plan.validate();
  if (!std::isfinite(c.threshold) || c.threshold <= 0.0) {
    throw ql::ValidationError("--threshold must be positive");
  }

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ql::ValidationError("cannot open " + c.out + " for writing");
  }
  std::ostream& out = c.out.empty() ? std::cout : file;
  std::ostream& report = c.out.empty() ? std::cerr : std::cout;
  out << header_line << '\n';
  ql::write_csv_header(out);

  std::vector<ql::SweepRow> rows;
  try {
    if (c.at) {
      rows.push_back(ql::evaluate_point(plan, *c.at).row);
      ql::write_csv_row(out, rows.back());
    } else {
      const std::size_t total = static_cast<std::size_t>(plan.grid.steps);
      const std::size_t chunk = std::max<std::size_t>(8, 2 * plan.workers);
      for (std::size_t begin = 0; begin < total; begin += chunk) {
        for (auto& p : ql::run_sweep_detailed(plan, begin, std::min(total, begin + chunk))) {
          ql::write_csv_row(out, p.row);
          rows.push_back(std::move(p.row));
        }
        out.flush();
      }
    }
    out.flush();
    if (!out) throw ql::Error("write failed");
  } catch (const std::exception& e) {
    out << "# INCOMPLETE: " << e.what() << '\n';
    out.flush();
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (!c.at) report_jumps(report, rows, c.threshold);
  return 0;
}

int run_verify(const std::string& level) {
  const auto lv = level == "full" ? ql::VerifyLevel::full : ql::VerifyLevel::quick;
  int failed = 0;
  int total = 0;
  for (const auto& r : ql::run_checks(lv)) {
    std::cout << ql::format_check(r) << '\n' << std::flush;
    ++total;
    if (!r.passed) ++failed;
  }
  std::cout << (total - failed) << " of " << total << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work statistics of weak sudden quenches across quantum phase transitions"};
  // "-h" would clash with the field flag "--h".
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());

  Common lz_c, chain_c, ff_c;
  lz_c.workers = chain_c.workers = ff_c.workers = hw;
  LzArgs lz_a;
  ChainArgs chain_a;
  FfArgs ff_a;
  std::string level = "quick";

  auto* lz = app.add_subcommand("lz", "Landau-Zener two-level model, closed forms");
  lz->add_option("--delta", lz_a.delta, "level bias Delta (energy units)")->capture_default_str();
  lz->add_option("--a", lz_a.a, "coupling of lambda to sz, a != 0 (energy per unit lambda)")
      ->capture_default_str();
  lz->add_option("--eps", lz_a.eps, "tunnelling amplitude eps >= 0 (energy units)")
      ->capture_default_str();
  add_common(lz, lz_c, "0.5:1.5:101", "dlam", 1e-5);

  auto* chain = app.add_subcommand("chain", "spin-1/2 XXZ or XX chain, exact diagonalization");
  chain->add_option("--model", chain_a.model, "xxz (quench lambda_z) or xx (quench h)")
      ->capture_default_str()
      ->check(CLI::IsMember({"xxz", "xx"}));
  chain->add_option("--n", chain_a.n, "number of sites")->capture_default_str();
  chain->add_option("--jx", chain_a.jx, "XX coupling (energy units)")->capture_default_str();
  chain->add_option("--jy", chain_a.jy, "YY coupling (energy units)")->capture_default_str();
  chain->add_option("--lambda", chain_a.lambda,
                    "Z coupling lambda_z; each bond carries lambda_z/2 sz sz (energy units)")
      ->capture_default_str();
  chain->add_option("--h", chain_a.h, "uniform field on sum sz (energy units)")
      ->capture_default_str();
  chain->add_option("--pin", chain_a.pin,
                    "pinning field on one site's sz, negative favours up (energy units)")
      ->capture_default_str();
  chain->add_option("--pin-site", chain_a.pin_site, "site carrying the pinning field")
      ->capture_default_str();
  chain->add_option("--boundary", chain_a.boundary, "open or periodic")
      ->capture_default_str()
      ->check(CLI::IsMember({"open", "periodic"}));
  chain->add_option("--param", chain_a.param,
                    "swept parameter lambda_z or h (default: lambda_z for xxz, h for xx)");
  chain->add_option("--tol", chain_a.tol, "Lanczos residual tolerance (relative)")
      ->capture_default_str();
  chain->add_option("--max-iter", chain_a.max_iter, "Lanczos iteration cap")
      ->capture_default_str();
  add_common(chain, chain_c, "-3:3:121", "dlam", 1e-5);

  auto* ff = app.add_subcommand("xx-ff", "open XX chain via free fermions, field quench");
  ff->add_option("--n", ff_a.n, "number of sites")->capture_default_str();
  ff->add_option("--j", ff_a.j, "XX coupling J (energy units)")->capture_default_str();
  add_common(ff, ff_c, "0:3:301", "dh", 1e-3);

  auto* verify = app.add_subcommand("verify", "run the built-in check suites");
  verify->add_option("--level", level, "quick (about 10 s) or full (several minutes)")
      ->capture_default_str()
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (verify->parsed()) return run_verify(level);

  CLI::App* sub = lz->parsed() ? lz : chain->parsed() ? chain : ff;
  Common& c = lz->parsed() ? lz_c : chain->parsed() ? chain_c : ff_c;

  try {
    const bool seed_given = sub->get_option("--seed")->count() > 0;
    std::vector<std::string> from_config;
    if (!c.config.empty()) from_config = merge_config(sub, c.config);
    if (!seed_given) {
      if (const char* env = std::getenv("QUENCHLAB_SEED")) {
        try {
          std::size_t used = 0;
          c.seed = std::stoull(env, &used, 0);
          if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
          throw ql::ValidationError(std::string("QUENCHLAB_SEED is not an integer: ") + env);
        }
        sub->get_option("--seed")->clear();
        sub->get_option("--seed")->add_result(std::to_string(c.seed));
      }
    }
    const std::string header_line = provenance(sub, from_config);
    ql::SweepPlan plan = lz->parsed()      ? lz_plan(c, lz_a)
                         : chain->parsed() ? chain_plan(c, chain_a)
                                           : ff_plan(c, ff_a);
    return run_plan(plan, c, header_line);
  } catch (const ql::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
