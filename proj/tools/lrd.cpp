// lrd: simulate, estimate, montecarlo and gamma subcommands.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lrd/errors.hpp"
#include "lrd/estimation.hpp"
#include "lrd/harness.hpp"
#include "lrd/reference.hpp"
#include "lrd/report.hpp"
#include "lrd/series_io.hpp"
#include "lrd/synthesis.hpp"
#include "lrd/wavelet.hpp"

namespace {

using namespace lrd;

// Accepts benchmark ids in any case plus a few spelled-out aliases.
Benchmark parse_process(std::string name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "FGN") upper = "X1";
  if (upper == "FARIMA") upper = "X2";
  if (upper == "TREND_FARIMA") upper = "TREND";
  const auto id = benchmark_from_string(upper);
  if (!id) throw DomainError("unknown process '" + name + "'");
  return *id;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

struct SimulateArgs {
  std::string process = "X2";
  double d = 0.0;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  bool trend = false;
  bool seasonal = false;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  ProcessModel model = benchmark_model(parse_process(a.process), a.d);
  model.trend = model.trend || a.trend;
  model.seasonal = model.seasonal || a.seasonal;
  if (a.n < 1) throw DomainError("--n must be positive");
  const auto ts = generate(model, a.n, a.seed);
  if (a.out.empty() || a.out == "-") {
    std::ostringstream os;
    os << "value\n" << std::setprecision(17);
    for (double v : ts.values) os << v << '\n';
    std::cout << os.str();
  } else {
    io::write_series(a.out, ts.values);
  }
  return 0;
}

struct EstimateArgs {
  std::string input;
  std::string estimator = "wavelet";
  std::size_t m = 0;
  double kappa = 2.0;
  int ell1 = 0;
  int ell2_cap = 0;
  double level = 0.95;
  bool gamma = false;
  std::string variogram;
  std::string out;
};

int cmd_estimate(const EstimateArgs& a) {
  const auto x = io::read_series(a.input);
  if (x.size() < 500) throw DomainError("estimate needs at least 500 observations, got " + std::to_string(x.size()));
  nlohmann::json j;
  if (a.estimator == "wavelet") {
    EstimateOptions opt;
    opt.ell1 = a.ell1;
    if (a.ell2_cap > 0) opt.ell2_cap = a.ell2_cap;
    opt.level = a.level;
    const auto rep = estimate(x, opt);
    j = to_json(rep, a.gamma);
    if (!a.variogram.empty()) {
      std::ostringstream os;
      os << "scale,log_scale,log_t\n" << std::setprecision(17);
      for (std::size_t i = 0; i < rep.scales.size(); ++i) {
        os << rep.scales[i] << ',' << std::log(rep.scales[i]) << ',' << rep.log_t_values[i] << '\n';
      }
      write_text(a.variogram, os.str());
    }
  } else if (a.estimator == "lw") {
    j = to_json(local_whittle(x, a.m));
  } else if (a.estimator == "fexp") {
    j = to_json(fexp_estimate(x, a.kappa));
  } else {
    throw DomainError("unknown estimator '" + a.estimator + "'");
  }
  write_text(a.out, j.dump(2) + "\n");
  return 0;
}

struct MontecarloArgs {
  std::string config;
  bool quick = false;
  std::vector<std::string> only;
  int threads = 0;
  std::string out_dir = "runs";
};

int cmd_montecarlo(const MontecarloArgs& a) {
  mc::McConfig c;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot read " + a.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw DomainError(std::string("config: ") + e.what());
    }
    c = mc::config_from_json(j);
  }
  if (a.quick) c = mc::quick_profile(c);
  if (!a.only.empty()) {
    c.processes.clear();
    for (const auto& p : a.only) c.processes.push_back(parse_process(p));
  }
  if (a.threads > 0) c.threads = a.threads;
  c.validate();
  const auto summary = mc::run(c, [](const mc::CellResult& cell, std::size_t done, std::size_t total) {
    std::cerr << '[' << done << '/' << total << "] " << to_string(cell.process) << " d=" << cell.d << " N=" << cell.n
              << "  " << std::fixed << std::setprecision(1) << cell.wall_seconds << "s\n"
              << std::defaultfloat;
  });
  const auto dir = mc::write_run(summary, a.out_dir);
  std::cout << dir.string() << '\n';
  return 0;
}

struct GammaArgs {
  std::vector<double> d_values;
  std::vector<int> ells = {10, 20, 50, 100, 200, 500};
  std::string out;
};

int cmd_gamma(GammaArgs a) {
  if (a.d_values.empty()) {
    for (int k = 0; k <= 9; ++k) a.d_values.push_back(0.05 * k);
  }
  for (double d : a.d_values) {
    if (!(d > -0.5 && d < 0.5)) throw DomainError("gamma: d must lie in (-0.5, 0.5)");
  }
  for (int ell : a.ells) {
    if (ell < 2) throw DomainError("gamma: ell must be at least 2");
  }
  const int ell_max = *std::max_element(a.ells.begin(), a.ells.end());
  std::ostringstream os;
  os << "d,ell,sigma2\n" << std::setprecision(12);
  for (double d : a.d_values) {
    // Gamma at ratios 1..ell is the top-left block of the largest one.
    const auto big = gamma_matrix(d, ell_max);
    for (int ell : a.ells) {
      CovarianceModel sub;
      sub.d = d;
      sub.ratios.assign(big.ratios.begin(), big.ratios.begin() + ell);
      sub.gamma = big.gamma.topLeftCorner(ell, ell);
      sub.k_2d = big.k_2d;
      os << d << ',' << ell << ',' << sigma2_d(sub) << '\n';
    }
  }
  write_text(a.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive wavelet estimation of the long-memory parameter"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Generate a benchmark series");
  s->add_option("--process", sim.process, "X1..X8, GARMA, TREND, TREND_SEASONAL, MFARIMA (fgn, farima aliases)");
  s->add_option("--d", sim.d, "Memory parameter");
  s->add_option("--n", sim.n, "Length")->required();
  s->add_option("--seed", sim.seed, "Seed");
  s->add_flag("--trend", sim.trend, "Add a linear trend");
  s->add_flag("--seasonal", sim.seasonal, "Add a seasonal component");
  s->add_option("--out", sim.out, "Output file (.csv, or .bin/.f64 for binary); stdout when omitted");

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Estimate d from a series file");
  e->add_option("--input", est.input, "Series file")->required();
  e->add_option("--estimator", est.estimator, "wavelet | lw | fexp")->check(CLI::IsMember({"wavelet", "lw", "fexp"}));
  e->add_option("--m", est.m, "Local Whittle bandwidth (default N/30)");
  e->add_option("--kappa", est.kappa, "FEXP penalty constant");
  e->add_option("--ell1", est.ell1, "First-stage number of scales (default 2 log N)");
  e->add_option("--ell2-cap", est.ell2_cap, "Cap on the second-stage number of scales");
  e->add_option("--level", est.level, "Confidence and test level");
  e->add_flag("--gamma", est.gamma, "Include the covariance matrix in the report");
  e->add_option("--emit-variogram", est.variogram, "Write (scale, log a, log T) points to this CSV");
  e->add_option("--out", est.out, "Report file; stdout when omitted");

  MontecarloArgs mca;
  auto* m = app.add_subcommand("montecarlo", "Run a Monte-Carlo grid");
  m->add_option("--config", mca.config, "JSON config");
  m->add_flag("--quick", mca.quick, "25 replications, N = 1000 only");
  m->add_option("--only", mca.only, "Restrict to these processes");
  m->add_option("--threads", mca.threads, "Worker count (default LRD_THREADS or all cores)");
  m->add_option("--out-dir", mca.out_dir, "Parent directory of the run directory");

  GammaArgs ga;
  auto* g = app.add_subcommand("gamma", "Tabulate sigma^2_d(ell)");
  g->add_option("--d", ga.d_values, "d values (default 0, 0.05, ..., 0.45)")->delimiter(',');
  g->add_option("--ell", ga.ells, "ell values")->delimiter(',');
  g->add_option("--out", ga.out, "CSV file; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*e) return cmd_estimate(est);
    if (*m) return cmd_montecarlo(mca);
    if (*g) return cmd_gamma(ga);
  } catch (const DomainError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const NumericError& ex) {
    std::cerr << "numeric error: " << ex.what() << '\n';
    return 3;
  } catch (const IoError& ex) {
    std::cerr << "i/o error: " << ex.what() << '\n';
    return 4;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  }
  return 0;
}
