#include "lrd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "lrd/chi2.hpp"
#include "lrd/errors.hpp"
#include "lrd/estimation.hpp"
#include "lrd/reference.hpp"

namespace lrd::mc {

namespace {

constexpr std::pair<Estimator, std::string_view> kEstimatorNames[] = {
    {Estimator::wavelet, "wavelet"},
    {Estimator::local_whittle, "lw"},
    {Estimator::fexp, "fexp"},
};

// Compensated running sum; replications are added in index order so the
// result is independent of the schedule.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

Replication run_replication(const McConfig& c, Benchmark process, double d, std::size_t n, int rep) {
  Replication out;
  out.seed = replication_seed(c, process, d, n, rep);
  out.outcomes.resize(c.estimators.size());
  TimeSeries ts;
  try {
    ts = generate(benchmark_model(process, d), n, out.seed);
  } catch (const std::exception& e) {
    for (auto& o : out.outcomes) o.error = std::string("generate: ") + e.what();
    return out;
  }
  const double target = target_d(process, d);
  for (std::size_t k = 0; k < c.estimators.size(); ++k) {
    auto& o = out.outcomes[k];
    try {
      switch (c.estimators[k]) {
        case Estimator::wavelet: {
          EstimateOptions opt;
          opt.ell2_cap = c.ell2_cap;
          opt.level = c.level;
          const auto r = estimate(ts.values, opt);
          o.d = r.d_tilde;
          out.gof_stat = r.gof_stat;
          out.gof_dof = r.gof_dof;
          out.accepted = r.gof_stat < chi2::quantile(c.level, r.gof_dof);
          out.covered = r.ci95[0] <= target && target <= r.ci95[1];
          break;
        }
        case Estimator::local_whittle:
          o.d = local_whittle(ts.values).d;
          break;
        case Estimator::fexp:
          o.d = fexp_estimate(ts.values, c.fexp_kappa).d;
          break;
      }
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  }
  return out;
}

std::string fmt(double v, int prec = 4) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Estimator e) {
  for (const auto& [k, name] : kEstimatorNames) {
    if (k == e) return name;
  }
  return "?";
}

std::optional<Estimator> estimator_from_string(std::string_view name) {
  for (const auto& [k, n] : kEstimatorNames) {
    if (n == name) return k;
  }
  if (name == "local_whittle") return Estimator::local_whittle;
  return std::nullopt;
}

void McConfig::validate() const {
  if (replications < 1) throw DomainError("config: replications must be >= 1");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("config: level must lie in (0, 1)");
  if (processes.empty() || d_values.empty() || n_values.empty() || estimators.empty()) {
    throw DomainError("config: processes, d_values, n_values and estimators must be non-empty");
  }
  for (double d : d_values) {
    if (!(d > -0.5 && d < 0.5)) throw DomainError("config: d values must lie in (-0.5, 0.5)");
  }
  for (std::size_t n : n_values) {
    if (n < 500) throw DomainError("config: N must be at least 500");
  }
  if (ell2_cap && *ell2_cap < 3) throw DomainError("config: ell2_cap must be >= 3");
  if (!(fexp_kappa > 0.0)) throw DomainError("config: fexp_kappa must be positive");
}

McConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config: expected a JSON object");
  static const std::vector<std::string> known = {"processes", "d_values", "n_values", "replications",
                                                 "base_seed", "estimators", "level", "ell2_cap",
                                                 "fexp_kappa", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw DomainError("config: unknown key '" + key + "'");
  }
  McConfig c;
  try {
    if (j.contains("processes")) {
      c.processes.clear();
      for (const auto& p : j["processes"]) {
        const auto id = benchmark_from_string(p.get<std::string>());
        if (!id) throw DomainError("config: unknown process '" + p.get<std::string>() + "'");
        c.processes.push_back(*id);
      }
    }
    if (j.contains("d_values")) c.d_values = j["d_values"].get<std::vector<double>>();
    if (j.contains("n_values")) c.n_values = j["n_values"].get<std::vector<std::size_t>>();
    if (j.contains("replications")) c.replications = j["replications"].get<int>();
    if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("estimators")) {
      c.estimators.clear();
      for (const auto& e : j["estimators"]) {
        const auto id = estimator_from_string(e.get<std::string>());
        if (!id) throw DomainError("config: unknown estimator '" + e.get<std::string>() + "'");
        c.estimators.push_back(*id);
      }
    }
    if (j.contains("level")) c.level = j["level"].get<double>();
    if (j.contains("ell2_cap")) {
      if (j["ell2_cap"].is_null()) c.ell2_cap.reset();
      else c.ell2_cap = j["ell2_cap"].get<int>();
    }
    if (j.contains("fexp_kappa")) c.fexp_kappa = j["fexp_kappa"].get<double>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const McConfig& c) {
  nlohmann::json j;
  std::vector<std::string> procs, ests;
  for (auto p : c.processes) procs.emplace_back(lrd::to_string(p));
  for (auto e : c.estimators) ests.emplace_back(to_string(e));
  j["processes"] = procs;
  j["d_values"] = c.d_values;
  j["n_values"] = c.n_values;
  j["replications"] = c.replications;
  j["base_seed"] = c.base_seed;
  j["estimators"] = ests;
  j["level"] = c.level;
  j["ell2_cap"] = c.ell2_cap ? nlohmann::json(*c.ell2_cap) : nlohmann::json(nullptr);
  j["fexp_kappa"] = c.fexp_kappa;
  return j;
}

McConfig quick_profile(McConfig c) {
  c.replications = 25;
  c.n_values = {1000};
  return c;
}

std::uint64_t config_hash(const McConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LRD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double target_d(Benchmark process, double d) {
  if (process == Benchmark::mfarima) {
    const auto model = benchmark_model(process, d);
    if (const auto* m = std::get_if<MfarimaModel>(&model.base)) return 0.5 * (m->d_first + m->d_second);
  }
  return d;
}

std::uint64_t replication_seed(const McConfig& c, Benchmark process, double d, std::size_t n, int rep) {
  const auto d_key = static_cast<std::uint64_t>(std::llround((d + 1.0) * 1e6));
  return rng::derive_seed(c.base_seed, {static_cast<std::uint64_t>(process), d_key, n, static_cast<std::uint64_t>(rep)});
}

CellResult run_cell(const McConfig& c, Benchmark process, double d, std::size_t n, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  CellResult cell;
  cell.process = process;
  cell.d = d;
  cell.n = n;
  cell.target = target_d(process, d);
  cell.replications.resize(c.replications);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < c.replications; r = next++) cell.replications[r] = run_replication(c, process, d, n, r);
  };
  const int workers = std::max(1, std::min(threads, c.replications));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t k = 0; k < c.estimators.size(); ++k) {
    EstimatorSummary s;
    s.estimator = c.estimators[k];
    Kahan sq, sum, sum_sq;
    for (const auto& rep : cell.replications) {
      const auto& o = rep.outcomes[k];
      if (!o.d) {
        ++s.failures;
        continue;
      }
      ++s.successes;
      const double err = *o.d - cell.target;
      sq.add(err * err);
      sum.add(*o.d);
      sum_sq.add(*o.d * *o.d);
    }
    s.valid = 2 * s.failures <= c.replications;
    if (s.successes > 0) {
      s.rmse = std::sqrt(sq.sum / s.successes);
      s.mean = sum.sum / s.successes;
      s.sd = s.successes > 1 ? std::sqrt(std::max(0.0, (sum_sq.sum - s.successes * s.mean * s.mean) / (s.successes - 1))) : 0.0;
    } else {
      s.rmse = s.mean = s.sd = NAN;
    }
    if (!s.valid) s.rmse = NAN;
    cell.estimators.push_back(s);
  }

  int tested = 0, accepted = 0, covered = 0;
  for (const auto& rep : cell.replications) {
    if (!rep.accepted) continue;
    ++tested;
    accepted += *rep.accepted;
    covered += *rep.covered;
  }
  if (tested > 0) {
    cell.p_tilde = static_cast<double>(accepted) / tested;
    cell.ci_coverage = static_cast<double>(covered) / tested;
  }
  cell.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

McSummary run(const McConfig& c, const Progress& progress) {
  c.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const int threads = resolve_threads(c.threads);
  McSummary s;
  s.config = c;
  std::vector<std::tuple<Benchmark, double, std::size_t>> plan;
  for (auto p : c.processes) {
    for (std::size_t n : c.n_values) {
      if (p == Benchmark::mfarima) {
        // The composite process has fixed memory parameters; one cell per N.
        plan.emplace_back(p, target_d(p, 0.0), n);
        continue;
      }
      for (double d : c.d_values) plan.emplace_back(p, d, n);
    }
  }
  for (const auto& [p, d, n] : plan) {
    s.cells.push_back(run_cell(c, p, d, n, threads));
    if (progress) progress(s.cells.back(), s.cells.size(), plan.size());
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

std::string emit_csv(const McSummary& s) {
  std::ostringstream os;
  os << "process,d,n,estimator,replications,failures,rmse,mean,sd,p_tilde,ci_coverage,valid,wall_seconds\n";
  for (const auto& cell : s.cells) {
    for (const auto& e : cell.estimators) {
      const bool w = e.estimator == Estimator::wavelet;
      os << lrd::to_string(cell.process) << ',' << cell.d << ',' << cell.n << ',' << to_string(e.estimator) << ','
         << e.successes + e.failures << ',' << e.failures << ',' << fmt(e.rmse, 6) << ',' << fmt(e.mean, 6) << ','
         << fmt(e.sd, 6) << ',' << (w && cell.p_tilde ? fmt(*cell.p_tilde, 4) : "") << ','
         << (w && cell.ci_coverage ? fmt(*cell.ci_coverage, 4) : "") << ',' << (e.valid ? 1 : 0) << ','
         << fmt(cell.wall_seconds, 2) << '\n';
    }
  }
  return os.str();
}

std::string emit_text(const McSummary& s) {
  // One block per (process, N): rows are estimators (sqrt MSE) plus the test
  // acceptance frequency, columns are d values.
  std::ostringstream os;
  std::vector<std::pair<Benchmark, std::size_t>> blocks;
  for (const auto& cell : s.cells) {
    const std::pair key{cell.process, cell.n};
    if (std::find(blocks.begin(), blocks.end(), key) == blocks.end()) blocks.push_back(key);
  }
  for (const auto& [proc, n] : blocks) {
    std::vector<const CellResult*> row;
    for (const auto& cell : s.cells) {
      if (cell.process == proc && cell.n == n) row.push_back(&cell);
    }
    os << lrd::to_string(proc) << "  N=" << n << '\n';
    os << std::left << std::setw(14) << "  d";
    for (const auto* c : row) os << std::right << std::setw(9) << fmt(c->d, 2);
    os << '\n';
    for (std::size_t k = 0; k < s.config.estimators.size(); ++k) {
      os << std::left << std::setw(14) << ("  rmse " + std::string(to_string(s.config.estimators[k])));
      for (const auto* c : row) os << std::right << std::setw(9) << fmt(c->estimators[k].rmse);
      os << '\n';
    }
    if (row.front()->p_tilde) {
      os << std::left << std::setw(14) << "  p_tilde";
      for (const auto* c : row) os << std::right << std::setw(9) << (c->p_tilde ? fmt(*c->p_tilde, 2) : "-");
      os << '\n' << std::left << std::setw(14) << "  ci_cover";
      for (const auto* c : row) os << std::right << std::setw(9) << (c->ci_coverage ? fmt(*c->ci_coverage, 2) : "-");
      os << '\n';
    }
    if (proc == Benchmark::mfarima) {
      for (std::size_t k = 0; k < s.config.estimators.size(); ++k) {
        os << std::left << std::setw(14) << ("  mean " + std::string(to_string(s.config.estimators[k])));
        for (const auto* c : row) os << std::right << std::setw(9) << fmt(c->estimators[k].mean);
        os << '\n' << std::left << std::setw(14) << ("  sd " + std::string(to_string(s.config.estimators[k])));
        for (const auto* c : row) os << std::right << std::setw(9) << fmt(c->estimators[k].sd);
        os << '\n';
      }
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json emit_json(const McSummary& s) {
  nlohmann::json j;
  j["config"] = to_json(s.config);
  j["config_hash"] = config_hash(s.config);
  j["wall_seconds"] = s.wall_seconds;
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : s.cells) {
    nlohmann::json cj;
    cj["process"] = lrd::to_string(cell.process);
    cj["d"] = cell.d;
    cj["target"] = cell.target;
    cj["n"] = cell.n;
    cj["p_tilde"] = cell.p_tilde ? nlohmann::json(*cell.p_tilde) : nlohmann::json(nullptr);
    cj["ci_coverage"] = cell.ci_coverage ? nlohmann::json(*cell.ci_coverage) : nlohmann::json(nullptr);
    cj["wall_seconds"] = cell.wall_seconds;
    for (const auto& e : cell.estimators) {
      cj["estimators"][std::string(to_string(e.estimator))] = {{"rmse", num(e.rmse)}, {"mean", num(e.mean)},
                                                                {"sd", num(e.sd)}, {"failures", e.failures},
                                                                {"valid", e.valid}};
    }
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : cell.replications) {
      nlohmann::json rj;
      rj["seed"] = r.seed;
      for (std::size_t k = 0; k < r.outcomes.size(); ++k) {
        const auto name = std::string(to_string(s.config.estimators[k]));
        rj[name] = r.outcomes[k].d ? nlohmann::json(*r.outcomes[k].d) : nlohmann::json(nullptr);
        if (!r.outcomes[k].error.empty()) rj["errors"][name] = r.outcomes[k].error;
      }
      if (r.gof_stat) {
        rj["gof_stat"] = *r.gof_stat;
        rj["gof_dof"] = *r.gof_dof;
        rj["accepted"] = *r.accepted;
        rj["covered"] = *r.covered;
      }
      reps.push_back(rj);
    }
    cj["replications"] = reps;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  return j;
}

std::filesystem::path write_run(const McSummary& s, const std::filesystem::path& root) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream name;
  name << std::put_time(&tm, "%Y%m%dT%H%M%SZ") << '_' << std::hex << std::setw(16) << std::setfill('0')
       << config_hash(s.config);
  const auto dir = root / name.str();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto put = [&](const char* file, const std::string& text) {
    std::ofstream out(dir / file);
    out << text;
    if (!out) throw IoError("write failed: " + (dir / file).string());
  };
  put("summary.csv", emit_csv(s));
  put("summary.json", emit_json(s).dump(2) + "\n");
  put("table.txt", emit_text(s));
  return dir;
}

}  // namespace lrd::mc
