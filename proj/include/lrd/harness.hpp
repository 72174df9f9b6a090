#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrd/synthesis.hpp"

namespace lrd::mc {

enum class Estimator { wavelet, local_whittle, fexp };

std::string_view to_string(Estimator e);
std::optional<Estimator> estimator_from_string(std::string_view name);

struct McConfig {
  std::vector<Benchmark> processes = {Benchmark::x1, Benchmark::x2};
  std::vector<double> d_values = {0.0, 0.1, 0.2, 0.3, 0.4};
  std::vector<std::size_t> n_values = {1000, 10000};
  int replications = 100;
  std::uint64_t base_seed = 20090601;
  std::vector<Estimator> estimators = {Estimator::wavelet, Estimator::local_whittle, Estimator::fexp};
  double level = 0.95;
  std::optional<int> ell2_cap = 50;
  double fexp_kappa = 2.0;
  int threads = 0;  // 0: LRD_THREADS, else hardware concurrency

  void validate() const;
};

McConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const McConfig& c);
// Desk-scale profile for smoke runs: 25 replications, N = 1000 only.
McConfig quick_profile(McConfig c);
// FNV-1a 64 over the canonical JSON dump; thread count is excluded.
std::uint64_t config_hash(const McConfig& c);
int resolve_threads(int requested);

// True d the estimates are scored against. MFARIMA has none; its cells are
// scored against the average of its two halves.
double target_d(Benchmark process, double d);

struct EstimatorOutcome {
  std::optional<double> d;
  std::string error;
};

struct Replication {
  std::uint64_t seed = 0;
  std::vector<EstimatorOutcome> outcomes;  // parallel to McConfig::estimators
  // Wavelet-only diagnostics.
  std::optional<double> gof_stat;
  std::optional<int> gof_dof;
  std::optional<bool> accepted;
  std::optional<bool> covered;
};

struct EstimatorSummary {
  Estimator estimator = Estimator::wavelet;
  int successes = 0;
  int failures = 0;
  double rmse = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  bool valid = true;  // false when more than half the replications failed
};

struct CellResult {
  Benchmark process = Benchmark::x2;
  double d = 0.0;
  double target = 0.0;
  std::size_t n = 0;
  std::vector<EstimatorSummary> estimators;
  std::optional<double> p_tilde;      // acceptance frequency of the GoF test
  std::optional<double> ci_coverage;  // frequency the CI contains target
  double wall_seconds = 0.0;
  std::vector<Replication> replications;
};

struct McSummary {
  McConfig config;
  std::vector<CellResult> cells;
  double wall_seconds = 0.0;
};

std::uint64_t replication_seed(const McConfig& c, Benchmark process, double d, std::size_t n, int rep);

// Runs one (process, d, N) cell with `threads` workers. The result does not
// depend on the worker count.
CellResult run_cell(const McConfig& c, Benchmark process, double d, std::size_t n, int threads = 1);

using Progress = std::function<void(const CellResult&, std::size_t done, std::size_t total)>;
McSummary run(const McConfig& c, const Progress& progress = {});

std::string emit_csv(const McSummary& s);
std::string emit_text(const McSummary& s);
nlohmann::json emit_json(const McSummary& s);

// Writes summary.csv, summary.json and table.txt into
// <root>/<UTC timestamp>_<config hash>/ and returns that directory.
std::filesystem::path write_run(const McSummary& s, const std::filesystem::path& root);

}  // namespace lrd::mc
