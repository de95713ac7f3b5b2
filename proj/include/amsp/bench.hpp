#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "amsp/ams.hpp"
#include "amsp/baselines.hpp"
#include "amsp/contracts.hpp"
#include "amsp/models.hpp"

namespace amsp {

enum class Method { ams, mc, mca, mlmc };

const char* method_name(Method m);
Method parse_method(const std::string& name);

// R = seeds x runs_per_seed replications; every (seed, run) pair keys a
// disjoint stream family.
struct ReplicationPlan {
  std::vector<std::uint64_t> seeds;
  std::uint32_t runs_per_seed = 10;
};

ReplicationPlan make_replication(std::uint64_t base_seed, int n_seeds = 5,
                                 int runs_per_seed = 10);

struct ExperimentSpec {
  std::string name;
  ModelSpec model;
  ContractSpec contract;
  Method method = Method::ams;
  AmsConfig ams;                // method == ams (seed/run set per repetition)
  std::uint64_t n_paths = 0;    // method == mc / mca
  MlmcConfig mlmc;              // method == mlmc (seed/run set per repetition)
  ReplicationPlan replication;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::uint32_t run = 0;
  bool ok = false;
  std::string error;
  double p_hat = 0.0;
  double price = 0.0;
  std::uint64_t work = 0;
  int iterations = 0;  // AMS splitting iterations; 0 for baselines
  std::int64_t wall_ms = 0;
};

struct ReportRow {
  std::string experiment;
  Method method = Method::ams;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double variance = std::numeric_limits<double>::quiet_NaN();
  double rel_accuracy = std::numeric_limits<double>::quiet_NaN();
  double work = 0.0;        // mean work per successful run
  double iterations = 0.0;  // mean AMS iteration count; 0 for baselines
  std::uint32_t runs = 0;   // successful runs aggregated
  std::int64_t wall_ms = 0;  // total wall time; informational only

  // Bookkeeping for audits; not serialized.
  std::uint64_t work_total = 0;
};

// Sample standard deviation (divisor R-1) over sample mean.  Needs at
// least two estimates; a non-positive mean yields NaN with a warning on
// stderr.
double relative_accuracy(std::span<const double> estimates);

// Executes one (seed, run) repetition of the experiment's method,
// capturing failures in the record instead of throwing.
RunRecord run_single(const ExperimentSpec& spec, std::uint64_t seed,
                     std::uint32_t run);

// Runs the replication matrix for one experiment and aggregates the
// successful runs into a report row.  Individual run failures are
// captured in `records` (when given) and excluded from the aggregate;
// they do not abort the experiment.  Duplicate seeds are rejected.
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      std::vector<RunRecord>* records =
                                          nullptr);

std::vector<ReportRow> run_matrix(std::span<const ExperimentSpec> specs,
                                  std::vector<RunRecord>* records = nullptr);

// One experiment per discard fraction (AMS only).
std::vector<ReportRow> sweep_k(const ExperimentSpec& base,
                               std::span<const double> k_values,
                               std::vector<RunRecord>* records = nullptr);

// One experiment per population size (AMS only).  When `prefactors` is
// given it receives work / (N log N (-log p_hat)) per row.
std::vector<ReportRow> sweep_n(const ExperimentSpec& base,
                               std::span<const int> n_values,
                               std::vector<double>* prefactors = nullptr,
                               std::vector<RunRecord>* records = nullptr);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);

// CSV: fixed header experiment,method,mean,variance,rel_accuracy,work,
// iterations,runs,wall_ms with statistical fields in full-precision
// scientific notation.  JSON: array of objects with identical keys.
std::string render_csv(std::span<const ReportRow> rows);
std::string render_json(std::span<const ReportRow> rows);

// Writes the rendered report to `path` ("-" for stdout).
void emit_report(std::span<const ReportRow> rows, ReportFormat format,
                 const std::string& path);

}  // namespace amsp
