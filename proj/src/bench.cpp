#include "amsp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

// Vendored single header when present, system package otherwise.
#if __has_include(<json.hpp>)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

#include "amsp/math.hpp"

namespace amsp {

namespace {

std::string format_scientific(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", x);
  return buf;
}

void validate_name(const std::string& name) {
  if (name.empty() ||
      name.find_first_of(",\n\r\"") != std::string::npos) {
    throw std::invalid_argument(
        "experiment name must be non-empty and free of commas/quotes");
  }
}

void validate_replication(const ReplicationPlan& plan) {
  if (plan.seeds.empty() || plan.runs_per_seed < 1) {
    throw std::invalid_argument("replication plan needs seeds and runs");
  }
  if (plan.seeds.size() * plan.runs_per_seed < 2) {
    throw std::invalid_argument(
        "replication plan must total at least 2 runs for variance");
  }
  std::vector<std::uint64_t> sorted(plan.seeds);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(
        "replication plan contains duplicate seeds (stream collision)");
  }
}

RunRecord execute_run(const ExperimentSpec& spec, std::uint64_t seed,
                      std::uint32_t run) {
  RunRecord rec;
  rec.seed = seed;
  rec.run = run;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (spec.method) {
      case Method::ams: {
        AmsConfig cfg = spec.ams;
        cfg.seed = seed;
        cfg.run = run;
        const AmsResult r = run_ams(cfg, spec.model, spec.contract);
        rec.p_hat = r.p_hat;
        rec.price = r.price;
        rec.work = r.work;
        rec.iterations = r.q_iterations;
        break;
      }
      case Method::mc: {
        const McConfig cfg{spec.n_paths, seed, run};
        const EstimateResult r = run_crude_mc(cfg, spec.model, spec.contract);
        rec.p_hat = r.p_hat;
        rec.price = r.price;
        rec.work = r.work;
        break;
      }
      case Method::mca: {
        const McConfig cfg{spec.n_paths, seed, run};
        const EstimateResult r =
            run_antithetic_mc(cfg, spec.model, spec.contract);
        rec.p_hat = r.p_hat;
        rec.price = r.price;
        rec.work = r.work;
        break;
      }
      case Method::mlmc: {
        MlmcConfig cfg = spec.mlmc;
        cfg.seed = seed;
        cfg.run = run;
        const MlmcResult r = run_mlmc(cfg, spec.model, spec.contract);
        rec.p_hat = r.p_hat;
        rec.price = r.price;
        rec.work = r.work;
        break;
      }
    }
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return rec;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::ams:
      return "ams";
    case Method::mc:
      return "mc";
    case Method::mca:
      return "mca";
    case Method::mlmc:
      return "mlmc";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "ams") return Method::ams;
  if (name == "mc") return Method::mc;
  if (name == "mca") return Method::mca;
  if (name == "mlmc") return Method::mlmc;
  throw std::invalid_argument("unknown method: " + name);
}

RunRecord run_single(const ExperimentSpec& spec, std::uint64_t seed,
                     std::uint32_t run) {
  return execute_run(spec, seed, run);
}

ReplicationPlan make_replication(std::uint64_t base_seed, int n_seeds,
                                 int runs_per_seed) {
  if (n_seeds < 1 || runs_per_seed < 1) {
    throw std::invalid_argument("replication counts must be >= 1");
  }
  ReplicationPlan plan;
  plan.seeds.resize(n_seeds);
  for (int s = 0; s < n_seeds; ++s) plan.seeds[s] = base_seed + s;
  plan.runs_per_seed = static_cast<std::uint32_t>(runs_per_seed);
  return plan;
}

double relative_accuracy(std::span<const double> estimates) {
  if (estimates.size() < 2) {
    throw std::invalid_argument("relative_accuracy needs >= 2 estimates");
  }
  const MeanVar mv = mean_variance(estimates);
  if (!(mv.mean > 0.0)) {
    std::cerr << "warning: relative accuracy undefined for non-positive mean "
              << mv.mean << "\n";
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::sqrt(mv.variance) / mv.mean;
}

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      std::vector<RunRecord>* records) {
  validate_name(spec.name);
  validate_replication(spec.replication);

  ReportRow row;
  row.experiment = spec.name;
  row.method = spec.method;

  std::vector<double> estimates;
  double iter_sum = 0.0;
  for (const std::uint64_t seed : spec.replication.seeds) {
    for (std::uint32_t run = 0; run < spec.replication.runs_per_seed; ++run) {
      RunRecord rec = execute_run(spec, seed, run);
      row.wall_ms += rec.wall_ms;
      if (rec.ok) {
        estimates.push_back(rec.p_hat);
        row.work_total += rec.work;
        iter_sum += rec.iterations;
        ++row.runs;
      } else {
        std::cerr << "warning: run (seed=" << rec.seed << ", run=" << rec.run
                  << ") of " << spec.name << " failed: " << rec.error << "\n";
      }
      if (records) records->push_back(std::move(rec));
    }
  }

  if (row.runs > 0) {
    const MeanVar mv = mean_variance(estimates);
    row.mean = mv.mean;
    row.variance = row.runs > 1 ? mv.variance : 0.0;
    row.rel_accuracy = row.runs > 1
                           ? relative_accuracy(estimates)
                           : std::numeric_limits<double>::quiet_NaN();
    row.work = static_cast<double>(row.work_total) / row.runs;
    row.iterations = iter_sum / row.runs;
  }
  return {row};
}

std::vector<ReportRow> run_matrix(std::span<const ExperimentSpec> specs,
                                  std::vector<RunRecord>* records) {
  std::vector<ReportRow> rows;
  for (const ExperimentSpec& spec : specs) {
    auto sub = run_experiment(spec, records);
    rows.insert(rows.end(), sub.begin(), sub.end());
  }
  return rows;
}

std::vector<ReportRow> sweep_k(const ExperimentSpec& base,
                               std::span<const double> k_values,
                               std::vector<RunRecord>* records) {
  if (base.method != Method::ams) {
    throw std::invalid_argument("sweep_k applies to the ams method only");
  }
  std::vector<ReportRow> rows;
  for (const double k : k_values) {
    ExperimentSpec spec = base;
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "/k=%.2f", k);
    spec.name += suffix;
    spec.ams.kill_count = 0;
    spec.ams.discard_fraction = k;
    auto sub = run_experiment(spec, records);
    rows.insert(rows.end(), sub.begin(), sub.end());
  }
  return rows;
}

std::vector<ReportRow> sweep_n(const ExperimentSpec& base,
                               std::span<const int> n_values,
                               std::vector<double>* prefactors,
                               std::vector<RunRecord>* records) {
  if (base.method != Method::ams) {
    throw std::invalid_argument("sweep_n applies to the ams method only");
  }
  std::vector<ReportRow> rows;
  for (const int n : n_values) {
    ExperimentSpec spec = base;
    spec.name += "/n=" + std::to_string(n);
    spec.ams.n_particles = n;
    auto sub = run_experiment(spec, records);
    for (const ReportRow& row : sub) {
      if (prefactors) {
        double pf = std::numeric_limits<double>::quiet_NaN();
        if (row.mean > 0.0 && row.mean < 1.0 && n > 1) {
          pf = row.work / (n * std::log(static_cast<double>(n)) *
                           (-std::log(row.mean)));
        }
        prefactors->push_back(pf);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string render_csv(std::span<const ReportRow> rows) {
  std::string out =
      "experiment,method,mean,variance,rel_accuracy,work,iterations,runs,"
      "wall_ms\n";
  for (const ReportRow& r : rows) {
    out += r.experiment;
    out += ',';
    out += method_name(r.method);
    out += ',';
    out += format_scientific(r.mean);
    out += ',';
    out += format_scientific(r.variance);
    out += ',';
    out += format_scientific(r.rel_accuracy);
    out += ',';
    out += format_scientific(r.work);
    out += ',';
    out += format_scientific(r.iterations);
    out += ',';
    out += std::to_string(r.runs);
    out += ',';
    out += std::to_string(r.wall_ms);
    out += '\n';
  }
  return out;
}

std::string render_json(std::span<const ReportRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    arr.push_back({{"experiment", r.experiment},
                   {"method", method_name(r.method)},
                   {"mean", r.mean},
                   {"variance", r.variance},
                   {"rel_accuracy", r.rel_accuracy},
                   {"work", r.work},
                   {"iterations", r.iterations},
                   {"runs", r.runs},
                   {"wall_ms", r.wall_ms}});
  }
  return arr.dump(2) + "\n";
}

void emit_report(std::span<const ReportRow> rows, ReportFormat format,
                 const std::string& path) {
  const std::string body =
      format == ReportFormat::csv ? render_csv(rows) : render_json(rows);
  if (path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open report target: " + path);
  }
  out << body;
  if (!out.good()) {
    throw std::runtime_error("failed writing report target: " + path);
  }
}

}  // namespace amsp
