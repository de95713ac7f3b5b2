// Command-line harness: configures pricing experiments from an INI file
// plus flag overrides and runs them with replication.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amsp/bench.hpp"
#include "amsp/config.hpp"

namespace {

using amsp::Sections;

void merge_into(Sections& dst, const Sections& src) {
  for (const auto& [section, kv] : src) {
    for (const auto& [key, value] : kv) dst[section][key] = value;
  }
}

struct SubcommandState {
  std::string spec_path;
  Sections cli_overrides;
  std::vector<double> k_grid = {0.05, 0.10, 0.15, 0.20, 0.25,
                                0.30, 0.35, 0.40, 0.45};
  std::vector<int> n_grid = {5000, 10000, 20000, 40000};
};

// Registers the shared flag set on a subcommand; raw values flow into
// the same section/key map a config file fills, so one builder handles
// defaults, file values, and flag overrides uniformly.
void add_common_options(CLI::App* cmd, SubcommandState& st) {
  cmd->add_option("--spec", st.spec_path, "experiment configuration file");
  auto opt = [cmd, &st](const std::string& flag, const char* section,
                        const char* key, const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag,
        [&st, section, key](const std::string& v) {
          st.cli_overrides[section][key] = v;
        },
        desc);
  };
  opt("--model", "model", "type", "bs | heston | multi-gbm");
  opt("--r", "model", "r", "risk-free rate");
  opt("--sigma", "model", "sigma", "volatility (list for multi-gbm)");
  opt("--s0", "model", "s0", "initial price (list for multi-gbm)");
  opt("--scheme", "model", "scheme", "heston scheme: qe | euler | milstein");
  opt("--kappa", "model", "kappa", "heston mean-reversion speed");
  opt("--theta", "model", "theta", "heston long-run variance");
  opt("--psi-vov", "model", "psi_vov", "heston vol-of-vol");
  opt("--rho", "model", "rho", "heston price/variance correlation");
  opt("--v0", "model", "v0", "heston initial variance");
  opt("--assets", "model", "n_assets", "multi-gbm asset count");
  opt("--corr", "model", "corr", "multi-gbm pairwise correlation");

  opt("--contract", "contract", "kind",
      "digital-call | digital-put | asian-call | asian-put | "
      "barrier-up-in-call | barrier-up-in-put | multi-dispersion");
  opt("--strike", "contract", "strike", "strike level");
  opt("--barrier", "contract", "barrier", "barrier level");
  opt("--dispersion", "contract", "dispersion", "pairwise-spread threshold");
  opt("--average-level", "contract", "average_level",
      "cross-asset mean threshold");
  opt("--maturity", "contract", "maturity", "contract maturity");
  opt("--steps", "contract", "steps", "time-grid steps");

  opt("--method", "method", "name", "ams | mc | mca | mlmc");
  opt("--n", "method", "n", "particles (ams) or paths (mc/mca)");
  opt("--k", "method", "k", "ams discard fraction");
  opt("--kill-count", "method", "kill_count", "ams absolute kill count");
  opt("--importance", "method", "importance",
      "path | bs-analytic | multi-sum");
  opt("--lmax", "method", "lmax", "ams stopping level override");
  opt("--sigma-override", "method", "sigma_override",
      "bs-analytic volatility override");
  opt("--max-iterations", "method", "max_iterations",
      "ams iteration cap override");
  opt("--permissive-parents", "method", "permissive_parents",
      "admit parents exactly at the level (true/false)");
  opt("--levels", "method", "levels", "mlmc grid count");
  opt("--refine", "method", "refine", "mlmc refinement factor");
  opt("--coarse-steps", "method", "coarse_steps", "mlmc coarsest grid");
  opt("--eps-rel", "method", "eps_rel", "mlmc relative-error target");
  opt("--fixed-samples", "method", "fixed_samples",
      "mlmc per-level sample counts (space separated)");
  opt("--pilot", "method", "pilot", "mlmc pilot samples per level");
  opt("--coupled", "method", "coupled", "mlmc coupling toggle (true/false)");

  opt("--seed", "replication", "seed", "base seed");
  opt("--seeds", "replication", "seeds", "number of seeds");
  opt("--runs", "replication", "runs", "runs per seed");

  opt("--name", "output", "name", "experiment name");
  opt("--format", "output", "format", "csv | json");
  opt("--out", "output", "out", "report target path ('-' for stdout)");
}

amsp::ExperimentFile assemble(const SubcommandState& st,
                              const Sections& presets) {
  Sections merged = presets;
  if (!st.spec_path.empty()) {
    merge_into(merged, amsp::load_ini_file(st.spec_path));
  }
  merge_into(merged, st.cli_overrides);
  return amsp::build_experiment(merged);
}

int cmd_price(const SubcommandState& st, const Sections& presets) {
  const amsp::ExperimentFile file = assemble(st, presets);
  const std::uint64_t seed = file.spec.replication.seeds.front();
  const amsp::RunRecord rec = amsp::run_single(file.spec, seed, 0);
  if (!rec.ok) {
    std::cerr << "run failed: " << rec.error << "\n";
    return 1;
  }
  std::printf("experiment: %s\n", file.spec.name.c_str());
  std::printf("method: %s\n", amsp::method_name(file.spec.method));
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  std::printf("p_hat: %.17e\n", rec.p_hat);
  std::printf("price: %.17e\n", rec.price);
  std::printf("work: %llu\n", static_cast<unsigned long long>(rec.work));
  std::printf("iterations: %d\n", rec.iterations);
  std::printf("wall_ms: %lld\n", static_cast<long long>(rec.wall_ms));
  if (const auto* bs = std::get_if<amsp::BsParams>(&file.spec.model)) {
    const amsp::ContractSpec& c = file.spec.contract;
    if (c.kind == amsp::ContractKind::digital_call ||
        c.kind == amsp::ContractKind::digital_put) {
      const amsp::OptionSide side = c.kind == amsp::ContractKind::digital_call
                                        ? amsp::OptionSide::call
                                        : amsp::OptionSide::put;
      std::printf("closed_form_price: %.17e\n",
                  amsp::bs_digital_closed_form(bs->s0, c.strike, bs->r,
                                               bs->sigma, c.maturity, side));
    }
  }
  return 0;
}

int cmd_bench(const SubcommandState& st, const Sections& presets) {
  const amsp::ExperimentFile file = assemble(st, presets);
  const auto rows = amsp::run_experiment(file.spec);
  amsp::emit_report(rows, file.format, file.out);
  return 0;
}

int cmd_sweep_k(const SubcommandState& st) {
  const amsp::ExperimentFile file = assemble(st, {});
  const auto rows = amsp::sweep_k(file.spec, st.k_grid);
  amsp::emit_report(rows, file.format, file.out);
  return 0;
}

int cmd_sweep_n(const SubcommandState& st) {
  const amsp::ExperimentFile file = assemble(st, {});
  std::vector<double> prefactors;
  const auto rows = amsp::sweep_n(file.spec, st.n_grid, &prefactors);
  amsp::emit_report(rows, file.format, file.out);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::fprintf(stderr, "# %s prefactor work/(N log N (-log p)) = %.6e\n",
                 rows[i].experiment.c_str(), prefactors[i]);
  }
  return 0;
}

Sections extreme_presets() {
  Sections s;
  s["model"]["type"] = "bs";
  s["contract"]["kind"] = "digital-call";
  s["contract"]["strike"] = "3.5";
  s["contract"]["steps"] = "100";
  s["method"]["name"] = "ams";
  s["method"]["n"] = "50000";
  s["method"]["k"] = "0.45";
  s["method"]["importance"] = "path";
  s["output"]["name"] = "extreme-digital-call";
  return s;
}

Sections multi_asset_presets() {
  Sections s;
  s["model"]["type"] = "multi-gbm";
  s["model"]["n_assets"] = "3";
  s["model"]["corr"] = "0.2";
  s["contract"]["kind"] = "multi-dispersion";
  s["contract"]["dispersion"] = "1.0";
  s["contract"]["average_level"] = "1.4";
  s["contract"]["steps"] = "50";
  s["method"]["name"] = "ams";
  s["method"]["n"] = "10000";
  s["method"]["k"] = "0.45";
  s["method"]["importance"] = "multi-sum";
  s["output"]["name"] = "multi-asset-dispersion";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rare-event pricing engine for binary options"};
  app.require_subcommand(1);

  SubcommandState price_st, bench_st, sweepk_st, sweepn_st, extreme_st,
      multi_st;

  CLI::App* price =
      app.add_subcommand("price", "single pricing run of the chosen method");
  add_common_options(price, price_st);

  CLI::App* bench =
      app.add_subcommand("bench", "replicated experiment -> report table");
  add_common_options(bench, bench_st);

  CLI::App* sweepk = app.add_subcommand(
      "sweep-k", "replicated experiments across discard fractions");
  add_common_options(sweepk, sweepk_st);
  sweepk->add_option("--k-grid", sweepk_st.k_grid,
                     "discard fractions to sweep");

  CLI::App* sweepn = app.add_subcommand(
      "sweep-n", "replicated experiments across population sizes");
  add_common_options(sweepn, sweepn_st);
  sweepn->add_option("--n-grid", sweepn_st.n_grid,
                     "population sizes to sweep");

  CLI::App* extreme = app.add_subcommand(
      "extreme", "deep out-of-the-money digital-call preset (strike 3.5)");
  add_common_options(extreme, extreme_st);

  CLI::App* multi = app.add_subcommand(
      "multi-asset", "three-asset dispersion contract preset");
  add_common_options(multi, multi_st);

  CLI11_PARSE(app, argc, argv);

  try {
    if (price->parsed()) return cmd_price(price_st, {});
    if (bench->parsed()) return cmd_bench(bench_st, {});
    if (sweepk->parsed()) return cmd_sweep_k(sweepk_st);
    if (sweepn->parsed()) return cmd_sweep_n(sweepn_st);
    if (extreme->parsed()) return cmd_bench(extreme_st, extreme_presets());
    if (multi->parsed()) return cmd_bench(multi_st, multi_asset_presets());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
