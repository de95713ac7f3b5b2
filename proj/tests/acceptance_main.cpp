// Acceptance suite for the rare-event pricing engine.
//
// Each criterion prints one [PASS]/[FAIL] line with its measured numbers
// and pinned tolerances.  The process exits nonzero if any hard criterion
// fails; criterion 13 is a soft statistical band and never blocks.
// Progress notes go to stderr while the long batches run.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "amsp/ams.hpp"
#include "amsp/baselines.hpp"
#include "amsp/config.hpp"
#include "amsp/contracts.hpp"
#include "amsp/importance.hpp"
#include "amsp/math.hpp"
#include "amsp/models.hpp"
#include "amsp/rng.hpp"

using namespace amsp;

namespace {

// ---------------------------------------------------------------------
// Invariant audit (criterion 5): every AMS run issued by this binary is
// checked for the exact weight identity, a non-decreasing level history,
// one recorded level per iteration plus the final one, and p_hat bounded
// by the weight.
long g_audit_runs = 0;
long g_audit_violations = 0;
std::string g_audit_first_issue;

int resolved_kill(const AmsConfig& cfg) {
  if (cfg.kill_count > 0) return cfg.kill_count;
  int k = static_cast<int>(
      std::lround(cfg.discard_fraction * cfg.n_particles));
  if (k < 1) k = 1;
  if (k > cfg.n_particles - 1) k = cfg.n_particles - 1;
  return k;
}

void audit_failure(const std::string& what) {
  ++g_audit_violations;
  if (g_audit_first_issue.empty()) g_audit_first_issue = what;
}

AmsResult run_ams_audited(const AmsConfig& cfg, const ModelSpec& model,
                          const ContractSpec& contract) {
  const AmsResult res = run_ams(cfg, model, contract);
  ++g_audit_runs;

  const int n = cfg.n_particles;
  const int kill = resolved_kill(cfg);
  const double ratio = static_cast<double>(n - kill) / n;
  double weight = 1.0;
  for (int i = 0; i < res.q_iterations; ++i) weight *= ratio;
  if (weight != res.final_weight) {
    audit_failure("final_weight != ((N-K)/N)^Q bit for bit");
  }
  for (std::size_t i = 1; i < res.level_history.size(); ++i) {
    if (res.level_history[i] < res.level_history[i - 1]) {
      audit_failure("level history decreased");
      break;
    }
  }
  if (res.level_history.size() !=
      static_cast<std::size_t>(res.q_iterations) + 1) {
    audit_failure("level history size != Q + 1");
  }
  if (res.p_hat > res.final_weight || res.p_hat < 0.0) {
    audit_failure("p_hat outside [0, final_weight]");
  }
  return res;
}

// ---------------------------------------------------------------------
// Replicated AMS batches: fixed seed, run index 0..R-1.
struct Batch {
  int runs = 0;
  double mean_p = 0.0;
  double sd_p = 0.0;       // sample SD over runs
  double se_mean = 0.0;    // sd / sqrt(R)
  double rel_acc = 0.0;    // sd / mean
  double mean_price = 0.0;
  double mean_work = 0.0;
  double mean_q = 0.0;
  std::vector<double> p_hats;
};

Batch ams_batch(AmsConfig cfg, const ModelSpec& model,
                const ContractSpec& contract, int runs, std::uint64_t seed) {
  Batch b;
  b.runs = runs;
  double price_sum = 0.0;
  double work_sum = 0.0;
  double q_sum = 0.0;
  for (int t = 0; t < runs; ++t) {
    cfg.seed = seed;
    cfg.run = static_cast<std::uint32_t>(t);
    const AmsResult r = run_ams_audited(cfg, model, contract);
    b.p_hats.push_back(r.p_hat);
    price_sum += r.price;
    work_sum += static_cast<double>(r.work);
    q_sum += r.q_iterations;
  }
  const MeanVar mv = mean_variance(b.p_hats);
  b.mean_p = mv.mean;
  b.sd_p = std::sqrt(mv.variance);
  b.se_mean = b.sd_p / std::sqrt(static_cast<double>(runs));
  b.rel_acc = b.mean_p > 0.0 ? b.sd_p / b.mean_p
                             : std::numeric_limits<double>::quiet_NaN();
  b.mean_price = price_sum / runs;
  b.mean_work = work_sum / runs;
  b.mean_q = q_sum / runs;
  return b;
}

ContractSpec make_contract(ContractKind kind, int steps) {
  ContractSpec c;
  c.kind = kind;
  c.steps = steps;
  return c;
}

AmsConfig make_ams(const ContractSpec& contract, const ModelSpec& model,
                   int n, double k,
                   ImportanceFamily family = ImportanceFamily::path_based) {
  AmsConfig cfg;
  cfg.n_particles = n;
  cfg.discard_fraction = k;
  cfg.importance = make_importance(family, contract, model);
  return cfg;
}

const BsParams kBs{0.03, 0.2, 1.0};

HestonDynamics heston_model() {
  HestonDynamics d;
  d.params = HestonParams{0.03, 2.0, 0.04, 0.3, -0.5, 0.04, 1.0};
  d.scheme = HestonScheme::qe;
  return d;
}

void progress(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
  std::fflush(stderr);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

using Outcome = std::pair<bool, std::string>;

// ---------------------------------------------------------------------
// 1. Closed-form deep-tail digital price, 4 significant figures.
Outcome c01_closed_form() {
  const double price =
      bs_digital_closed_form(1.0, 3.5, 0.03, 0.2, 1.0, OptionSide::call);
  const bool pass = std::fabs(price - 2.509e-10) < 5e-14;
  return {pass, fmt("price %.6e, target 2.509e-10 +/- 5e-14", price)};
}

// ---------------------------------------------------------------------
// 2. Splitting estimator in the deep out-of-the-money regime: 50 runs at
// N = 50000, k = 0.45 must land within 10% of the closed form with
// relative accuracy <= 0.10.
Outcome c02_extreme_event() {
  // 250-step grid: the finest resolution that keeps 50 runs at a few
  // minutes.  The ensemble spread at this configuration is dominated by
  // clone-ancestry correlation across the ~36 levels, not by the grid;
  // measured spread is flat in the step count from 50 through 1000.
  ContractSpec c = make_contract(ContractKind::digital_call, 250);
  c.strike = 3.5;
  const AmsConfig cfg = make_ams(c, kBs, 50000, 0.45);
  progress("[c02] 50 splitting runs, N=50000, strike 3.5 ...");
  const Batch b = ams_batch(cfg, kBs, c, 50, 20101);
  const double target = 2.509e-10;
  const double rel_err = std::fabs(b.mean_price - target) / target;
  const bool pass = b.rel_acc <= 0.10 && rel_err <= 0.10;
  return {pass, fmt("mean price %.4e (target %.4e, off %.1f%%), "
                    "rel acc %.3f (<= 0.10), runs %d",
                    b.mean_price, target, 100.0 * rel_err, b.rel_acc,
                    b.runs)};
}

// ---------------------------------------------------------------------
// 3. Unbiasedness across strikes, importance families and discard
// fractions: batch mean within 3 standard errors of the closed form in
// all 8 cells.
Outcome c03_unbiasedness() {
  const double strikes[2] = {1.2, 2.0};
  const ImportanceFamily families[2] = {ImportanceFamily::path_based,
                                        ImportanceFamily::bs_analytic};
  const double ks[2] = {0.05, 0.45};
  double worst_z = 0.0;
  std::string worst_cell = "none";
  int cell = 0;
  bool pass = true;
  for (double strike : strikes) {
    for (ImportanceFamily family : families) {
      for (double k : ks) {
        ContractSpec c = make_contract(ContractKind::digital_call, 50);
        c.strike = strike;
        const AmsConfig cfg = make_ams(c, kBs, 1000, k, family);
        progress("[c03] strike %.1f family %d k %.2f ...", strike,
                 static_cast<int>(family), k);
        const Batch b =
            ams_batch(cfg, kBs, c, 200, 30101 + 100 * cell);
        const double truth =
            bs_digital_closed_form(1.0, strike, 0.03, 0.2, 1.0,
                                   OptionSide::call) *
            std::exp(0.03);
        const double z = (b.mean_p - truth) / b.se_mean;
        if (std::fabs(z) > std::fabs(worst_z)) {
          worst_z = z;
          worst_cell = fmt("strike %.1f, %s, k=%.2f", strike,
                           importance_family_name(family), k);
        }
        if (!(std::fabs(z) <= 3.0)) pass = false;
        ++cell;
      }
    }
  }
  return {pass, fmt("8 cells x 200 runs; worst |z| %.2f (<= 3) at %s",
                    std::fabs(worst_z), worst_cell.c_str())};
}

// ---------------------------------------------------------------------
// 4 & 9 share the stochastic-volatility batch.
struct HestonShared {
  bool ready = false;
  Batch ams;
  EstimateResult mc;
  int steps = 100;
};
HestonShared g_heston;

void ensure_heston() {
  if (g_heston.ready) return;
  const HestonDynamics model = heston_model();
  ContractSpec c = make_contract(ContractKind::digital_call, g_heston.steps);
  c.strike = 2.2;
  const AmsConfig cfg = make_ams(c, model, 50000, 0.45);
  progress("[c04] 50 splitting runs under stochastic volatility ...");
  g_heston.ams = ams_batch(cfg, model, c, 50, 40101);
  progress("[c04] 1e7-path crude Monte Carlo reference ...");
  g_heston.mc = run_crude_mc(McConfig{10000000, 40901, 0}, model, c);
  g_heston.ready = true;
}

Outcome c04_heston_agreement() {
  ensure_heston();
  const double diff = std::fabs(g_heston.ams.mean_p - g_heston.mc.p_hat);
  const double band = 3.0 * std::hypot(g_heston.ams.se_mean,
                                       g_heston.mc.std_error);
  const bool pass = diff <= band;
  return {pass, fmt("splitting mean %.4e vs crude %.4e, |diff| %.2e "
                    "<= 3 SE %.2e",
                    g_heston.ams.mean_p, g_heston.mc.p_hat, diff, band)};
}

// ---------------------------------------------------------------------
// 5. Weight and level invariants on every AMS run issued by this binary.
Outcome c05_invariants() {
  const bool pass = g_audit_runs > 0 && g_audit_violations == 0;
  std::string detail = fmt("%ld runs audited, %ld violations", g_audit_runs,
                           g_audit_violations);
  if (!g_audit_first_issue.empty()) {
    detail += " (first: " + g_audit_first_issue + ")";
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------
// 6. Support condition: exercise implies trajectory score >= default
// rare level, for every shipped (contract, importance) pairing, with
// near-the-money parameters so the indicator fires often.
Outcome c06_support_condition() {
  struct Triple {
    ContractKind kind;
    ImportanceFamily family;
    double strike;
    double barrier;
  };
  std::vector<Triple> triples;
  for (ImportanceFamily family : {ImportanceFamily::path_based,
                                  ImportanceFamily::bs_analytic}) {
    triples.push_back({ContractKind::digital_call, family, 1.05, 0.0});
    triples.push_back({ContractKind::digital_put, family, 0.95, 0.0});
    triples.push_back({ContractKind::asian_digital_call, family, 1.05, 0.0});
    triples.push_back({ContractKind::asian_digital_put, family, 0.95, 0.0});
    triples.push_back({ContractKind::barrier_up_in_call, family, 0.0, 1.05});
    triples.push_back({ContractKind::barrier_up_in_put, family, 0.0, 0.95});
  }

  const int n_paths = 10000;
  long violations = 0;
  long total_exercised = 0;
  int starved_triples = 0;
  std::uint64_t scratch_work = 0;

  int idx = 0;
  for (const Triple& t : triples) {
    ContractSpec c = make_contract(t.kind, 16);
    c.strike = t.strike;
    c.barrier = t.barrier;
    const ImportanceSpec imp = make_importance(t.family, c, kBs);
    const double l_max = default_l_max(imp, c);
    const TimeGrid grid{c.maturity, c.steps};
    long exercised = 0;
    for (int i = 0; i < n_paths; ++i) {
      RngStream rng(StreamId{60101u + static_cast<std::uint64_t>(idx), 0,
                             static_cast<std::uint32_t>(i), 0, 0});
      const Trajectory traj = simulate_path(kBs, grid, rng, scratch_work);
      if (!payoff_indicator(c, traj)) continue;
      ++exercised;
      if (trajectory_score(imp, traj) < l_max) ++violations;
    }
    if (exercised == 0) ++starved_triples;
    total_exercised += exercised;
    ++idx;
  }

  {  // Multi-asset pairing.
    ContractSpec c = make_contract(ContractKind::multi_asset_dispersion, 16);
    c.dispersion = 0.2;
    c.average_level = 1.0;
    const MultiGbmParams model = default_multi_gbm(3, 0.2);
    const ImportanceSpec imp =
        make_importance(ImportanceFamily::multi_asset_sum, c, model);
    const double l_max = default_l_max(imp, c);
    const TimeGrid grid{c.maturity, c.steps};
    long exercised = 0;
    for (int i = 0; i < n_paths; ++i) {
      RngStream rng(StreamId{60201, 0, static_cast<std::uint32_t>(i), 0, 0});
      const Trajectory traj = simulate_path(model, grid, rng, scratch_work);
      if (!payoff_indicator(c, traj)) continue;
      ++exercised;
      if (trajectory_score(imp, traj) < l_max) ++violations;
    }
    if (exercised == 0) ++starved_triples;
    total_exercised += exercised;
  }

  const bool pass = violations == 0 && starved_triples == 0;
  return {pass, fmt("13 pairings x 10000 paths, %ld exercised, "
                    "%ld violations, %d starved pairings",
                    total_exercised, violations, starved_triples)};
}

// ---------------------------------------------------------------------
// 7. Discard-fraction sweep: mean work strictly decreasing in k while
// the estimate stays within 3 SE of the closed form at every k.
Outcome c07_k_sweep() {
  ContractSpec c = make_contract(ContractKind::digital_call, 50);
  c.strike = 2.0;
  const double truth = bs_digital_closed_form(1.0, 2.0, 0.03, 0.2, 1.0,
                                              OptionSide::call) *
                       std::exp(0.03);
  std::vector<double> works;
  double worst_z = 0.0;
  bool monotone = true;
  bool unbiased = true;
  for (int i = 0; i < 9; ++i) {
    const double k = 0.05 * (i + 1);
    const AmsConfig cfg = make_ams(c, kBs, 50000, k);
    progress("[c07] k = %.2f ...", k);
    const Batch b = ams_batch(cfg, kBs, c, 20, 70101 + 10 * i);
    const double z = (b.mean_p - truth) / b.se_mean;
    if (std::fabs(z) > std::fabs(worst_z)) worst_z = z;
    if (!(std::fabs(z) <= 3.0)) unbiased = false;
    if (!works.empty() && !(b.mean_work < works.back())) monotone = false;
    works.push_back(b.mean_work);
  }
  return {monotone && unbiased,
          fmt("work %.3e -> %.3e over k 0.05..0.45 (%s), worst |z| %.2f "
              "(<= 3)",
              works.front(), works.back(),
              monotone ? "strictly decreasing" : "NOT monotone",
              std::fabs(worst_z))};
}

// ---------------------------------------------------------------------
// 8. Cost prefactor work / (N log N (-log p_hat)) stable over a
// population grid: coefficient of variation <= 25%.
Outcome c08_prefactor() {
  ContractSpec c = make_contract(ContractKind::digital_call, 50);
  c.strike = 2.0;
  const int grid[4] = {5000, 10000, 20000, 40000};
  std::vector<double> prefactors;
  for (int i = 0; i < 4; ++i) {
    const AmsConfig cfg = make_ams(c, kBs, grid[i], 0.45);
    progress("[c08] N = %d ...", grid[i]);
    const Batch b = ams_batch(cfg, kBs, c, 10, 80101 + 10 * i);
    const double n = grid[i];
    prefactors.push_back(b.mean_work /
                         (n * std::log(n) * (-std::log(b.mean_p))));
  }
  const MeanVar mv = mean_variance(prefactors);
  const double cv = std::sqrt(mv.variance) / mv.mean;
  return {cv <= 0.25, fmt("prefactors %.3f %.3f %.3f %.3f, CV %.1f%% "
                          "(<= 25%%)",
                          prefactors[0], prefactors[1], prefactors[2],
                          prefactors[3], 100.0 * cv)};
}

// ---------------------------------------------------------------------
// 9. Efficiency at matched relative accuracy 0.10 under stochastic
// volatility: splitting work at most 1/20 of the crude Monte Carlo work.
Outcome c09_efficiency() {
  ensure_heston();
  const Batch& b = g_heston.ams;
  const double runs_needed = std::max(1.0, (b.rel_acc / 0.10) *
                                               (b.rel_acc / 0.10));
  const double eff_ams = b.mean_work * runs_needed;
  const double eff_mc = required_mc_samples(g_heston.mc.p_hat, 0.10) *
                        static_cast<double>(g_heston.steps);
  const bool pass = 20.0 * eff_ams <= eff_mc;
  return {pass, fmt("splitting %.3e vs crude %.3e work units at 10%% "
                    "accuracy: ratio %.1fx (>= 20x)",
                    eff_ams, eff_mc, eff_mc / eff_ams)};
}

// ---------------------------------------------------------------------
// 10. Antithetic variance bound for a monotone terminal payoff: no worse
// than crude, no better than 2.5x on a matched path budget.
Outcome c10_antithetic() {
  ContractSpec c = make_contract(ContractKind::digital_call, 1);
  c.strike = 1.2;
  const EstimateResult crude =
      run_crude_mc(McConfig{200000, 101001, 0}, kBs, c);
  const EstimateResult anti =
      run_antithetic_mc(McConfig{200000, 101002, 0}, kBs, c);
  const double factor = (crude.std_error * crude.std_error) /
                        (anti.std_error * anti.std_error);
  const bool pass = anti.std_error <= crude.std_error && factor <= 2.5;
  return {pass, fmt("variance reduction factor %.2f (in [1, 2.5]), "
                    "SE %.2e vs %.2e",
                    factor, anti.std_error, crude.std_error)};
}

// ---------------------------------------------------------------------
// 11. Multilevel estimator consistency on the Asian digital call, plus
// decreasing coupled level-difference variances.
Outcome c11_mlmc() {
  ContractSpec c = make_contract(ContractKind::asian_digital_call, 32);
  c.strike = 1.7;
  MlmcConfig cfg;
  cfg.coarse_steps = 4;
  cfg.refine = 2;
  cfg.levels = 4;
  cfg.eps_rel = 0.0;
  cfg.fixed_samples = {30000000, 24000000, 12000000, 6000000};
  cfg.seed = 110101;
  progress("[c11] multilevel run over grids 4/8/16/32 ...");
  const MlmcResult ml = run_mlmc(cfg, kBs, c);
  progress("[c11] 2e7-path crude Monte Carlo reference ...");
  const EstimateResult mc = run_crude_mc(McConfig{20000000, 110901, 0},
                                         kBs, c);
  const double diff = std::fabs(ml.p_hat - mc.p_hat);
  const double band = 3.0 * std::hypot(ml.std_error, mc.std_error);
  const bool agree = diff <= band;
  const bool decreasing = ml.levels[1].variance > ml.levels[2].variance &&
                          ml.levels[2].variance > ml.levels[3].variance;
  return {agree && decreasing,
          fmt("multilevel %.4e vs crude %.4e (|diff| %.2e <= %.2e); "
              "level variances %.2e > %.2e > %.2e (%s)",
              ml.p_hat, mc.p_hat, diff, band, ml.levels[1].variance,
              ml.levels[2].variance, ml.levels[3].variance,
              decreasing ? "decreasing" : "NOT decreasing")};
}

// ---------------------------------------------------------------------
// 12. Multi-asset dispersion contract: agreement with a large crude
// Monte Carlo run and a 10x work advantage at relative accuracy 0.05.
Outcome c12_multi_asset() {
  ContractSpec c = make_contract(ContractKind::multi_asset_dispersion, 50);
  c.dispersion = 1.0;
  c.average_level = 1.4;
  const MultiGbmParams model = default_multi_gbm(3, 0.2);
  const AmsConfig cfg =
      make_ams(c, model, 10000, 0.45, ImportanceFamily::multi_asset_sum);
  progress("[c12] 50 multi-asset splitting runs ...");
  const Batch b = ams_batch(cfg, model, c, 50, 120101);
  progress("[c12] 3e6-path crude Monte Carlo reference ...");
  const EstimateResult mc =
      run_crude_mc(McConfig{3000000, 120901, 0}, model, c);

  const double diff = std::fabs(b.mean_p - mc.p_hat);
  const double band = 3.0 * std::hypot(b.se_mean, mc.std_error);
  const bool agree = diff <= band;

  const double runs_needed = std::max(1.0, (b.rel_acc / 0.05) *
                                               (b.rel_acc / 0.05));
  const double eff_ams = b.mean_work * runs_needed;
  const double eff_mc = required_mc_samples(mc.p_hat, 0.05) * 50.0 * 3.0;
  const bool efficient = 10.0 * eff_ams <= eff_mc;
  return {agree && efficient,
          fmt("splitting %.4e vs crude %.4e (|diff| %.2e <= %.2e); "
              "work ratio %.0fx (>= 10x)",
              b.mean_p, mc.p_hat, diff, band, eff_mc / eff_ams)};
}

// ---------------------------------------------------------------------
// 13 (soft). Single-kill variance band: the sample variance of
// sqrt(N) (p_hat - p) over 1000 runs sits inside the asymptotic
// [-p^2 log p, 2 p (1-p)] band widened by a factor of two each way.
Outcome c13_k1_variance() {
  ContractSpec c = make_contract(ContractKind::digital_call, 50);
  c.strike = 1.6;
  const double p = bs_digital_closed_form(1.0, 1.6, 0.03, 0.2, 1.0,
                                          OptionSide::call) *
                   std::exp(0.03);
  AmsConfig cfg = make_ams(c, kBs, 100, 0.0);
  cfg.kill_count = 1;
  progress("[c13] 1000 single-kill runs at N=100 ...");
  const Batch b = ams_batch(cfg, kBs, c, 1000, 130101);

  std::vector<double> scaled;
  scaled.reserve(b.p_hats.size());
  for (double ph : b.p_hats) scaled.push_back(std::sqrt(100.0) * (ph - p));
  const MeanVar mv = mean_variance(scaled);

  const double lower = 0.5 * (-p * p * std::log(p));
  const double upper = 2.0 * (2.0 * p * (1.0 - p));
  const bool pass = mv.variance >= lower && mv.variance <= upper;
  return {pass, fmt("variance %.3e in [%.3e, %.3e] (p = %.4e)", mv.variance,
                    lower, upper, p)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    bool soft;
    Outcome (*body)();
  };
  const Entry entries[] = {
      {1, "closed-form deep-tail digital price", false, c01_closed_form},
      {2, "splitting estimator, deep out-of-the-money regime", false,
       c02_extreme_event},
      {3, "unbiasedness across families and discard fractions", false,
       c03_unbiasedness},
      {4, "agreement with crude Monte Carlo under stochastic volatility",
       false, c04_heston_agreement},
      {5, "weight and level invariants on every splitting run", false,
       c05_invariants},
      {6, "exercise implies score reaches the rare level", false,
       c06_support_condition},
      {7, "work strictly decreasing in the discard fraction", false,
       c07_k_sweep},
      {8, "cost prefactor stable across population sizes", false,
       c08_prefactor},
      {9, "efficiency vs crude Monte Carlo at matched accuracy", false,
       c09_efficiency},
      {10, "antithetic variance bound for a monotone payoff", false,
       c10_antithetic},
      {11, "multilevel estimator consistency and level variances", false,
       c11_mlmc},
      {12, "multi-asset agreement and work advantage", false,
       c12_multi_asset},
      {13, "single-kill variance band (soft, non-blocking)", true,
       c13_k1_variance},
  };

  // Criterion 5 audits every splitting run, so it must be evaluated
  // after all batches have executed; results are buffered and printed in
  // criterion order.
  std::vector<std::pair<const Entry*, Outcome>> results;
  const Entry* invariant_entry = nullptr;
  for (const Entry& e : entries) {
    if (e.id == 5) {
      invariant_entry = &e;
      continue;
    }
    Outcome out;
    try {
      out = e.body();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    results.emplace_back(&e, std::move(out));
  }
  Outcome inv;
  try {
    inv = invariant_entry->body();
  } catch (const std::exception& ex) {
    inv = {false, std::string("exception: ") + ex.what()};
  }
  results.emplace_back(invariant_entry, std::move(inv));

  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first->id < b.first->id; });

  bool all_hard_pass = true;
  for (const auto& [entry, outcome] : results) {
    std::printf("[%s] C%02d %s: %s\n", outcome.first ? "PASS" : "FAIL",
                entry->id, entry->label, outcome.second.c_str());
    if (!outcome.first && !entry->soft) all_hard_pass = false;
  }
  std::printf("%s\n", all_hard_pass
                          ? "acceptance: all hard criteria passed"
                          : "acceptance: hard criterion failure");
  return all_hard_pass ? 0 : 1;
}
