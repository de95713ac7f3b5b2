#include "amsp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <variant>

namespace amsp {

namespace {

constexpr std::uint32_t kDomainPath = 0;
// Independent streams for the coarse member of an uncoupled level pair.
constexpr std::uint32_t kDomainDecoupled = 2;

void check_contract_matches_model(const ContractSpec& contract,
                                  const ModelSpec& model) {
  const bool multi = contract.kind == ContractKind::multi_asset_dispersion;
  if (multi != (model_assets(model) > 1)) {
    throw std::invalid_argument("contract kind mismatches model asset count");
  }
}

std::uint32_t checked_replica(std::uint64_t i) {
  if (i > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("sample count exceeds the replica id range");
  }
  return static_cast<std::uint32_t>(i);
}

// Sample variance of 0/1 indicators from the success count.
double bernoulli_sample_variance(std::uint64_t ones, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double p = static_cast<double>(ones) / static_cast<double>(n);
  return p * (1.0 - p) * static_cast<double>(n) / static_cast<double>(n - 1);
}

// Coupled (fine, coarse) pair sharing randomness.  Black-Scholes sums
// the fine Brownian increments exactly; Heston aggregates both the asset
// and the variance gaussians per coarse interval.
std::pair<Trajectory, Trajectory> sample_coupled_pair(const ModelSpec& model,
                                                      const TimeGrid& fine,
                                                      const TimeGrid& coarse,
                                                      int refine,
                                                      RngStream& rng,
                                                      std::uint64_t& work) {
  const std::size_t nf = static_cast<std::size_t>(fine.steps) + 1;
  const std::size_t nc = static_cast<std::size_t>(coarse.steps) + 1;
  const double dt_f = fine.dt();
  const double dt_c = coarse.dt();
  const double sq_dt_f = std::sqrt(dt_f);

  if (const auto* bs = std::get_if<BsParams>(&model)) {
    std::vector<double> pf(nf), pc(nc);
    pf[0] = bs->s0;
    pc[0] = bs->s0;
    double acc = 0.0;
    std::size_t ci = 0;
    for (std::size_t i = 1; i < nf; ++i) {
      const double dw = sq_dt_f * rng.gaussian();
      pf[i] = step_bs_exact(pf[i - 1], *bs, dt_f, dw);
      acc += dw;
      if (i % static_cast<std::size_t>(refine) == 0) {
        ++ci;
        pc[ci] = step_bs_exact(pc[ci - 1], *bs, dt_c, acc);
        acc = 0.0;
      }
    }
    work += static_cast<std::uint64_t>(fine.steps) + coarse.steps;
    return {Trajectory::from_prices(fine, 1, std::move(pf)),
            Trajectory::from_prices(coarse, 1, std::move(pc))};
  }

  const auto& hd = std::get<HestonDynamics>(model);
  const HestonParams& p = hd.params;
  const HestonStepCoeffs cf = HestonStepCoeffs::make(p, dt_f);
  const HestonStepCoeffs cc = HestonStepCoeffs::make(p, dt_c);
  std::vector<double> pf(nf), vf(nf), pc(nc), vc(nc);
  pf[0] = p.s0;
  vf[0] = p.v0;
  pc[0] = p.s0;
  vc[0] = p.v0;
  // Both gaussian families aggregate across each coarse interval
  // (sum / sqrt(R) is again standard normal and independent across
  // intervals and families), so the coarse member keeps the exact
  // coarse-grid law while both its asset and variance noise track the
  // fine path.  The QE exponential branch additionally needs a uniform;
  // the interval's first one is reused, which is equally legitimate.
  std::vector<double> zs_sum(static_cast<std::size_t>(coarse.steps), 0.0);
  std::vector<double> zv_sum(static_cast<std::size_t>(coarse.steps), 0.0);
  std::vector<double> uv_first(static_cast<std::size_t>(coarse.steps), 0.0);
  for (std::size_t i = 1; i < nf; ++i) {
    const std::size_t j = (i - 1) / static_cast<std::size_t>(refine);
    const bool block_start = (i - 1) % static_cast<std::size_t>(refine) == 0;
    std::pair<double, double> next;
    switch (hd.scheme) {
      case HestonScheme::qe: {
        const double z_v = rng.gaussian();
        const double u_v = rng.uniform();
        const double z_s = rng.gaussian();
        next = step_heston_qe(pf[i - 1], vf[i - 1], p, cf, z_v, u_v, z_s);
        zs_sum[j] += z_s;
        zv_sum[j] += z_v;
        if (block_start) uv_first[j] = u_v;
        break;
      }
      case HestonScheme::euler: {
        const double z1 = rng.gaussian();
        const double z2 = rng.gaussian();
        next = step_heston_euler(pf[i - 1], vf[i - 1], p, dt_f, z1, z2);
        zs_sum[j] += z1;
        zv_sum[j] += z2;
        break;
      }
      case HestonScheme::milstein: {
        const double z1 = rng.gaussian();
        const double z2 = rng.gaussian();
        next = step_heston_milstein(pf[i - 1], vf[i - 1], p, dt_f, z1, z2);
        zs_sum[j] += z1;
        zv_sum[j] += z2;
        break;
      }
    }
    pf[i] = next.first;
    vf[i] = next.second;
  }
  const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(refine));
  for (std::size_t j = 0; j + 1 < nc; ++j) {
    const double zs_c = zs_sum[j] * inv_sqrt_r;
    const double zv_c = zv_sum[j] * inv_sqrt_r;
    std::pair<double, double> next;
    switch (hd.scheme) {
      case HestonScheme::qe:
        next = step_heston_qe(pc[j], vc[j], p, cc, zv_c, uv_first[j], zs_c);
        break;
      case HestonScheme::euler:
        next = step_heston_euler(pc[j], vc[j], p, dt_c, zs_c, zv_c);
        break;
      case HestonScheme::milstein:
        next = step_heston_milstein(pc[j], vc[j], p, dt_c, zs_c, zv_c);
        break;
    }
    pc[j + 1] = next.first;
    vc[j + 1] = next.second;
  }
  work += static_cast<std::uint64_t>(fine.steps) + coarse.steps;
  return {Trajectory::from_prices(fine, 1, std::move(pf), std::move(vf)),
          Trajectory::from_prices(coarse, 1, std::move(pc), std::move(vc))};
}

}  // namespace

EstimateResult run_crude_mc(const McConfig& cfg, const ModelSpec& model,
                            const ContractSpec& contract) {
  validate_model(model);
  validate_contract(contract);
  check_contract_matches_model(contract, model);
  if (cfg.n_paths < 1) {
    throw std::invalid_argument("crude mc: n_paths must be >= 1");
  }
  checked_replica(cfg.n_paths - 1);

  const TimeGrid grid{contract.maturity, contract.steps};
  EstimateResult res;
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < cfg.n_paths; ++i) {
    RngStream rng(StreamId{cfg.seed, cfg.run, static_cast<std::uint32_t>(i), 0,
                           kDomainPath});
    const Trajectory t = simulate_path(model, grid, rng, res.work);
    ones += payoff_indicator(contract, t) ? 1 : 0;
  }
  res.n_samples = cfg.n_paths;
  res.p_hat = static_cast<double>(ones) / static_cast<double>(cfg.n_paths);
  const double var = bernoulli_sample_variance(ones, cfg.n_paths);
  res.std_error = std::sqrt(var / static_cast<double>(cfg.n_paths));
  res.price = price_from_prob(res.p_hat, model_rate(model), contract.maturity);
  return res;
}

EstimateResult run_antithetic_mc(const McConfig& cfg, const ModelSpec& model,
                                 const ContractSpec& contract) {
  validate_model(model);
  validate_contract(contract);
  check_contract_matches_model(contract, model);
  if (cfg.n_paths < 2 || cfg.n_paths % 2 != 0) {
    throw std::invalid_argument("antithetic mc: n_paths must be even, >= 2");
  }
  const std::uint64_t n_pairs = cfg.n_paths / 2;
  checked_replica(n_pairs - 1);

  const TimeGrid grid{contract.maturity, contract.steps};
  EstimateResult res;
  std::uint64_t c_half = 0;  // pair mean 1/2
  std::uint64_t c_one = 0;   // pair mean 1
  for (std::uint64_t i = 0; i < n_pairs; ++i) {
    RngStream rng(StreamId{cfg.seed, cfg.run, static_cast<std::uint32_t>(i), 0,
                           kDomainPath});
    RngStream mirrored = rng.mirrored_copy();
    const Trajectory t1 = simulate_path(model, grid, rng, res.work);
    const Trajectory t2 = simulate_path(model, grid, mirrored, res.work);
    const int hits = (payoff_indicator(contract, t1) ? 1 : 0) +
                     (payoff_indicator(contract, t2) ? 1 : 0);
    if (hits == 1) {
      ++c_half;
    } else if (hits == 2) {
      ++c_one;
    }
  }
  const double np = static_cast<double>(n_pairs);
  res.n_samples = cfg.n_paths;
  res.p_hat = (0.5 * static_cast<double>(c_half) + static_cast<double>(c_one)) / np;
  const double sumsq =
      0.25 * static_cast<double>(c_half) + static_cast<double>(c_one);
  double var = 0.0;
  if (n_pairs >= 2) {
    var = std::max(0.0, (sumsq - np * res.p_hat * res.p_hat) / (np - 1.0));
  }
  res.std_error = std::sqrt(var / np);
  res.price = price_from_prob(res.p_hat, model_rate(model), contract.maturity);
  return res;
}

MlmcResult run_mlmc(const MlmcConfig& cfg, const ModelSpec& model,
                    const ContractSpec& contract) {
  validate_model(model);
  validate_contract(contract);
  if (model_assets(model) != 1) {
    throw std::invalid_argument("mlmc: single-asset models only");
  }
  if (cfg.coarse_steps < 1 || cfg.refine < 2 || cfg.levels < 1) {
    throw std::invalid_argument("mlmc: invalid grid hierarchy");
  }

  const int n_levels = cfg.levels;
  std::vector<TimeGrid> grids(n_levels);
  std::vector<ContractSpec> level_contract(n_levels);
  {
    std::int64_t m = cfg.coarse_steps;
    for (int l = 0; l < n_levels; ++l) {
      if (m > 1'000'000'000) {
        throw std::invalid_argument("mlmc: grid hierarchy too fine");
      }
      grids[l] = TimeGrid{contract.maturity, static_cast<int>(m)};
      level_contract[l] = contract;
      level_contract[l].steps = static_cast<int>(m);
      m *= cfg.refine;
    }
  }
  if (grids[n_levels - 1].steps != contract.steps) {
    throw std::invalid_argument(
        "mlmc: finest grid must match the contract step count");
  }

  struct LevelAcc {
    std::uint64_t n = 0;
    std::uint64_t plus = 0;   // level samples equal to +1 (level 0: to 1)
    std::uint64_t minus = 0;  // level samples equal to -1
    std::uint64_t work = 0;
  };
  std::vector<LevelAcc> acc(n_levels);

  auto draw = [&](int l, std::uint64_t i) {
    LevelAcc& a = acc[l];
    const std::uint32_t replica = checked_replica(i);
    RngStream rng(StreamId{cfg.seed, cfg.run, replica,
                           static_cast<std::uint64_t>(l), kDomainPath});
    if (l == 0) {
      const Trajectory t = simulate_path(model, grids[0], rng, a.work);
      a.plus += payoff_indicator(level_contract[0], t) ? 1 : 0;
    } else {
      Trajectory tf, tc;
      if (cfg.coupled) {
        auto pair = sample_coupled_pair(model, grids[l], grids[l - 1],
                                        cfg.refine, rng, a.work);
        tf = std::move(pair.first);
        tc = std::move(pair.second);
      } else {
        tf = simulate_path(model, grids[l], rng, a.work);
        RngStream rng_c(StreamId{cfg.seed, cfg.run, replica,
                                 static_cast<std::uint64_t>(l),
                                 kDomainDecoupled});
        tc = simulate_path(model, grids[l - 1], rng_c, a.work);
      }
      const int d = (payoff_indicator(level_contract[l], tf) ? 1 : 0) -
                    (payoff_indicator(level_contract[l - 1], tc) ? 1 : 0);
      if (d > 0) {
        ++a.plus;
      } else if (d < 0) {
        ++a.minus;
      }
    }
    ++a.n;
  };

  auto level_mean = [&](int l) {
    const LevelAcc& a = acc[l];
    return (static_cast<double>(a.plus) - static_cast<double>(a.minus)) /
           static_cast<double>(a.n);
  };
  auto level_variance = [&](int l) {
    const LevelAcc& a = acc[l];
    if (a.n < 2) return 0.0;
    const double n = static_cast<double>(a.n);
    const double mean = level_mean(l);
    const double sumsq =
        static_cast<double>(a.plus) + static_cast<double>(a.minus);
    return std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
  };

  std::vector<std::uint64_t> target(n_levels);
  if (cfg.eps_rel > 0.0) {
    if (cfg.pilot < 2) {
      throw std::invalid_argument("mlmc: pilot must be >= 2");
    }
    for (int l = 0; l < n_levels; ++l) {
      for (std::uint64_t i = 0; i < cfg.pilot; ++i) draw(l, i);
    }
    double p_pilot = 0.0;
    double sum_sqrt_vc = 0.0;
    for (int l = 0; l < n_levels; ++l) {
      p_pilot += level_mean(l);
      const double c = static_cast<double>(acc[l].work) /
                       static_cast<double>(acc[l].n);
      sum_sqrt_vc += std::sqrt(level_variance(l) * c);
    }
    for (int l = 0; l < n_levels; ++l) {
      double wanted = 0.0;
      if (p_pilot > 0.0 && sum_sqrt_vc > 0.0) {
        const double eps = cfg.eps_rel * p_pilot;
        const double c = static_cast<double>(acc[l].work) /
                         static_cast<double>(acc[l].n);
        wanted = std::ceil(std::sqrt(level_variance(l) / c) * sum_sqrt_vc /
                           (eps * eps));
      }
      target[l] = cfg.pilot;
      if (wanted > static_cast<double>(cfg.pilot)) {
        if (wanted > static_cast<double>(
                         std::numeric_limits<std::uint32_t>::max())) {
          throw std::invalid_argument(
              "mlmc: eps_rel target needs more samples than the replica "
              "id range allows");
        }
        target[l] = static_cast<std::uint64_t>(wanted);
      }
    }
    for (int l = 0; l < n_levels; ++l) {
      for (std::uint64_t i = cfg.pilot; i < target[l]; ++i) draw(l, i);
    }
  } else {
    if (static_cast<int>(cfg.fixed_samples.size()) != n_levels) {
      throw std::invalid_argument(
          "mlmc: fixed_samples must list one count per level");
    }
    for (int l = 0; l < n_levels; ++l) {
      if (cfg.fixed_samples[l] < 2) {
        throw std::invalid_argument("mlmc: fixed_samples entries must be >= 2");
      }
      target[l] = cfg.fixed_samples[l];
      checked_replica(target[l] - 1);
      for (std::uint64_t i = 0; i < target[l]; ++i) draw(l, i);
    }
  }

  MlmcResult res;
  res.levels.resize(n_levels);
  double se_sq = 0.0;
  for (int l = 0; l < n_levels; ++l) {
    MlmcLevel& lev = res.levels[l];
    lev.level = l;
    lev.fine_steps = grids[l].steps;
    lev.coarse_steps = l == 0 ? 0 : grids[l - 1].steps;
    lev.n_samples = acc[l].n;
    lev.mean = level_mean(l);
    lev.variance = level_variance(l);
    lev.cost_per_sample =
        static_cast<double>(acc[l].work) / static_cast<double>(acc[l].n);
    res.p_hat += lev.mean;
    se_sq += lev.variance / static_cast<double>(lev.n_samples);
    res.work += acc[l].work;
  }
  res.std_error = std::sqrt(se_sq);
  // The telescoped estimate is unbiased but unclamped, so discount it
  // directly rather than through the [0,1]-validating helper.
  res.price = std::exp(-model_rate(model) * contract.maturity) * res.p_hat;
  return res;
}

double required_mc_samples(double p, double eps_rel) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("required_mc_samples: p must lie in (0,1)");
  }
  if (!(eps_rel > 0.0)) {
    throw std::invalid_argument("required_mc_samples: eps_rel must be > 0");
  }
  return std::ceil((1.0 - p) / (eps_rel * eps_rel * p));
}

}  // namespace amsp
