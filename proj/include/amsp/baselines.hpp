#pragma once

#include <cstdint>
#include <vector>

#include "amsp/contracts.hpp"
#include "amsp/models.hpp"

namespace amsp {

struct EstimateResult {
  double p_hat = 0.0;
  double price = 0.0;
  double std_error = 0.0;  // standard error of p_hat
  std::uint64_t n_samples = 0;
  std::uint64_t work = 0;
};

struct McConfig {
  std::uint64_t n_paths = 0;
  std::uint64_t seed = 0;
  std::uint32_t run = 0;
};

// Crude Monte Carlo over the exercise indicator.  Path i draws from the
// stream keyed by replica = i.
EstimateResult run_crude_mc(const McConfig& cfg, const ModelSpec& model,
                            const ContractSpec& contract);

// Antithetic variates: pair i simulates one path from the stream keyed
// by replica = i and one from its mirrored copy (uniforms reflected to
// 1-u, gaussians negated).  n_paths must be even; the standard error is
// computed over the n_paths/2 pair means.
EstimateResult run_antithetic_mc(const McConfig& cfg, const ModelSpec& model,
                                 const ContractSpec& contract);

// Multilevel Monte Carlo over nested time grids.  Grid l has
// coarse_steps * refine^l steps; the finest grid must equal the
// contract's step count.  Level 0 samples the payoff on the coarsest
// grid; level l >= 1 samples the difference between payoffs evaluated on
// consecutive grids from a coupled pair of paths sharing randomness
// (exactly summed Brownian increments under Black-Scholes; per-interval
// aggregated asset and variance gaussians under Heston).
// Setting coupled = false simulates the coarse member independently,
// which preserves the telescoping mean but inflates level variances.
struct MlmcConfig {
  int coarse_steps = 1;
  int refine = 2;
  int levels = 1;        // number of grids
  double eps_rel = 0.0;  // > 0: sample-size allocation targets this
                         // relative standard error; 0: fixed_samples
  std::vector<std::uint64_t> fixed_samples;  // per level, when eps_rel == 0
  std::uint64_t pilot = 1000;  // pilot samples per level for allocation
  bool coupled = true;
  std::uint64_t seed = 0;
  std::uint32_t run = 0;
};

struct MlmcLevel {
  int level = 0;
  int fine_steps = 0;
  int coarse_steps = 0;  // 0 on level 0
  std::uint64_t n_samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double cost_per_sample = 0.0;  // work units
};

struct MlmcResult {
  double p_hat = 0.0;  // sum of level means; may leave [0,1] by noise
  double price = 0.0;
  double std_error = 0.0;
  std::uint64_t work = 0;
  std::vector<MlmcLevel> levels;
};

// Level l paths draw from streams keyed by branch = l, so level 0 with
// coarse_steps equal to the contract grid reproduces crude Monte Carlo
// bit for bit.
MlmcResult run_mlmc(const MlmcConfig& cfg, const ModelSpec& model,
                    const ContractSpec& contract);

// Samples for a crude Monte Carlo estimate of a probability p to reach
// relative standard error eps_rel: ceil((1-p) / (eps_rel^2 p)).
double required_mc_samples(double p, double eps_rel);

}  // namespace amsp
