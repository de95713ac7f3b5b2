#pragma once

#include <limits>
#include <span>
#include <vector>

#include "amsp/contracts.hpp"
#include "amsp/importance.hpp"
#include "amsp/models.hpp"

namespace amsp {

// Adaptive multilevel splitting estimator for rare exercise events.
//
// N trajectories evolve; each iteration the level is set to the K-th
// smallest trajectory score, a uniformly random size-K subset of the
// particles at or below the level is discarded, and each discarded slot
// is re-grown by cloning a surviving parent up to its first crossing of
// the level and re-simulating the tail with fresh randomness.  The
// estimator multiplies the surviving fraction (N-K)/N per iteration.
struct AmsConfig {
  int n_particles = 0;
  int kill_count = 0;           // K; if 0, derived from discard_fraction
  double discard_fraction = 0;  // k in (0,1); K = round(k N)
  double l_max = std::numeric_limits<double>::quiet_NaN();  // NaN: default
  ImportanceSpec importance;
  int max_iterations = 0;  // 0: ceil(log(1e-16) / log((N-K)/N))
  std::uint64_t seed = 0;
  std::uint32_t run = 0;
  // Parent pool for cloning.  Default draws among survivors strictly
  // above the level; the permissive variant admits survivors exactly at
  // the level as well.
  bool permissive_parents = false;
};

enum class AmsTermination {
  reached_l_max,
  degenerate_scores,
  extinction,
  iteration_cap,
};

struct AmsResult {
  double p_hat = 0.0;
  double price = 0.0;
  int q_iterations = 0;
  double final_weight = 1.0;  // ((N-K)/N)^q_iterations
  std::uint64_t work = 0;
  AmsTermination termination = AmsTermination::reached_l_max;
  std::vector<double> level_history;  // every level as computed
};

struct Particle {
  Trajectory traj;
  double score = 0.0;
  std::uint32_t replica = 0;
  std::uint64_t branch = 0;
};

// K-th smallest score, duplicates counted (1-indexed: kill_count = 1
// returns the minimum).
double select_level(std::span<const double> scores, int kill_count);

// Uniformly random size-`count` subset of `candidates`, ascending.
std::vector<std::uint32_t> sample_index_subset(
    std::span<const std::uint32_t> candidates, int count, RngStream& rng);

struct KillCloneResult {
  bool extinct = false;
  std::vector<std::uint32_t> killed;
  std::vector<std::uint32_t> parents;  // parent slot per killed slot
};

// One splitting iteration on the population at level z.  Returns
// extinct (population untouched) when no eligible parent exists.
// Kill-subset and parent choices are drawn from algo_rng; clone
// re-simulation uses the killed slot's own stream with its branch
// counter bumped.
KillCloneResult kill_and_clone(std::vector<Particle>& population, double z,
                               int kill_count, const ModelSpec& model,
                               const ImportanceSpec& importance,
                               std::uint64_t seed, std::uint32_t run,
                               RngStream& algo_rng, std::uint64_t& work,
                               bool permissive_parents = false);

// weight * mean(indicators)
double ams_estimate(double weight, std::span<const double> indicators);

AmsResult run_ams(const AmsConfig& cfg, const ModelSpec& model,
                  const ContractSpec& contract);

}  // namespace amsp
