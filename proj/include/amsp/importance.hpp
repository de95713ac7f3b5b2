#pragma once

#include <optional>

#include "amsp/contracts.hpp"
#include "amsp/models.hpp"

namespace amsp {

// Families of importance functions guiding the splitting:
//
//   path_based       the contract's own running feature (spot, running
//                    average, running max/min), negated for puts so that
//                    larger always means closer to exercise
//   bs_analytic      undiscounted-at-horizon digital value
//                    exp(-r tau) Phi(+-d2) evaluated on the running
//                    feature with remaining maturity tau = T - t_i; at
//                    tau = 0 it degenerates to the payoff indicator
//   multi_asset_sum  max pairwise spread plus cross-asset mean
enum class ImportanceFamily { path_based, bs_analytic, multi_asset_sum };

struct ImportanceSpec {
  ImportanceFamily family = ImportanceFamily::path_based;
  ContractKind contract = ContractKind::digital_call;
  double threshold = 0.0;  // strike or barrier of the contract served
  double rate = 0.0;       // bs_analytic only
  double sigma = 0.0;      // bs_analytic only (vol or vol proxy)
  double maturity = 1.0;
};

// Builds a spec consistent with the contract and model.  bs_analytic
// takes its volatility from the model: sigma for Black-Scholes,
// sqrt(theta) for Heston unless sigma_override is given.
// multi_asset_sum pairs only with multi_asset_dispersion and vice versa.
ImportanceSpec make_importance(ImportanceFamily family, const ContractSpec& c,
                               const ModelSpec& model,
                               std::optional<double> sigma_override = {});

// Score of the path prefix ending at index i; larger = closer to the
// rare event.
double score_at(const ImportanceSpec& spec, const Trajectory& t, int i);

// Running supremum of score_at over the simulated indices 1..m.  Index 0
// is excluded: it is deterministic and identical across trajectories, so
// including it would give the score law an atom at the common starting
// value, on which level-tie killing biases the splitting weight.
double trajectory_score(const ImportanceSpec& spec, const Trajectory& t);

// Smallest index in 1..m whose score reaches z.  Requires
// trajectory_score(t) >= z; throws std::logic_error otherwise.
int first_crossing_index(const ImportanceSpec& spec, const Trajectory& t,
                         double z);

// The level at which the contract's exercise region is certainly
// reached: payoff = 1 implies trajectory_score >= default_l_max.
// path_based yields the (signed) strike or barrier, bs_analytic 0.5,
// multi_asset_sum dispersion + average_level.
double default_l_max(const ImportanceSpec& spec, const ContractSpec& c);

}  // namespace amsp
