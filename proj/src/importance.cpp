#include "amsp/importance.hpp"

#include <cmath>
#include <stdexcept>

#include "amsp/math.hpp"

namespace amsp {

ImportanceSpec make_importance(ImportanceFamily family, const ContractSpec& c,
                               const ModelSpec& model,
                               std::optional<double> sigma_override) {
  validate_contract(c);
  bool multi_contract = c.kind == ContractKind::multi_asset_dispersion;
  bool multi_family = family == ImportanceFamily::multi_asset_sum;
  if (multi_contract != multi_family)
    throw std::invalid_argument(
        "multi_asset_sum pairs exactly with multi_asset_dispersion");

  ImportanceSpec spec;
  spec.family = family;
  spec.contract = c.kind;
  spec.threshold = uses_barrier(c.kind) ? c.barrier : c.strike;
  spec.maturity = c.maturity;
  if (family == ImportanceFamily::bs_analytic) {
    spec.rate = model_rate(model);
    if (sigma_override) {
      spec.sigma = *sigma_override;
    } else if (const auto* bs = std::get_if<BsParams>(&model)) {
      spec.sigma = bs->sigma;
    } else if (const auto* h = std::get_if<HestonDynamics>(&model)) {
      spec.sigma = std::sqrt(h->params.theta);
    } else {
      throw std::invalid_argument(
          "bs_analytic requires a volatility (none derivable from model)");
    }
    if (!(spec.sigma > 0.0))
      throw std::invalid_argument("bs_analytic volatility must be > 0");
  }
  return spec;
}

namespace {

// Running feature the contract's payoff looks at, evaluated at index i.
double running_feature(ContractKind kind, const Trajectory& t, int i) {
  switch (kind) {
    case ContractKind::digital_call:
    case ContractKind::digital_put:
      return t.price(i);
    case ContractKind::asian_digital_call:
    case ContractKind::asian_digital_put:
      return asian_running_average(t, i);
    case ContractKind::barrier_up_in_call:
      return t.running_max[i];
    case ContractKind::barrier_up_in_put:
      return t.running_min[i];
    default:
      throw std::invalid_argument(
          "running feature undefined for multi-asset contracts");
  }
}

}  // namespace

double score_at(const ImportanceSpec& spec, const Trajectory& t, int i) {
  if (i < 0 || i > t.steps())
    throw std::invalid_argument("score_at: index out of range");
  switch (spec.family) {
    case ImportanceFamily::path_based: {
      double x = running_feature(spec.contract, t, i);
      return is_put(spec.contract) ? -x : x;
    }
    case ImportanceFamily::bs_analytic: {
      double x = running_feature(spec.contract, t, i);
      double tau = spec.maturity - t.time(i);
      bool call = !is_put(spec.contract);
      if (i == t.steps() || tau <= 0.0)
        return call ? (x > spec.threshold ? 1.0 : 0.0)
                    : (x < spec.threshold ? 1.0 : 0.0);
      double vol = spec.sigma * std::sqrt(tau);
      double d2 = (std::log(x / spec.threshold) +
                   (spec.rate - 0.5 * spec.sigma * spec.sigma) * tau) /
                  vol;
      return std::exp(-spec.rate * tau) * norm_cdf(call ? d2 : -d2);
    }
    case ImportanceFamily::multi_asset_sum:
      return dispersion_max(t, i) + asset_mean(t, i);
  }
  throw std::logic_error("unknown importance family");
}

// The running maximum is taken over the simulated indices 1..m only.  The
// initial index is deterministic and common to every trajectory, so
// including it would put an atom of positive mass at the shared starting
// score; the splitting estimator's fixed-weight accounting assumes the
// score law has no atoms, and killing on such a tie plateau biases the
// weight downward.  Skipping index 0 restores a continuous score law
// while leaving the support condition intact (the terminal index is
// always part of the maximum).
double trajectory_score(const ImportanceSpec& spec, const Trajectory& t) {
  double best = score_at(spec, t, 1);
  for (int i = 2; i <= t.steps(); ++i)
    best = std::max(best, score_at(spec, t, i));
  return best;
}

int first_crossing_index(const ImportanceSpec& spec, const Trajectory& t,
                         double z) {
  for (int i = 1; i <= t.steps(); ++i)
    if (score_at(spec, t, i) >= z) return i;
  throw std::logic_error(
      "first_crossing_index: trajectory never reaches the level");
}

double default_l_max(const ImportanceSpec& spec, const ContractSpec& c) {
  switch (spec.family) {
    case ImportanceFamily::path_based: {
      double threshold = uses_barrier(c.kind) ? c.barrier : c.strike;
      return is_put(c.kind) ? -threshold : threshold;
    }
    case ImportanceFamily::bs_analytic:
      return 0.5;
    case ImportanceFamily::multi_asset_sum:
      return c.dispersion + c.average_level;
  }
  throw std::logic_error("unknown importance family");
}

}  // namespace amsp
