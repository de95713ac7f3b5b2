#include "amsp/contracts.hpp"

#include <cmath>
#include <stdexcept>

#include "amsp/math.hpp"

namespace amsp {

bool is_put(ContractKind kind) {
  return kind == ContractKind::digital_put ||
         kind == ContractKind::asian_digital_put ||
         kind == ContractKind::barrier_up_in_put;
}

bool uses_strike(ContractKind kind) {
  return kind == ContractKind::digital_call ||
         kind == ContractKind::digital_put ||
         kind == ContractKind::asian_digital_call ||
         kind == ContractKind::asian_digital_put;
}

bool uses_barrier(ContractKind kind) {
  return kind == ContractKind::barrier_up_in_call ||
         kind == ContractKind::barrier_up_in_put;
}

void validate_contract(const ContractSpec& c) {
  if (!(c.maturity > 0.0) || !std::isfinite(c.maturity))
    throw std::invalid_argument("contract maturity must be > 0");
  if (c.steps < 1) throw std::invalid_argument("contract steps must be >= 1");
  auto set = [](double x) { return x != 0.0; };
  bool strike_ok = uses_strike(c.kind) ? c.strike > 0.0 : !set(c.strike);
  bool barrier_ok = uses_barrier(c.kind) ? c.barrier > 0.0 : !set(c.barrier);
  bool multi = c.kind == ContractKind::multi_asset_dispersion;
  bool disp_ok = multi ? c.dispersion > 0.0 && c.average_level > 0.0
                       : !set(c.dispersion) && !set(c.average_level);
  if (!strike_ok || !barrier_ok || !disp_ok)
    throw std::invalid_argument(
        "contract parameters must match the contract kind");
}

double asian_running_average(const Trajectory& t, int i) {
  if (i == 0) return t.price(0);
  return (t.running_sum[i] - t.price(0)) / i;
}

double dispersion_max(const Trajectory& t, int i) {
  double d = 0.0;
  for (std::uint32_t a = 0; a < t.n_assets; ++a)
    for (std::uint32_t b = a + 1; b < t.n_assets; ++b)
      d = std::max(d, std::abs(t.price(i, a) - t.price(i, b)));
  return d;
}

double asset_mean(const Trajectory& t, int i) {
  double s = 0.0;
  for (std::uint32_t a = 0; a < t.n_assets; ++a) s += t.price(i, a);
  return s / t.n_assets;
}

bool payoff_indicator(const ContractSpec& c, const Trajectory& t) {
  validate_contract(c);
  if (t.steps() != c.steps || t.grid.maturity != c.maturity)
    throw std::invalid_argument("trajectory grid does not match contract");
  bool multi = c.kind == ContractKind::multi_asset_dispersion;
  if (multi != (t.n_assets > 1))
    throw std::invalid_argument(
        "trajectory asset count does not match contract kind");

  int m = t.steps();
  switch (c.kind) {
    case ContractKind::digital_call:
      return t.price(m) > c.strike;
    case ContractKind::digital_put:
      return t.price(m) < c.strike;
    case ContractKind::asian_digital_call:
      return asian_running_average(t, m) > c.strike;
    case ContractKind::asian_digital_put:
      return asian_running_average(t, m) < c.strike;
    case ContractKind::barrier_up_in_call:
      return t.running_max[m] > c.barrier;
    case ContractKind::barrier_up_in_put:
      return t.running_min[m] < c.barrier;
    case ContractKind::multi_asset_dispersion:
      return dispersion_max(t, m) > c.dispersion &&
             asset_mean(t, m) > c.average_level;
  }
  throw std::logic_error("unknown contract kind");
}

double bs_digital_closed_form(double s0, double strike, double r, double sigma,
                              double maturity, OptionSide side) {
  if (!(s0 > 0.0) || !(strike > 0.0))
    throw std::invalid_argument("s0 and strike must be > 0");
  if (sigma < 0.0 || maturity < 0.0)
    throw std::invalid_argument("sigma and maturity must be >= 0");
  double disc = std::exp(-r * maturity);
  double vol = sigma * std::sqrt(maturity);
  if (vol == 0.0) {
    double forward = s0 * std::exp(r * maturity);
    bool exercised = side == OptionSide::call ? forward > strike
                                              : forward < strike;
    return exercised ? disc : 0.0;
  }
  double d2 = (std::log(s0 / strike) + (r - 0.5 * sigma * sigma) * maturity) / vol;
  return disc * norm_cdf(side == OptionSide::call ? d2 : -d2);
}

double price_from_prob(double p_hat, double r, double maturity) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0))
    throw std::invalid_argument("p_hat must lie in [0,1]");
  return std::exp(-r * maturity) * p_hat;
}

}  // namespace amsp
