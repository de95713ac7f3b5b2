#pragma once

#include "amsp/models.hpp"

namespace amsp {

// Binary (digital) payoffs paying 1 on exercise.  Inequalities are
// strict: a terminal value exactly on the threshold pays 0.
//
//   digital_call / digital_put          1{S_T > K} / 1{S_T < K}
//   asian_digital_call / _put           average of S_{t_1}..S_{t_m}
//                                       (t_0 excluded) vs strike
//   barrier_up_in_call / _put           running max > barrier /
//                                       running min < barrier
//   multi_asset_dispersion              1{max pairwise |S_T^i - S_T^j| >
//                                       dispersion AND mean S_T > level}
enum class ContractKind {
  digital_call,
  digital_put,
  asian_digital_call,
  asian_digital_put,
  barrier_up_in_call,
  barrier_up_in_put,
  multi_asset_dispersion,
};

struct ContractSpec {
  ContractKind kind = ContractKind::digital_call;
  double strike = 0.0;         // digital / asian kinds
  double barrier = 0.0;        // barrier kinds
  double dispersion = 0.0;     // multi_asset_dispersion: spread threshold
  double average_level = 0.0;  // multi_asset_dispersion: mean threshold
  double maturity = 1.0;
  int steps = 250;
};

bool is_put(ContractKind kind);
bool uses_strike(ContractKind kind);
bool uses_barrier(ContractKind kind);

// Exactly the parameters relevant to `kind` must be set (positive);
// irrelevant ones must be left at zero.
void validate_contract(const ContractSpec& c);

// Average of prices at t_1..t_i of the first asset (initial point
// excluded); anchored at the spot for i = 0.
double asian_running_average(const Trajectory& t, int i);

// Largest pairwise spread |S^a_i - S^b_i| across assets at index i.
double dispersion_max(const Trajectory& t, int i);

// Cross-asset mean price at index i.
double asset_mean(const Trajectory& t, int i);

// Evaluates the exercise indicator on a simulated path.  Throws
// std::invalid_argument if the trajectory's grid or asset count does not
// match the contract.
bool payoff_indicator(const ContractSpec& c, const Trajectory& t);

enum class OptionSide { call, put };

// Undiscounted exercise probability is Phi(+-d2); the price discounts it.
// Degenerate sigma * sqrt(T) = 0 prices the deterministic forward:
// exp(-rT) 1{s0 exp(rT) > strike} for calls (< for puts, ties pay 0).
double bs_digital_closed_form(double s0, double strike, double r, double sigma,
                              double maturity, OptionSide side);

// Discounted price of a unit binary given an exercise-probability
// estimate: exp(-r T) p_hat.  p_hat must lie in [0, 1].
double price_from_prob(double p_hat, double r, double maturity);

}  // namespace amsp
