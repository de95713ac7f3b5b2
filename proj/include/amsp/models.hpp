#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "amsp/rng.hpp"

namespace amsp {

// Black-Scholes dynamics dS = r S dt + sigma S dW under the risk-neutral
// measure, simulated exactly at grid points.
struct BsParams {
  double r = 0.0;
  double sigma = 0.0;
  double s0 = 1.0;
};

// Heston stochastic volatility: dS = r S dt + sqrt(V) S dW_S,
// dV = kappa (theta - V) dt + psi_vov sqrt(V) dW_V, corr(dW_S,dW_V) = rho.
struct HestonParams {
  double r = 0.0;
  double kappa = 0.0;
  double theta = 0.0;
  double psi_vov = 0.0;
  double rho = 0.0;
  double v0 = 0.0;
  double s0 = 1.0;
};

enum class HestonScheme { qe, euler, milstein };

struct HestonDynamics {
  HestonParams params;
  HestonScheme scheme = HestonScheme::qe;
};

// Correlated geometric Brownian motions; each asset follows the exact
// Black-Scholes step driven by Cholesky-correlated gaussians.
struct MultiGbmParams {
  double r = 0.0;
  std::vector<double> sigma;
  std::vector<double> s0;
  std::vector<double> corr;  // n x n correlation matrix, row-major
  std::size_t n_assets() const { return sigma.size(); }
};

using ModelSpec = std::variant<BsParams, HestonDynamics, MultiGbmParams>;

// Throws std::invalid_argument on inconsistent parameters (negative vols,
// |rho| > 1, non-factorizable correlation, ...).  Degenerate sigma = 0 /
// psi_vov = 0 are accepted as deterministic limits.
void validate_model(const ModelSpec& model);

std::size_t model_assets(const ModelSpec& model);
double model_rate(const ModelSpec& model);

struct TimeGrid {
  double maturity = 1.0;
  int steps = 1;
  double dt() const { return maturity / steps; }
};

void validate_grid(const TimeGrid& grid);

// Simulated path on a time grid.  Prices are stored step-major:
// price(i, a) = prices[i * n_assets + a].  The running statistics cover
// the first asset and include index 0, so running_sum[i] = sum of
// prices(0..i, 0) and similarly for max/min.  Variances are present only
// for Heston paths.
struct Trajectory {
  TimeGrid grid;
  std::uint32_t n_assets = 1;
  std::vector<double> prices;
  std::vector<double> variances;
  std::vector<double> running_sum;
  std::vector<double> running_max;
  std::vector<double> running_min;

  int steps() const { return grid.steps; }
  double time(int i) const { return grid.dt() * i; }
  double price(int i, std::uint32_t asset = 0) const {
    return prices[static_cast<std::size_t>(i) * n_assets + asset];
  }

  // Builds a trajectory from raw prices, recomputing running statistics.
  static Trajectory from_prices(const TimeGrid& grid, std::uint32_t n_assets,
                                std::vector<double> prices,
                                std::vector<double> variances = {});
};

// One exact Black-Scholes step: s * exp((r - sigma^2/2) dt + sigma dw),
// with dw the Brownian increment over dt (already scaled by sqrt(dt)).
double step_bs_exact(double s, const BsParams& p, double dt, double dw);

// Per-(params, dt) constants of the quadratic-exponential variance
// sampler and the correlated log-price update (Andersen's QE scheme with
// gamma1 = gamma2 = 1/2 and no martingale correction).
struct HestonStepCoeffs {
  double dt = 0;
  double e_kdt = 0;   // exp(-kappa dt)
  double mean_c = 0;  // theta (1 - exp(-kappa dt))
  double var_c1 = 0;  // multiplies v in the conditional variance
  double var_c2 = 0;  // constant part of the conditional variance
  double k0 = 0, k1 = 0, k2 = 0, k3 = 0, k4 = 0;
  static HestonStepCoeffs make(const HestonParams& p, double dt);
};

// Conditional mean and variance of the CIR variance process over dt.
std::pair<double, double> cir_conditional_moments(const HestonParams& p,
                                                  double v, double dt);

// QE variance update with the draws passed explicitly: z_v feeds the
// quadratic branch (psi <= 1.5), u_v the exponential branch.
double qe_variance_update(const HestonStepCoeffs& c, double v, double z_v,
                          double u_v);

// One QE step of (price, variance); consumes draws in the order
// (z_v, u_v, z_s) from the stream overload.
std::pair<double, double> step_heston_qe(double s, double v,
                                         const HestonParams& p,
                                         const HestonStepCoeffs& c, double z_v,
                                         double u_v, double z_s);
std::pair<double, double> step_heston_qe(double s, double v,
                                         const HestonParams& p, double dt,
                                         RngStream& rng);

// Full-truncation Euler / Milstein steps.  z1 drives the asset, z2 the
// orthogonal part of the variance noise; dW_v = rho dW_s +
// sqrt(1-rho^2) dW_perp.  The log-price update uses the truncated
// variance, keeping prices positive; the stream overloads consume
// (z1, z2).
std::pair<double, double> step_heston_euler(double s, double v,
                                            const HestonParams& p, double dt,
                                            double z1, double z2);
std::pair<double, double> step_heston_euler(double s, double v,
                                            const HestonParams& p, double dt,
                                            RngStream& rng);
std::pair<double, double> step_heston_milstein(double s, double v,
                                               const HestonParams& p,
                                               double dt, double z1, double z2);
std::pair<double, double> step_heston_milstein(double s, double v,
                                               const HestonParams& p, double dt,
                                               RngStream& rng);

// Simulates a full path.  `work` is incremented by steps * assets (one
// unit = one simulated step of one asset's state).
Trajectory simulate_path(const ModelSpec& model, const TimeGrid& grid,
                         RngStream& rng, std::uint64_t& work);

Trajectory simulate_multi_path(const MultiGbmParams& p, const TimeGrid& grid,
                               RngStream& rng, std::uint64_t& work);

// Re-simulates `base` from `from_index` onward with fresh randomness.
// The prefix [0, from_index] is copied bit-for-bit; running statistics
// are extended from the boundary; work grows by the suffix length times
// the asset count.  from_index == steps returns an exact copy at zero
// work.
Trajectory resume_path(const Trajectory& base, int from_index,
                       const ModelSpec& model, RngStream& rng,
                       std::uint64_t& work);

}  // namespace amsp
