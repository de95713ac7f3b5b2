#include "amsp/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "amsp/math.hpp"

namespace amsp {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

void validate_model(const ModelSpec& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BsParams>) {
          require_finite(m.r, "r");
          require_finite(m.sigma, "sigma");
          require_finite(m.s0, "s0");
          require(m.sigma >= 0.0, "sigma must be >= 0");
          require(m.s0 > 0.0, "s0 must be > 0");
        } else if constexpr (std::is_same_v<T, HestonDynamics>) {
          const HestonParams& p = m.params;
          require_finite(p.r, "r");
          require_finite(p.kappa, "kappa");
          require_finite(p.theta, "theta");
          require_finite(p.psi_vov, "psi_vov");
          require_finite(p.rho, "rho");
          require_finite(p.v0, "v0");
          require_finite(p.s0, "s0");
          require(p.kappa > 0.0, "kappa must be > 0");
          require(p.theta > 0.0, "theta must be > 0");
          require(p.psi_vov >= 0.0, "psi_vov must be >= 0");
          require(std::abs(p.rho) <= 1.0, "|rho| must be <= 1");
          require(p.v0 >= 0.0, "v0 must be >= 0");
          require(p.s0 > 0.0, "s0 must be > 0");
        } else {
          const MultiGbmParams& p = m;
          std::size_t n = p.n_assets();
          require(n >= 1, "at least one asset required");
          require(p.s0.size() == n, "sigma/s0 length mismatch");
          require(p.corr.size() == n * n, "corr must be n x n");
          for (double s : p.sigma) {
            require_finite(s, "sigma");
            require(s >= 0.0, "sigma must be >= 0");
          }
          for (double s : p.s0) {
            require_finite(s, "s0");
            require(s > 0.0, "s0 must be > 0");
          }
          for (std::size_t i = 0; i < n; ++i) {
            require(p.corr[i * n + i] == 1.0, "corr diagonal must be 1");
            for (std::size_t j = 0; j < i; ++j)
              require(p.corr[i * n + j] == p.corr[j * n + i],
                      "corr must be symmetric");
          }
          cholesky_lower(p.corr, n);  // throws if not factorizable
        }
      },
      model);
}

std::size_t model_assets(const ModelSpec& model) {
  if (const auto* m = std::get_if<MultiGbmParams>(&model))
    return m->n_assets();
  return 1;
}

double model_rate(const ModelSpec& model) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HestonDynamics>)
          return m.params.r;
        else
          return m.r;
      },
      model);
}

void validate_grid(const TimeGrid& grid) {
  require(std::isfinite(grid.maturity) && grid.maturity > 0.0,
          "maturity must be > 0");
  require(grid.steps >= 1, "steps must be >= 1");
}

Trajectory Trajectory::from_prices(const TimeGrid& grid, std::uint32_t n_assets,
                                   std::vector<double> prices,
                                   std::vector<double> variances) {
  validate_grid(grid);
  std::size_t n_points = static_cast<std::size_t>(grid.steps) + 1;
  require(n_assets >= 1, "n_assets must be >= 1");
  require(prices.size() == n_points * n_assets, "price array size mismatch");
  require(variances.empty() || variances.size() == n_points,
          "variance array size mismatch");
  Trajectory t;
  t.grid = grid;
  t.n_assets = n_assets;
  t.prices = std::move(prices);
  t.variances = std::move(variances);
  t.running_sum.resize(n_points);
  t.running_max.resize(n_points);
  t.running_min.resize(n_points);
  double s = 0.0, mx = t.prices[0], mn = t.prices[0];
  for (std::size_t i = 0; i < n_points; ++i) {
    double x = t.prices[i * n_assets];
    s += x;
    mx = std::max(mx, x);
    mn = std::min(mn, x);
    t.running_sum[i] = s;
    t.running_max[i] = mx;
    t.running_min[i] = mn;
  }
  return t;
}

double step_bs_exact(double s, const BsParams& p, double dt, double dw) {
  require_finite(s, "s");
  require_finite(dt, "dt");
  require_finite(dw, "dw");
  return s * std::exp((p.r - 0.5 * p.sigma * p.sigma) * dt + p.sigma * dw);
}

HestonStepCoeffs HestonStepCoeffs::make(const HestonParams& p, double dt) {
  HestonStepCoeffs c;
  c.dt = dt;
  c.e_kdt = std::exp(-p.kappa * dt);
  c.mean_c = p.theta * (1.0 - c.e_kdt);
  double vov2 = p.psi_vov * p.psi_vov;
  c.var_c1 = vov2 * c.e_kdt * (1.0 - c.e_kdt) / p.kappa;
  c.var_c2 = p.theta * vov2 * (1.0 - c.e_kdt) * (1.0 - c.e_kdt) / (2.0 * p.kappa);
  const double gamma1 = 0.5, gamma2 = 0.5;
  // The rho/psi_vov terms vanish in the deterministic-variance limit.
  double rho_over_vov = p.psi_vov > 0.0 ? p.rho / p.psi_vov : 0.0;
  c.k0 = -rho_over_vov * p.kappa * p.theta * dt;
  c.k1 = gamma1 * dt * (p.kappa * rho_over_vov - 0.5) - rho_over_vov;
  c.k2 = gamma2 * dt * (p.kappa * rho_over_vov - 0.5) + rho_over_vov;
  c.k3 = gamma1 * dt * (1.0 - p.rho * p.rho);
  c.k4 = gamma2 * dt * (1.0 - p.rho * p.rho);
  return c;
}

std::pair<double, double> cir_conditional_moments(const HestonParams& p,
                                                  double v, double dt) {
  HestonStepCoeffs c = HestonStepCoeffs::make(p, dt);
  double m = p.theta + (v - p.theta) * c.e_kdt;
  double s2 = v * c.var_c1 + c.var_c2;
  return {m, s2};
}

double qe_variance_update(const HestonStepCoeffs& c, double v, double z_v,
                          double u_v) {
  double m = v * c.e_kdt + c.mean_c;
  double s2 = v * c.var_c1 + c.var_c2;
  if (s2 <= 0.0) return m;  // deterministic limit (psi_vov = 0)
  double psi = s2 / (m * m);
  if (psi <= 1.5) {
    double inv = 2.0 / psi;
    double b2 = inv - 1.0 + std::sqrt(inv) * std::sqrt(inv - 1.0);
    if (!(b2 < 1e100)) return m;  // psi ~ 0: sample collapses onto the mean
    double t = std::sqrt(b2) + z_v;
    return m * (t * t) / (1.0 + b2);
  }
  double p_star = (psi - 1.0) / (psi + 1.0);
  if (u_v <= p_star) return 0.0;
  double beta = (1.0 - p_star) / m;
  return std::log((1.0 - p_star) / (1.0 - u_v)) / beta;
}

std::pair<double, double> step_heston_qe(double s, double v,
                                         const HestonParams& p,
                                         const HestonStepCoeffs& c, double z_v,
                                         double u_v, double z_s) {
  double v_next = qe_variance_update(c, v, z_v, u_v);
  double var_term = c.k3 * v + c.k4 * v_next;
  double x = p.r * c.dt + c.k0 + c.k1 * v + c.k2 * v_next +
             std::sqrt(std::max(var_term, 0.0)) * z_s;
  return {s * std::exp(x), v_next};
}

std::pair<double, double> step_heston_qe(double s, double v,
                                         const HestonParams& p, double dt,
                                         RngStream& rng) {
  HestonStepCoeffs c = HestonStepCoeffs::make(p, dt);
  double z_v = rng.gaussian();
  double u_v = rng.uniform();
  double z_s = rng.gaussian();
  return step_heston_qe(s, v, p, c, z_v, u_v, z_s);
}

std::pair<double, double> step_heston_euler(double s, double v,
                                            const HestonParams& p, double dt,
                                            double z1, double z2) {
  require_finite(s, "s");
  if (v < 0.0) throw std::invalid_argument("variance must be >= 0");
  double sq_dt = std::sqrt(dt);
  double dw_s = sq_dt * z1;
  double dw_v = sq_dt * (p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * z2);
  double vp = std::max(v, 0.0);
  double v_next = v + p.kappa * (p.theta - vp) * dt + p.psi_vov * std::sqrt(vp) * dw_v;
  double s_next = s * std::exp((p.r - 0.5 * vp) * dt + std::sqrt(vp) * dw_s);
  return {s_next, std::max(v_next, 0.0)};
}

std::pair<double, double> step_heston_euler(double s, double v,
                                            const HestonParams& p, double dt,
                                            RngStream& rng) {
  double z1 = rng.gaussian();
  double z2 = rng.gaussian();
  return step_heston_euler(s, v, p, dt, z1, z2);
}

std::pair<double, double> step_heston_milstein(double s, double v,
                                               const HestonParams& p,
                                               double dt, double z1,
                                               double z2) {
  require_finite(s, "s");
  if (v < 0.0) throw std::invalid_argument("variance must be >= 0");
  double sq_dt = std::sqrt(dt);
  double dw_s = sq_dt * z1;
  double dw_v = sq_dt * (p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * z2);
  double vp = std::max(v, 0.0);
  double v_next = v + p.kappa * (p.theta - vp) * dt +
                  p.psi_vov * std::sqrt(vp) * dw_v +
                  0.25 * p.psi_vov * p.psi_vov * (dw_v * dw_v - dt);
  double s_next = s * std::exp((p.r - 0.5 * vp) * dt + std::sqrt(vp) * dw_s);
  return {s_next, std::max(v_next, 0.0)};
}

std::pair<double, double> step_heston_milstein(double s, double v,
                                               const HestonParams& p,
                                               double dt, RngStream& rng) {
  double z1 = rng.gaussian();
  double z2 = rng.gaussian();
  return step_heston_milstein(s, v, p, dt, z1, z2);
}

namespace {

void init_stats(Trajectory& t, std::size_t n_points) {
  t.running_sum.resize(n_points);
  t.running_max.resize(n_points);
  t.running_min.resize(n_points);
  double x = t.prices[0];
  t.running_sum[0] = x;
  t.running_max[0] = x;
  t.running_min[0] = x;
}

void push_stats(Trajectory& t, std::size_t i) {
  double x = t.prices[i * t.n_assets];
  t.running_sum[i] = t.running_sum[i - 1] + x;
  t.running_max[i] = std::max(t.running_max[i - 1], x);
  t.running_min[i] = std::min(t.running_min[i - 1], x);
}

}  // namespace

Trajectory simulate_multi_path(const MultiGbmParams& p, const TimeGrid& grid,
                               RngStream& rng, std::uint64_t& work) {
  std::size_t n = p.n_assets();
  std::vector<double> L = cholesky_lower(p.corr, n);
  std::size_t n_points = static_cast<std::size_t>(grid.steps) + 1;

  Trajectory t;
  t.grid = grid;
  t.n_assets = static_cast<std::uint32_t>(n);
  t.prices.resize(n_points * n);
  for (std::size_t a = 0; a < n; ++a) t.prices[a] = p.s0[a];
  init_stats(t, n_points);

  double dt = grid.dt();
  double sq_dt = std::sqrt(dt);
  std::vector<double> z(n);
  for (std::size_t i = 1; i < n_points; ++i) {
    for (std::size_t a = 0; a < n; ++a) z[a] = rng.gaussian();
    for (std::size_t a = 0; a < n; ++a) {
      double corr_z = 0.0;
      for (std::size_t b = 0; b <= a; ++b) corr_z += L[a * n + b] * z[b];
      double drift = (p.r - 0.5 * p.sigma[a] * p.sigma[a]) * dt;
      t.prices[i * n + a] =
          t.prices[(i - 1) * n + a] *
          std::exp(drift + p.sigma[a] * sq_dt * corr_z);
    }
    push_stats(t, i);
  }
  work += static_cast<std::uint64_t>(grid.steps) * n;
  return t;
}

namespace {

Trajectory simulate_single(const ModelSpec& model, const TimeGrid& grid,
                           RngStream& rng, std::uint64_t& work, int from_index,
                           const Trajectory* base) {
  std::size_t n_points = static_cast<std::size_t>(grid.steps) + 1;
  bool heston = std::holds_alternative<HestonDynamics>(model);

  Trajectory t;
  if (base) {
    t.grid = base->grid;
    t.n_assets = base->n_assets;
    t.prices = base->prices;
    t.variances = base->variances;
    t.running_sum = base->running_sum;
    t.running_max = base->running_max;
    t.running_min = base->running_min;
  } else {
    t.grid = grid;
    t.prices.resize(n_points);
    if (heston) t.variances.resize(n_points);
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, BsParams>) {
            t.prices[0] = m.s0;
          } else if constexpr (std::is_same_v<T, HestonDynamics>) {
            t.prices[0] = m.params.s0;
            t.variances[0] = m.params.v0;
          }
        },
        model);
    init_stats(t, n_points);
  }

  double dt = grid.dt();
  double sq_dt = std::sqrt(dt);
  if (const auto* bs = std::get_if<BsParams>(&model)) {
    for (std::size_t i = from_index + 1; i < n_points; ++i) {
      t.prices[i] = step_bs_exact(t.prices[i - 1], *bs, dt, sq_dt * rng.gaussian());
      push_stats(t, i);
    }
  } else {
    const auto& hd = std::get<HestonDynamics>(model);
    HestonStepCoeffs c = HestonStepCoeffs::make(hd.params, dt);
    for (std::size_t i = from_index + 1; i < n_points; ++i) {
      std::pair<double, double> next;
      double s = t.prices[i - 1], v = t.variances[i - 1];
      switch (hd.scheme) {
        case HestonScheme::qe: {
          double z_v = rng.gaussian();
          double u_v = rng.uniform();
          double z_s = rng.gaussian();
          next = step_heston_qe(s, v, hd.params, c, z_v, u_v, z_s);
          break;
        }
        case HestonScheme::euler:
          next = step_heston_euler(s, v, hd.params, dt, rng);
          break;
        case HestonScheme::milstein:
          next = step_heston_milstein(s, v, hd.params, dt, rng);
          break;
      }
      t.prices[i] = next.first;
      t.variances[i] = next.second;
      push_stats(t, i);
    }
  }
  work += static_cast<std::uint64_t>(grid.steps - from_index);
  return t;
}

}  // namespace

Trajectory simulate_path(const ModelSpec& model, const TimeGrid& grid,
                         RngStream& rng, std::uint64_t& work) {
  validate_model(model);
  validate_grid(grid);
  if (const auto* mp = std::get_if<MultiGbmParams>(&model))
    return simulate_multi_path(*mp, grid, rng, work);
  return simulate_single(model, grid, rng, work, 0, nullptr);
}

Trajectory resume_path(const Trajectory& base, int from_index,
                       const ModelSpec& model, RngStream& rng,
                       std::uint64_t& work) {
  if (from_index < 0 || from_index > base.steps())
    throw std::invalid_argument("resume_path: from_index out of range");
  if (model_assets(model) != base.n_assets)
    throw std::invalid_argument("resume_path: asset count mismatch");

  if (const auto* mp = std::get_if<MultiGbmParams>(&model)) {
    std::size_t n = mp->n_assets();
    std::vector<double> L = cholesky_lower(mp->corr, n);
    std::size_t n_points = static_cast<std::size_t>(base.grid.steps) + 1;
    Trajectory t = base;
    double dt = base.grid.dt();
    double sq_dt = std::sqrt(dt);
    std::vector<double> z(n);
    for (std::size_t i = from_index + 1; i < n_points; ++i) {
      for (std::size_t a = 0; a < n; ++a) z[a] = rng.gaussian();
      for (std::size_t a = 0; a < n; ++a) {
        double corr_z = 0.0;
        for (std::size_t b = 0; b <= a; ++b) corr_z += L[a * n + b] * z[b];
        double drift = (mp->r - 0.5 * mp->sigma[a] * mp->sigma[a]) * dt;
        t.prices[i * n + a] =
            t.prices[(i - 1) * n + a] *
            std::exp(drift + mp->sigma[a] * sq_dt * corr_z);
      }
      push_stats(t, i);
    }
    work += static_cast<std::uint64_t>(base.grid.steps - from_index) * n;
    return t;
  }
  return simulate_single(model, base.grid, rng, work, from_index, &base);
}

}  // namespace amsp
