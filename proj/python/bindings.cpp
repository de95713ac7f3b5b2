// Python bindings for the pricing engine's main operations: model and
// contract construction, the splitting estimator, the Monte Carlo
// baselines, path simulation, and the closed-form references.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "amsp/ams.hpp"
#include "amsp/baselines.hpp"
#include "amsp/bench.hpp"
#include "amsp/config.hpp"
#include "amsp/contracts.hpp"
#include "amsp/importance.hpp"
#include "amsp/math.hpp"
#include "amsp/models.hpp"
#include "amsp/rng.hpp"

namespace py = pybind11;
using namespace amsp;

namespace {

const char* termination_name(AmsTermination t) {
  switch (t) {
    case AmsTermination::reached_l_max:
      return "reached_l_max";
    case AmsTermination::degenerate_scores:
      return "degenerate_scores";
    case AmsTermination::extinction:
      return "extinction";
    case AmsTermination::iteration_cap:
      return "iteration_cap";
  }
  return "?";
}

ModelSpec make_bs_model(double r, double sigma, double s0) {
  BsParams p{r, sigma, s0};
  ModelSpec model = p;
  validate_model(model);
  return model;
}

ModelSpec make_heston_model(double r, double kappa, double theta,
                            double psi_vov, double rho, double v0, double s0,
                            const std::string& scheme) {
  HestonDynamics d;
  d.params = HestonParams{r, kappa, theta, psi_vov, rho, v0, s0};
  d.scheme = parse_heston_scheme(scheme);
  ModelSpec model = d;
  validate_model(model);
  return model;
}

ModelSpec make_multi_gbm_model(double r, std::vector<double> sigma,
                               std::vector<double> s0,
                               std::vector<double> corr) {
  MultiGbmParams p;
  p.r = r;
  p.sigma = std::move(sigma);
  p.s0 = std::move(s0);
  p.corr = std::move(corr);
  ModelSpec model = p;
  validate_model(model);
  return model;
}

ModelSpec make_equicorrelated_model(int n_assets, double rho, double r,
                                    double sigma, double s0) {
  MultiGbmParams p = default_multi_gbm(n_assets, rho);
  p.r = r;
  p.sigma.assign(p.sigma.size(), sigma);
  p.s0.assign(p.s0.size(), s0);
  ModelSpec model = p;
  validate_model(model);
  return model;
}

ContractSpec make_contract_py(const std::string& kind, double strike,
                              double barrier, double dispersion,
                              double average_level, double maturity,
                              int steps) {
  ContractSpec c;
  c.kind = parse_contract_kind(kind);
  c.strike = strike;
  c.barrier = barrier;
  c.dispersion = dispersion;
  c.average_level = average_level;
  c.maturity = maturity;
  c.steps = steps;
  validate_contract(c);
  return c;
}

py::dict estimate_dict(const EstimateResult& r) {
  py::dict d;
  d["p_hat"] = r.p_hat;
  d["price"] = r.price;
  d["std_error"] = r.std_error;
  d["n_samples"] = r.n_samples;
  d["work"] = r.work;
  return d;
}

py::dict run_ams_py(const ModelSpec& model, const ContractSpec& contract,
                    int n_particles, double discard_fraction, int kill_count,
                    const std::string& importance,
                    std::optional<double> sigma_override,
                    std::optional<double> l_max, int max_iterations,
                    bool permissive_parents, std::uint64_t seed,
                    std::uint32_t run) {
  AmsConfig cfg;
  cfg.n_particles = n_particles;
  cfg.discard_fraction = discard_fraction;
  cfg.kill_count = kill_count;
  cfg.importance = make_importance(parse_importance_family(importance),
                                   contract, model, sigma_override);
  if (l_max) cfg.l_max = *l_max;
  cfg.max_iterations = max_iterations;
  cfg.permissive_parents = permissive_parents;
  cfg.seed = seed;
  cfg.run = run;
  const AmsResult r = run_ams(cfg, model, contract);
  py::dict d;
  d["p_hat"] = r.p_hat;
  d["price"] = r.price;
  d["iterations"] = r.q_iterations;
  d["final_weight"] = r.final_weight;
  d["work"] = r.work;
  d["termination"] = termination_name(r.termination);
  d["level_history"] = r.level_history;
  return d;
}

py::dict run_crude_mc_py(const ModelSpec& model, const ContractSpec& contract,
                         std::uint64_t n_paths, std::uint64_t seed,
                         std::uint32_t run) {
  return estimate_dict(run_crude_mc(McConfig{n_paths, seed, run}, model,
                                    contract));
}

py::dict run_antithetic_mc_py(const ModelSpec& model,
                              const ContractSpec& contract,
                              std::uint64_t n_paths, std::uint64_t seed,
                              std::uint32_t run) {
  return estimate_dict(run_antithetic_mc(McConfig{n_paths, seed, run}, model,
                                         contract));
}

py::dict run_mlmc_py(const ModelSpec& model, const ContractSpec& contract,
                     int coarse_steps, int refine, int levels,
                     std::optional<std::vector<std::uint64_t>> fixed_samples,
                     double eps_rel, std::uint64_t pilot, bool coupled,
                     std::uint64_t seed, std::uint32_t run) {
  MlmcConfig cfg;
  cfg.coarse_steps = coarse_steps;
  cfg.refine = refine;
  cfg.levels = levels;
  cfg.eps_rel = eps_rel;
  if (fixed_samples) cfg.fixed_samples = *fixed_samples;
  cfg.pilot = pilot;
  cfg.coupled = coupled;
  cfg.seed = seed;
  cfg.run = run;
  const MlmcResult r = run_mlmc(cfg, model, contract);
  py::dict d;
  d["p_hat"] = r.p_hat;
  d["price"] = r.price;
  d["std_error"] = r.std_error;
  d["work"] = r.work;
  py::list levels_out;
  for (const MlmcLevel& lev : r.levels) {
    py::dict ld;
    ld["level"] = lev.level;
    ld["fine_steps"] = lev.fine_steps;
    ld["coarse_steps"] = lev.coarse_steps;
    ld["n_samples"] = lev.n_samples;
    ld["mean"] = lev.mean;
    ld["variance"] = lev.variance;
    ld["cost_per_sample"] = lev.cost_per_sample;
    levels_out.append(ld);
  }
  d["levels"] = levels_out;
  return d;
}

py::dict simulate_path_py(const ModelSpec& model, int steps, double maturity,
                          std::uint64_t seed, std::uint32_t run,
                          std::uint32_t replica) {
  const TimeGrid grid{maturity, steps};
  RngStream rng(StreamId{seed, run, replica, 0, 0});
  std::uint64_t work = 0;
  const Trajectory t = simulate_path(model, grid, rng, work);

  py::list prices;
  py::list times;
  for (int i = 0; i <= t.steps(); ++i) {
    times.append(t.time(i));
    py::list row;
    for (std::uint32_t a = 0; a < t.n_assets; ++a) row.append(t.price(i, a));
    prices.append(row);
  }
  py::dict d;
  d["n_assets"] = t.n_assets;
  d["times"] = times;
  d["prices"] = prices;
  d["variances"] = t.variances;
  d["work"] = work;
  return d;
}

double bs_digital_closed_form_py(double s0, double strike, double r,
                                 double sigma, double maturity,
                                 const std::string& side) {
  OptionSide s;
  if (side == "call") {
    s = OptionSide::call;
  } else if (side == "put") {
    s = OptionSide::put;
  } else {
    throw std::invalid_argument("side must be 'call' or 'put'");
  }
  return bs_digital_closed_form(s0, strike, r, sigma, maturity, s);
}

double relative_accuracy_py(const std::vector<double>& estimates) {
  return relative_accuracy(estimates);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rare-event pricing engine: adaptive multilevel splitting and "
            "Monte Carlo baselines for binary options";

  // ModelSpec is a variant over these three, so any of them is accepted
  // wherever a model is expected.
  py::class_<BsParams>(m, "BsModel",
                       "Geometric Brownian motion parameters; build via "
                       "make_bs_model.")
      .def_readonly("r", &BsParams::r)
      .def_readonly("sigma", &BsParams::sigma)
      .def_readonly("s0", &BsParams::s0);
  py::class_<HestonDynamics>(m, "HestonModel",
                             "Stochastic-volatility dynamics; build via "
                             "make_heston_model.");
  py::class_<MultiGbmParams>(m, "MultiGbmModel",
                             "Correlated multi-asset parameters; build via "
                             "make_multi_gbm_model or "
                             "make_equicorrelated_model.");
  py::class_<ContractSpec>(m, "Contract",
                           "Opaque contract handle; build via make_contract.")
      .def_readonly("strike", &ContractSpec::strike)
      .def_readonly("barrier", &ContractSpec::barrier)
      .def_readonly("maturity", &ContractSpec::maturity)
      .def_readonly("steps", &ContractSpec::steps);

  m.def("make_bs_model", &make_bs_model,
        "Geometric Brownian motion with exact stepping.", py::arg("r") = 0.03,
        py::arg("sigma") = 0.2, py::arg("s0") = 1.0);
  m.def("make_heston_model", &make_heston_model,
        "Stochastic-volatility dynamics; scheme is 'qe', 'euler' or "
        "'milstein'.",
        py::arg("r") = 0.03, py::arg("kappa") = 2.0, py::arg("theta") = 0.04,
        py::arg("psi_vov") = 0.3, py::arg("rho") = -0.5, py::arg("v0") = 0.04,
        py::arg("s0") = 1.0, py::arg("scheme") = "qe");
  m.def("make_multi_gbm_model", &make_multi_gbm_model,
        "Correlated geometric Brownian motions; corr is the flat row-major "
        "correlation matrix.",
        py::arg("r"), py::arg("sigma"), py::arg("s0"), py::arg("corr"));
  m.def("make_equicorrelated_model", &make_equicorrelated_model,
        "Correlated geometric Brownian motions with one pairwise "
        "correlation.",
        py::arg("n_assets") = 3, py::arg("rho") = 0.2, py::arg("r") = 0.03,
        py::arg("sigma") = 0.2, py::arg("s0") = 1.0);
  m.def("make_contract", &make_contract_py,
        "Binary contract; kind is one of digital-call, digital-put, "
        "asian-call, asian-put, barrier-up-in-call, barrier-up-in-put, "
        "multi-dispersion.",
        py::arg("kind"), py::arg("strike") = 0.0, py::arg("barrier") = 0.0,
        py::arg("dispersion") = 0.0, py::arg("average_level") = 0.0,
        py::arg("maturity") = 1.0, py::arg("steps") = 250);

  m.def("run_ams", &run_ams_py,
        "Adaptive multilevel splitting estimate of the exercise "
        "probability and discounted price.",
        py::arg("model"), py::arg("contract"), py::arg("n_particles"),
        py::arg("discard_fraction") = 0.0, py::arg("kill_count") = 0,
        py::arg("importance") = "path",
        py::arg("sigma_override") = py::none(),
        py::arg("l_max") = py::none(), py::arg("max_iterations") = 0,
        py::arg("permissive_parents") = false, py::arg("seed") = 0,
        py::arg("run") = 0);
  m.def("run_crude_mc", &run_crude_mc_py, "Crude Monte Carlo baseline.",
        py::arg("model"), py::arg("contract"), py::arg("n_paths"),
        py::arg("seed") = 0, py::arg("run") = 0);
  m.def("run_antithetic_mc", &run_antithetic_mc_py,
        "Antithetic-variates baseline; n_paths must be even.",
        py::arg("model"), py::arg("contract"), py::arg("n_paths"),
        py::arg("seed") = 0, py::arg("run") = 0);
  m.def("run_mlmc", &run_mlmc_py,
        "Multilevel Monte Carlo over nested grids; the finest grid must "
        "match the contract steps.",
        py::arg("model"), py::arg("contract"), py::arg("coarse_steps"),
        py::arg("refine") = 2, py::arg("levels") = 1,
        py::arg("fixed_samples") = py::none(), py::arg("eps_rel") = 0.0,
        py::arg("pilot") = 1000, py::arg("coupled") = true,
        py::arg("seed") = 0, py::arg("run") = 0);
  m.def("simulate_path", &simulate_path_py,
        "One trajectory on a fixed grid from a counter-based stream.",
        py::arg("model"), py::arg("steps"), py::arg("maturity") = 1.0,
        py::arg("seed") = 0, py::arg("run") = 0, py::arg("replica") = 0);

  m.def("bs_digital_closed_form", &bs_digital_closed_form_py,
        "Closed-form discounted price of the European digital option.",
        py::arg("s0"), py::arg("strike"), py::arg("r"), py::arg("sigma"),
        py::arg("maturity"), py::arg("side") = "call");
  m.def("price_from_prob", &price_from_prob,
        "Discounted unit-payoff price from an exercise probability.",
        py::arg("p_hat"), py::arg("r"), py::arg("maturity"));
  m.def("required_mc_samples", &required_mc_samples,
        "Crude Monte Carlo sample count for a target relative standard "
        "error.",
        py::arg("p"), py::arg("eps_rel"));
  m.def("relative_accuracy", &relative_accuracy_py,
        "Sample standard deviation over sample mean.", py::arg("estimates"));
  m.def("norm_cdf", &norm_cdf, py::arg("x"));
  m.def("norm_inv", &norm_inv, py::arg("u"));
}
