#include "amsp/ams.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amsp {

namespace {

constexpr std::uint32_t kDomainPath = 0;
constexpr std::uint32_t kDomainAlgo = 1;

int resolve_kill_count(const AmsConfig& cfg) {
  if (cfg.kill_count > 0) {
    if (cfg.kill_count >= cfg.n_particles) {
      throw std::invalid_argument("ams: kill_count must be < n_particles");
    }
    return cfg.kill_count;
  }
  if (!(cfg.discard_fraction > 0.0) || !(cfg.discard_fraction < 1.0)) {
    throw std::invalid_argument(
        "ams: need kill_count > 0 or discard_fraction in (0,1)");
  }
  int k = static_cast<int>(std::lround(cfg.discard_fraction * cfg.n_particles));
  k = std::max(1, std::min(cfg.n_particles - 1, k));
  return k;
}

int default_iteration_cap(int n_particles, int kill_count) {
  const double ratio =
      static_cast<double>(n_particles - kill_count) / n_particles;
  return static_cast<int>(std::ceil(std::log(1e-16) / std::log(ratio)));
}

}  // namespace

double select_level(std::span<const double> scores, int kill_count) {
  if (kill_count < 1 || kill_count > static_cast<int>(scores.size())) {
    throw std::invalid_argument("select_level: kill_count out of range");
  }
  std::vector<double> buf(scores.begin(), scores.end());
  auto nth = buf.begin() + (kill_count - 1);
  std::nth_element(buf.begin(), nth, buf.end());
  return *nth;
}

std::vector<std::uint32_t> sample_index_subset(
    std::span<const std::uint32_t> candidates, int count, RngStream& rng) {
  if (count < 0 || count > static_cast<int>(candidates.size())) {
    throw std::invalid_argument("sample_index_subset: count out of range");
  }
  std::vector<std::uint32_t> pool(candidates.begin(), candidates.end());
  const std::uint64_t n = pool.size();
  for (int i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

KillCloneResult kill_and_clone(std::vector<Particle>& population, double z,
                               int kill_count, const ModelSpec& model,
                               const ImportanceSpec& importance,
                               std::uint64_t seed, std::uint32_t run,
                               RngStream& algo_rng, std::uint64_t& work,
                               bool permissive_parents) {
  const auto n = static_cast<std::uint32_t>(population.size());
  std::vector<std::uint32_t> at_or_below;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (population[j].score <= z) at_or_below.push_back(j);
  }
  if (static_cast<int>(at_or_below.size()) < kill_count) {
    throw std::invalid_argument(
        "kill_and_clone: fewer than kill_count scores at or below level");
  }

  KillCloneResult out;
  out.killed = sample_index_subset(at_or_below, kill_count, algo_rng);

  // Eligible parents, determined before any particle is replaced.
  std::vector<std::uint32_t> eligible;
  if (permissive_parents) {
    std::vector<char> is_killed(n, 0);
    for (auto j : out.killed) is_killed[j] = 1;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!is_killed[j] && population[j].score >= z) eligible.push_back(j);
    }
  } else {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (population[j].score > z) eligible.push_back(j);
    }
  }
  if (eligible.empty()) {
    out.extinct = true;
    return out;
  }

  out.parents.reserve(out.killed.size());
  for (auto slot : out.killed) {
    const std::uint32_t parent = eligible[algo_rng.below(eligible.size())];
    out.parents.push_back(parent);
    const Particle& src = population[parent];
    const int cross = first_crossing_index(importance, src.traj, z);

    Particle& dst = population[slot];
    const std::uint64_t branch = dst.branch + 1;
    RngStream stream(
        StreamId{seed, run, slot, branch, kDomainPath});
    Trajectory traj = resume_path(src.traj, cross, model, stream, work);
    dst.traj = std::move(traj);
    dst.score = trajectory_score(importance, dst.traj);
    dst.branch = branch;
  }
  return out;
}

double ams_estimate(double weight, std::span<const double> indicators) {
  if (indicators.empty()) {
    throw std::invalid_argument("ams_estimate: empty indicator set");
  }
  double sum = 0.0;
  for (double v : indicators) sum += v;
  return weight * (sum / static_cast<double>(indicators.size()));
}

AmsResult run_ams(const AmsConfig& cfg, const ModelSpec& model,
                  const ContractSpec& contract) {
  validate_model(model);
  validate_contract(contract);
  const bool multi = contract.kind == ContractKind::multi_asset_dispersion;
  if (multi != (model_assets(model) > 1)) {
    throw std::invalid_argument("ams: contract kind mismatches asset count");
  }
  if (cfg.n_particles < 2) {
    throw std::invalid_argument("ams: n_particles must be at least 2");
  }
  if (cfg.importance.contract != contract.kind ||
      cfg.importance.maturity != contract.maturity) {
    throw std::invalid_argument("ams: importance spec mismatches contract");
  }
  const int n = cfg.n_particles;
  const int kill = resolve_kill_count(cfg);
  const double l_max = std::isnan(cfg.l_max)
                           ? default_l_max(cfg.importance, contract)
                           : cfg.l_max;
  const int cap = cfg.max_iterations > 0 ? cfg.max_iterations
                                         : default_iteration_cap(n, kill);
  const double survive_ratio = static_cast<double>(n - kill) / n;
  const TimeGrid grid{contract.maturity, contract.steps};

  AmsResult res;
  std::vector<Particle> population;
  population.reserve(n);
  for (int j = 0; j < n; ++j) {
    Particle p;
    p.replica = static_cast<std::uint32_t>(j);
    p.branch = 0;
    RngStream stream(StreamId{cfg.seed, cfg.run, p.replica, 0, kDomainPath});
    p.traj = simulate_path(model, grid, stream, res.work);
    p.score = trajectory_score(cfg.importance, p.traj);
    population.push_back(std::move(p));
  }

  RngStream algo_rng(StreamId{cfg.seed, cfg.run, 0, 0, kDomainAlgo});
  std::vector<double> scores(n);
  double weight = 1.0;
  int q = 0;
  AmsTermination term = AmsTermination::iteration_cap;
  while (true) {
    for (int j = 0; j < n; ++j) scores[j] = population[j].score;
    const double z = select_level(scores, kill);
    res.level_history.push_back(z);
    if (z >= l_max) {
      term = AmsTermination::reached_l_max;
      break;
    }
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    if (*lo == *hi) {
      term = AmsTermination::degenerate_scores;
      break;
    }
    if (q >= cap) {
      term = AmsTermination::iteration_cap;
      break;
    }
    const KillCloneResult kc =
        kill_and_clone(population, z, kill, model, cfg.importance, cfg.seed,
                       cfg.run, algo_rng, res.work, cfg.permissive_parents);
    if (kc.extinct) {
      term = AmsTermination::extinction;
      break;
    }
    weight *= survive_ratio;
    ++q;
  }

  std::vector<double> indicators(n);
  for (int j = 0; j < n; ++j) {
    indicators[j] = payoff_indicator(contract, population[j].traj);
  }
  res.p_hat = ams_estimate(weight, indicators);
  res.q_iterations = q;
  res.final_weight = weight;
  res.termination = term;
  res.price = price_from_prob(res.p_hat, model_rate(model), contract.maturity);
  return res;
}

}  // namespace amsp
