#include "amsp/config.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace amsp {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::string* find(const Sections& s, const std::string& section,
                        const std::string& key) {
  auto sit = s.find(section);
  if (sit == s.end()) return nullptr;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

std::string get_string(const Sections& s, const std::string& section,
                       const std::string& key, const std::string& fallback) {
  const std::string* v = find(s, section, key);
  return v ? *v : fallback;
}

double parse_double(const std::string& raw, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + where + ": '" +
                                raw + "'");
  }
}

std::int64_t parse_int(const std::string& raw, const std::string& where) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + where + ": '" +
                                raw + "'");
  }
}

double get_double(const Sections& s, const std::string& section,
                  const std::string& key, double fallback) {
  const std::string* v = find(s, section, key);
  return v ? parse_double(*v, section + "." + key) : fallback;
}

std::int64_t get_int(const Sections& s, const std::string& section,
                     const std::string& key, std::int64_t fallback) {
  const std::string* v = find(s, section, key);
  return v ? parse_int(*v, section + "." + key) : fallback;
}

bool get_bool(const Sections& s, const std::string& section,
              const std::string& key, bool fallback) {
  const std::string* v = find(s, section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + section + "." +
                              key + ": '" + *v + "'");
}

std::vector<double> parse_double_list(const std::string& raw,
                                      const std::string& where) {
  std::vector<double> out;
  std::istringstream in(raw);
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok, where));
  if (out.empty()) {
    throw std::invalid_argument("config: empty list for " + where);
  }
  return out;
}

ModelSpec build_model(const Sections& s) {
  const std::string type = get_string(s, "model", "type", "bs");
  if (type == "bs") {
    BsParams p = default_bs();
    p.r = get_double(s, "model", "r", p.r);
    p.sigma = get_double(s, "model", "sigma", p.sigma);
    p.s0 = get_double(s, "model", "s0", p.s0);
    return p;
  }
  if (type == "heston") {
    HestonDynamics d = default_heston();
    HestonParams& p = d.params;
    p.r = get_double(s, "model", "r", p.r);
    p.kappa = get_double(s, "model", "kappa", p.kappa);
    p.theta = get_double(s, "model", "theta", p.theta);
    p.psi_vov = get_double(s, "model", "psi_vov", p.psi_vov);
    p.rho = get_double(s, "model", "rho", p.rho);
    p.v0 = get_double(s, "model", "v0", p.v0);
    p.s0 = get_double(s, "model", "s0", p.s0);
    d.scheme = parse_heston_scheme(get_string(s, "model", "scheme", "qe"));
    return d;
  }
  if (type == "multi-gbm") {
    const int n = static_cast<int>(get_int(s, "model", "n_assets", 3));
    const double corr = get_double(s, "model", "corr", 0.2);
    MultiGbmParams p = default_multi_gbm(n, corr);
    p.r = get_double(s, "model", "r", p.r);
    if (const std::string* v = find(s, "model", "sigma")) {
      std::vector<double> sig = parse_double_list(*v, "model.sigma");
      if (sig.size() == 1) sig.assign(p.n_assets(), sig[0]);
      p.sigma = std::move(sig);
    }
    if (const std::string* v = find(s, "model", "s0")) {
      std::vector<double> s0 = parse_double_list(*v, "model.s0");
      if (s0.size() == 1) s0.assign(p.n_assets(), s0[0]);
      p.s0 = std::move(s0);
    }
    return p;
  }
  throw std::invalid_argument("config: unknown model type '" + type + "'");
}

ContractSpec build_contract(const Sections& s) {
  ContractSpec c;
  c.kind = parse_contract_kind(get_string(s, "contract", "kind",
                                          "digital-call"));
  c.strike = get_double(s, "contract", "strike", 0.0);
  c.barrier = get_double(s, "contract", "barrier", 0.0);
  c.dispersion = get_double(s, "contract", "dispersion", 0.0);
  c.average_level = get_double(s, "contract", "average_level", 0.0);
  c.maturity = get_double(s, "contract", "maturity", 1.0);
  c.steps = static_cast<int>(get_int(s, "contract", "steps", 250));
  if (uses_strike(c.kind) && !(c.strike > 0.0)) {
    throw std::invalid_argument("config: contract kind '" +
                                std::string(contract_kind_name(c.kind)) +
                                "' needs contract.strike > 0");
  }
  if (uses_barrier(c.kind) && !(c.barrier > 0.0)) {
    throw std::invalid_argument("config: contract kind '" +
                                std::string(contract_kind_name(c.kind)) +
                                "' needs contract.barrier > 0");
  }
  if (c.kind == ContractKind::multi_asset_dispersion &&
      (!(c.dispersion > 0.0) || !(c.average_level > 0.0))) {
    throw std::invalid_argument(
        "config: multi-dispersion needs contract.dispersion and "
        "contract.average_level > 0");
  }
  validate_contract(c);
  return c;
}

}  // namespace

Sections parse_ini(const std::string& text) {
  Sections out;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw std::invalid_argument("config: malformed section at line " +
                                    std::to_string(lineno));
      }
      section = trim(t.substr(1, t.size() - 2));
      out[section];
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config: empty key at line " +
                                  std::to_string(lineno));
    }
    if (section.empty()) {
      throw std::invalid_argument("config: key outside any section at line " +
                                  std::to_string(lineno));
    }
    out[section][key] = value;
  }
  return out;
}

Sections load_ini_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ini(buf.str());
}

ExperimentFile build_experiment(const Sections& s) {
  ExperimentFile file;
  ExperimentSpec& spec = file.spec;

  spec.model = build_model(s);
  validate_model(spec.model);
  spec.contract = build_contract(s);
  spec.method = parse_method(get_string(s, "method", "name", "ams"));

  const bool multi =
      spec.contract.kind == ContractKind::multi_asset_dispersion;
  if (multi != (model_assets(spec.model) > 1)) {
    throw std::invalid_argument(
        "config: multi-dispersion pairs with multi-gbm and single-asset "
        "contracts with single-asset models");
  }

  switch (spec.method) {
    case Method::ams: {
      AmsConfig& a = spec.ams;
      a.n_particles = static_cast<int>(get_int(s, "method", "n", 50000));
      a.kill_count = static_cast<int>(get_int(s, "method", "kill_count", 0));
      a.discard_fraction = get_double(s, "method", "k", 0.45);
      const std::string fam =
          get_string(s, "method", "importance",
                     multi ? "multi-sum" : "path");
      std::optional<double> sigma_override;
      if (const std::string* v = find(s, "method", "sigma_override")) {
        sigma_override = parse_double(*v, "method.sigma_override");
      }
      a.importance = make_importance(parse_importance_family(fam),
                                     spec.contract, spec.model,
                                     sigma_override);
      if (const std::string* v = find(s, "method", "lmax")) {
        a.l_max = parse_double(*v, "method.lmax");
      }
      a.max_iterations =
          static_cast<int>(get_int(s, "method", "max_iterations", 0));
      a.permissive_parents =
          get_bool(s, "method", "permissive_parents", false);
      break;
    }
    case Method::mc:
    case Method::mca: {
      spec.n_paths =
          static_cast<std::uint64_t>(get_int(s, "method", "n", 1000000));
      break;
    }
    case Method::mlmc: {
      MlmcConfig& m = spec.mlmc;
      m.refine = static_cast<int>(get_int(s, "method", "refine", 2));
      m.levels = static_cast<int>(get_int(s, "method", "levels", 4));
      std::int64_t coarse = get_int(s, "method", "coarse_steps", 0);
      if (coarse == 0) {
        std::int64_t span = 1;
        for (int l = 1; l < m.levels; ++l) span *= m.refine;
        if (spec.contract.steps % span != 0) {
          throw std::invalid_argument(
              "config: contract.steps is not divisible by "
              "refine^(levels-1); set method.coarse_steps explicitly");
        }
        coarse = spec.contract.steps / span;
      }
      m.coarse_steps = static_cast<int>(coarse);
      m.eps_rel = get_double(s, "method", "eps_rel", 0.1);
      if (const std::string* v = find(s, "method", "fixed_samples")) {
        m.eps_rel = get_double(s, "method", "eps_rel", 0.0);
        for (double x : parse_double_list(*v, "method.fixed_samples")) {
          m.fixed_samples.push_back(static_cast<std::uint64_t>(x));
        }
      }
      m.pilot = static_cast<std::uint64_t>(get_int(s, "method", "pilot", 1000));
      m.coupled = get_bool(s, "method", "coupled", true);
      break;
    }
  }

  const std::uint64_t base_seed =
      static_cast<std::uint64_t>(get_int(s, "replication", "seed", 12345));
  const int n_seeds = static_cast<int>(get_int(s, "replication", "seeds", 5));
  const int runs = static_cast<int>(get_int(s, "replication", "runs", 10));
  spec.replication = make_replication(base_seed, n_seeds, runs);

  std::string default_name = std::string(method_name(spec.method)) + "-" +
                             contract_kind_name(spec.contract.kind);
  spec.name = get_string(s, "output", "name", default_name);
  file.format = parse_report_format(get_string(s, "output", "format", "csv"));
  file.out = get_string(s, "output", "out", "-");
  return file;
}

ContractKind parse_contract_kind(const std::string& name) {
  if (name == "digital-call") return ContractKind::digital_call;
  if (name == "digital-put") return ContractKind::digital_put;
  if (name == "asian-call") return ContractKind::asian_digital_call;
  if (name == "asian-put") return ContractKind::asian_digital_put;
  if (name == "barrier-up-in-call") return ContractKind::barrier_up_in_call;
  if (name == "barrier-up-in-put") return ContractKind::barrier_up_in_put;
  if (name == "multi-dispersion") return ContractKind::multi_asset_dispersion;
  throw std::invalid_argument("unknown contract kind: " + name);
}

const char* contract_kind_name(ContractKind kind) {
  switch (kind) {
    case ContractKind::digital_call:
      return "digital-call";
    case ContractKind::digital_put:
      return "digital-put";
    case ContractKind::asian_digital_call:
      return "asian-call";
    case ContractKind::asian_digital_put:
      return "asian-put";
    case ContractKind::barrier_up_in_call:
      return "barrier-up-in-call";
    case ContractKind::barrier_up_in_put:
      return "barrier-up-in-put";
    case ContractKind::multi_asset_dispersion:
      return "multi-dispersion";
  }
  return "?";
}

ImportanceFamily parse_importance_family(const std::string& name) {
  if (name == "path") return ImportanceFamily::path_based;
  if (name == "bs-analytic") return ImportanceFamily::bs_analytic;
  if (name == "multi-sum") return ImportanceFamily::multi_asset_sum;
  throw std::invalid_argument("unknown importance family: " + name);
}

const char* importance_family_name(ImportanceFamily family) {
  switch (family) {
    case ImportanceFamily::path_based:
      return "path";
    case ImportanceFamily::bs_analytic:
      return "bs-analytic";
    case ImportanceFamily::multi_asset_sum:
      return "multi-sum";
  }
  return "?";
}

HestonScheme parse_heston_scheme(const std::string& name) {
  if (name == "qe") return HestonScheme::qe;
  if (name == "euler") return HestonScheme::euler;
  if (name == "milstein") return HestonScheme::milstein;
  throw std::invalid_argument("unknown heston scheme: " + name);
}

BsParams default_bs() { return BsParams{0.03, 0.2, 1.0}; }

HestonDynamics default_heston() {
  HestonDynamics d;
  d.params = HestonParams{0.03, 2.0, 0.04, 0.3, -0.5, 0.04, 1.0};
  d.scheme = HestonScheme::qe;
  return d;
}

MultiGbmParams default_multi_gbm(int n_assets, double corr) {
  if (n_assets < 2) {
    throw std::invalid_argument("multi-gbm needs at least 2 assets");
  }
  MultiGbmParams p;
  p.r = 0.03;
  p.sigma.assign(n_assets, 0.2);
  p.s0.assign(n_assets, 1.0);
  p.corr.assign(static_cast<std::size_t>(n_assets) * n_assets, corr);
  for (int i = 0; i < n_assets; ++i) {
    p.corr[static_cast<std::size_t>(i) * n_assets + i] = 1.0;
  }
  return p;
}

}  // namespace amsp
