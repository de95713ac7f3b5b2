#pragma once

#include <map>
#include <string>

#include "amsp/bench.hpp"

namespace amsp {

// Parsed key/value configuration: section name -> (key -> raw value).
using KvMap = std::map<std::string, std::string>;
using Sections = std::map<std::string, KvMap>;

// INI-style text: [section] headers, key = value lines, # or ;
// comments, blank lines ignored.  Later duplicates overwrite earlier
// ones, which is also how command-line overrides are applied.
Sections parse_ini(const std::string& text);
Sections load_ini_file(const std::string& path);

struct ExperimentFile {
  ExperimentSpec spec;
  ReportFormat format = ReportFormat::csv;
  std::string out = "-";
};

// Builds a validated experiment from the [model], [contract], [method],
// [replication] and [output] sections, filling defaults for anything
// absent.
ExperimentFile build_experiment(const Sections& sections);

// Name <-> enum helpers shared by the config file and the CLI.
ContractKind parse_contract_kind(const std::string& name);
const char* contract_kind_name(ContractKind kind);
ImportanceFamily parse_importance_family(const std::string& name);
const char* importance_family_name(ImportanceFamily family);
HestonScheme parse_heston_scheme(const std::string& name);

// Experiment-setup defaults: rate 0.03, volatility 0.2, unit spot;
// Heston kappa 2, theta 0.04, vol-of-vol 0.3, rho -0.5, v0 0.04;
// three correlated assets at pairwise correlation 0.2.
BsParams default_bs();
HestonDynamics default_heston();
MultiGbmParams default_multi_gbm(int n_assets = 3, double corr = 0.2);

}  // namespace amsp
