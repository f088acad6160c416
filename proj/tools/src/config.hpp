#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hst/maps.hpp"
#include "hst/potential_spec.hpp"
#include "hst/symbolic.hpp"

namespace hst::cli {

using nlohmann::json;

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "pressure-curve", "phase-scan", "induce-stats", "gibbs", "admissible-check",
      "projective-check", "hyp-times", "entropy", "semiconjugacy-test", "kac-abramov"};
  return names;
}

struct Truncations {
  int K = 10;
  int L = 8;
  int n_max = 30;
  int depth = 12;
};

struct TGrid {
  double min = -1.0;
  double max = 2.0;
  int steps = 61;
  std::vector<double> values() const;
};

struct RunConfig {
  std::string experiment;
  maps::MapParams map_params = maps::MapParams::standard();
  symbolic::InducingParams inducing;
  json potential = json{{"kind", "central"}, {"t", 1.0}};
  Truncations truncations;
  TGrid t_grid;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  json resolved() const;
};

// Parses and validates; throws ConfigError naming the field (and line when known).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Builds a potential from its declarative description.
potentials::PotentialSpec build_potential(const json& desc, const maps::MapParams& params);

}  // namespace hst::cli
