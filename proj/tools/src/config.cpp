#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/measures.hpp"
#include "hst/potentials.hpp"

namespace hst::cli {

namespace {

// Text of the config currently being parsed, for line diagnostics.
thread_local const std::string* g_text = nullptr;

int line_of_key(const std::string& key) {
  if (!g_text) return 0;
  const std::string needle = "\"" + key + "\"";
  const auto pos = g_text->find(needle);
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(g_text->begin(), g_text->begin() + static_cast<long>(pos), '\n'));
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  const auto dot = path.find_last_of('.');
  const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
  const int line = line_of_key(key);
  std::string where = "field '" + path + "'";
  if (line > 0) where = "line " + std::to_string(line) + ", " + where;
  throw ConfigError(where + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) fail(path.empty() ? k : path + "." + k, "unknown key");
  }
}

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

double get_number(const json& obj, const std::string& path, const std::string& key, double def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(join(path, key), "must be finite");
  return d;
}

long long get_int(const json& obj, const std::string& path, const std::string& key, long long def,
                  long long lo, long long hi) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    fail(join(path, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

potentials::PotentialSpec build(const json& d, const std::string& path, const maps::MapParams& params) {
  if (!d.is_object()) fail(path, "expected an object");
  if (!d.contains("kind") || !d.at("kind").is_string()) fail(join(path, "kind"), "missing potential kind");
  const std::string kind = d.at("kind").get<std::string>();
  try {
    if (kind == "central") {
      check_keys(d, path, {"kind", "t"});
      return potentials::central_potential(params, get_number(d, path, "t", 1.0));
    }
    if (kind == "constant") {
      check_keys(d, path, {"kind", "c"});
      return potentials::constant_potential(get_number(d, path, "c", 0.0));
    }
    if (kind == "region") {
      check_keys(d, path, {"kind", "a0", "a1"});
      return potentials::region_potential(get_number(d, path, "a0", 0.0), get_number(d, path, "a1", 0.0));
    }
    if (kind == "example") {
      check_keys(d, path, {"kind", "c0", "peak", "floor", "xi", "t"});
      const auto base = potentials::example_potential(
          get_number(d, path, "c0", 0.84), get_number(d, path, "peak", 0.0),
          get_number(d, path, "floor", -1.0), get_number(d, path, "xi", 1.0));
      return potentials::scaled(base, get_number(d, path, "t", 1.0));
    }
    if (kind == "projective") {
      check_keys(d, path, {"kind", "A", "eps"});
      const double A = get_number(d, path, "A", 0.6), eps = get_number(d, path, "eps", 0.05);
      if (!(eps > 0.0)) fail(join(path, "eps"), "must be positive");
      const auto u = potentials::make_potential([A](const maps::Point3& p) { return A * p.y; }, 1.0,
                                                std::abs(A), "u", false);
      const auto v = potentials::shifted(u, eps);
      return potentials::projective_example(u, v, params).phi;
    }
    if (kind == "coboundary-shift") {
      check_keys(d, path, {"kind", "base", "t", "dynamics"});
      if (!d.contains("base")) fail(join(path, "base"), "missing base potential");
      const auto base = build(d.at("base"), join(path, "base"), params);
      std::string dyn = "F_inv";
      if (d.contains("dynamics")) {
        if (!d.at("dynamics").is_string()) fail(join(path, "dynamics"), "expected \"F_inv\" or \"G\"");
        dyn = d.at("dynamics").get<std::string>();
      }
      if (dyn != "F_inv" && dyn != "G") fail(join(path, "dynamics"), "expected \"F_inv\" or \"G\"");
      return potentials::cohomology_shift(base, get_number(d, path, "t", 0.5),
                                          dyn == "G" ? potentials::Dynamics::G : potentials::Dynamics::F_inv,
                                          params);
    }
    if (kind == "distance-weight") {
      check_keys(d, path, {"kind", "base", "t", "cloud_period"});
      if (!d.contains("base")) fail(join(path, "base"), "missing base potential");
      const auto base = build(d.at("base"), join(path, "base"), params);
      const int p = static_cast<int>(get_int(d, path, "cloud_period", 4, 1, 12));
      std::vector<maps::Point3> cloud;
      for (int q = 1; q <= p; ++q)
        for (const auto& c : measures::primitive_cycles(q))
          for (const auto& pt : measures::periodic_orbit(c, params)) cloud.push_back(pt);
      return potentials::distance_weight(base, cloud, get_number(d, path, "t", 0.0));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(join(path, "kind"), "unknown potential kind '" + kind + "'");
}

}  // namespace

std::vector<double> TGrid::values() const {
  std::vector<double> v;
  for (int i = 0; i < steps; ++i) v.push_back(min + (max - min) * i / (steps - 1));
  return v;
}

json RunConfig::resolved() const {
  return json{
      {"experiment", experiment},
      {"map_params",
       {{"lambda0", map_params.lambda0}, {"beta0", map_params.beta0}, {"sigma", map_params.sigma},
        {"beta1", map_params.beta1}}},
      {"inducing", {{"alpha", inducing.alpha}, {"tau", inducing.tau}}},
      {"potential", potential},
      {"truncations",
       {{"K", truncations.K}, {"L", truncations.L}, {"n_max", truncations.n_max}, {"depth", truncations.depth}}},
      {"t_grid", {{"min", t_grid.min}, {"max", t_grid.max}, {"steps", t_grid.steps}}},
      {"seed", seed},
      {"output_dir", output_dir},
  };
}

RunConfig parse_config(const std::string& text) {
  g_text = &text;
  struct Reset {
    ~Reset() { g_text = nullptr; }
  } reset;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    throw ConfigError("line " + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  check_keys(j, "", {"experiment", "map_params", "inducing", "potential", "truncations", "t_grid", "seed",
                     "output_dir"});
  RunConfig c;
  if (!j.contains("experiment") || !j.at("experiment").is_string()) fail("experiment", "missing experiment name");
  c.experiment = j.at("experiment").get<std::string>();
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    fail("experiment", "unknown experiment '" + c.experiment + "'");

  if (j.contains("map_params")) {
    const auto& m = j.at("map_params");
    check_keys(m, "map_params", {"lambda0", "beta0", "sigma", "beta1"});
    c.map_params.lambda0 = get_number(m, "map_params", "lambda0", c.map_params.lambda0);
    c.map_params.beta0 = get_number(m, "map_params", "beta0", c.map_params.beta0);
    c.map_params.sigma = get_number(m, "map_params", "sigma", c.map_params.sigma);
    c.map_params.beta1 = get_number(m, "map_params", "beta1", c.map_params.beta1);
    try {
      c.map_params.validate();
    } catch (const RangeError& e) {
      fail("map_params", e.what());
    }
  }
  if (j.contains("inducing")) {
    const auto& m = j.at("inducing");
    check_keys(m, "inducing", {"alpha", "tau"});
    c.inducing.alpha = get_number(m, "inducing", "alpha", c.inducing.alpha);
    c.inducing.tau = get_number(m, "inducing", "tau", c.inducing.tau);
    try {
      c.inducing.validate();
    } catch (const RangeError& e) {
      fail("inducing", e.what());
    }
  }
  if (j.contains("truncations")) {
    const auto& m = j.at("truncations");
    check_keys(m, "truncations", {"K", "L", "n_max", "depth"});
    c.truncations.K = static_cast<int>(get_int(m, "truncations", "K", c.truncations.K, 3, symbolic::kDefaultEnumerationCap));
    c.truncations.L = static_cast<int>(get_int(m, "truncations", "L", c.truncations.L, 2, 12));
    c.truncations.n_max = static_cast<int>(get_int(m, "truncations", "n_max", c.truncations.n_max, 10, 100000));
    c.truncations.depth = static_cast<int>(get_int(m, "truncations", "depth", c.truncations.depth, 1, 64));
  }
  if (j.contains("t_grid")) {
    const auto& m = j.at("t_grid");
    check_keys(m, "t_grid", {"min", "max", "steps"});
    c.t_grid.min = get_number(m, "t_grid", "min", c.t_grid.min);
    c.t_grid.max = get_number(m, "t_grid", "max", c.t_grid.max);
    c.t_grid.steps = static_cast<int>(get_int(m, "t_grid", "steps", c.t_grid.steps, 2, 10000));
    if (!(c.t_grid.min < c.t_grid.max)) fail("t_grid.max", "must exceed t_grid.min");
  }
  c.seed = static_cast<std::uint64_t>(get_int(j, "", "seed", 1, 0, std::numeric_limits<long long>::max()));
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("potential")) c.potential = j.at("potential");
  build(c.potential, "potential", c.map_params);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

potentials::PotentialSpec build_potential(const json& desc, const maps::MapParams& params) {
  return build(desc, "potential", params);
}

}  // namespace hst::cli
