#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace pccu {

using nlohmann::json;

struct Domain {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 0.0;
};

struct BcSpec {
  std::string left = "free", right = "free";
  std::string bottom = "free", top = "free";
};

/// One painted region of a piecewise-constant initial condition. Later
/// regions overwrite earlier ones.
struct Region {
  json shape;
  json state;
};

struct InitialSpec {
  std::string id;  // named initial condition, or empty when regions are used
  std::vector<Region> regions;
};

struct CoriolisSpec {
  double f0 = 0.0;
  double beta = 0.0;
};

struct OutputSpec {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv"};  // csv, slice_diag, slice_y0, schlieren
};

/// Everything needed to reproduce a run. The catalog entries are
/// instances of this struct; config files are its JSON form.
struct RunConfig {
  std::string name = "custom";
  std::string model = "multifluid";  // multifluid | trsw | advection
  int dimension = 1;
  std::string scheme = "lcd";  // pccu | lcd | both
  std::optional<std::string> reconstruction;
  Domain domain;
  int nx = 100, ny = 1;
  double theta = 1.3;
  double cfl = 0.45;
  double eps0 = 1e-18;
  double t_final = 0.0;
  std::vector<double> snapshots;
  BcSpec bc;
  InitialSpec ic;
  std::string topography = "flat";
  CoriolisSpec coriolis;
  std::vector<double> advection_speed = {1.0, 0.0};
  OutputSpec output;

  std::vector<std::string> schemes() const {
    if (scheme == "both") return {"pccu", "lcd"};
    return {scheme};
  }

  void validate() const {
    static const std::set<std::string> models = {"multifluid", "trsw", "advection"};
    if (!models.count(model)) throw ConfigError("unknown model '" + model + "'");
    if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
    if (model == "advection" && dimension != 1)
      throw ConfigError("the advection model is 1-D only");
    if (scheme != "pccu" && scheme != "lcd" && scheme != "both")
      throw ConfigError("scheme must be pccu, lcd or both");
    if (reconstruction && *reconstruction != "conservative" && *reconstruction != "equilibrium")
      throw ConfigError("reconstruction must be conservative or equilibrium");
    if (nx < 4) throw ConfigError("nx must be >= 4");
    if (dimension == 2 && ny < 4) throw ConfigError("ny must be >= 4");
    if (!(domain.x_max > domain.x_min)) throw ConfigError("domain x_max must exceed x_min");
    if (dimension == 2 && !(domain.y_max > domain.y_min))
      throw ConfigError("domain y_max must exceed y_min");
    if (!(theta >= 1.0 && theta <= 2.0)) throw ConfigError("theta must lie in [1, 2]");
    if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
    if (!(eps0 > 0.0)) throw ConfigError("eps0 must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");
    for (double s : snapshots)
      if (!(s >= 0.0 && s <= t_final)) throw ConfigError("snapshot times must lie in [0, t_final]");
    if (ic.id.empty() && ic.regions.empty())
      throw ConfigError("initial condition needs an id or at least one region");
    static const std::set<std::string> formats = {"csv", "slice_diag", "slice_y0", "schlieren"};
    for (const auto& f : output.formats)
      if (!formats.count(f)) throw ConfigError("unknown output format '" + f + "'");
    if (advection_speed.size() != 2) throw ConfigError("advection_speed needs two entries");
  }
};

namespace detail {

inline void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

inline json to_json(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["model"] = c.model;
  j["dimension"] = c.dimension;
  j["scheme"] = c.scheme;
  if (c.reconstruction) j["reconstruction"] = *c.reconstruction;
  j["domain"] = {{"x_min", c.domain.x_min}, {"x_max", c.domain.x_max}};
  if (c.dimension == 2) {
    j["domain"]["y_min"] = c.domain.y_min;
    j["domain"]["y_max"] = c.domain.y_max;
  }
  j["nx"] = c.nx;
  j["ny"] = c.ny;
  j["theta"] = c.theta;
  j["cfl"] = c.cfl;
  j["eps0"] = c.eps0;
  j["t_final"] = c.t_final;
  j["snapshots"] = c.snapshots;
  j["bc"] = {{"left", c.bc.left}, {"right", c.bc.right}, {"bottom", c.bc.bottom}, {"top", c.bc.top}};
  json ic = json::object();
  if (!c.ic.id.empty()) ic["id"] = c.ic.id;
  if (!c.ic.regions.empty()) {
    ic["regions"] = json::array();
    for (const auto& r : c.ic.regions) ic["regions"].push_back({{"shape", r.shape}, {"state", r.state}});
  }
  j["ic"] = ic;
  j["topography"] = c.topography;
  j["coriolis"] = {{"f0", c.coriolis.f0}, {"beta", c.coriolis.beta}};
  j["advection_speed"] = c.advection_speed;
  j["output"] = {{"dir", c.output.dir}, {"formats", c.output.formats}};
  return j;
}

inline RunConfig config_from_json(const json& j) {
  detail::reject_unknown_keys(j,
                              {"name", "model", "dimension", "scheme", "reconstruction", "domain",
                               "nx", "ny", "theta", "cfl", "eps0", "t_final", "snapshots", "bc",
                               "ic", "topography", "coriolis", "advection_speed", "output"},
                              "config");
  RunConfig c;
  try {
    detail::read_opt(j, "name", c.name);
    detail::read_opt(j, "model", c.model);
    detail::read_opt(j, "dimension", c.dimension);
    detail::read_opt(j, "scheme", c.scheme);
    if (j.contains("reconstruction")) c.reconstruction = j.at("reconstruction").get<std::string>();
    if (j.contains("domain")) {
      const json& d = j.at("domain");
      detail::reject_unknown_keys(d, {"x_min", "x_max", "y_min", "y_max"}, "domain");
      detail::read_opt(d, "x_min", c.domain.x_min);
      detail::read_opt(d, "x_max", c.domain.x_max);
      detail::read_opt(d, "y_min", c.domain.y_min);
      detail::read_opt(d, "y_max", c.domain.y_max);
    }
    detail::read_opt(j, "nx", c.nx);
    detail::read_opt(j, "ny", c.ny);
    detail::read_opt(j, "theta", c.theta);
    detail::read_opt(j, "cfl", c.cfl);
    detail::read_opt(j, "eps0", c.eps0);
    detail::read_opt(j, "t_final", c.t_final);
    detail::read_opt(j, "snapshots", c.snapshots);
    if (j.contains("bc")) {
      const json& b = j.at("bc");
      detail::reject_unknown_keys(b, {"left", "right", "bottom", "top"}, "bc");
      detail::read_opt(b, "left", c.bc.left);
      detail::read_opt(b, "right", c.bc.right);
      detail::read_opt(b, "bottom", c.bc.bottom);
      detail::read_opt(b, "top", c.bc.top);
    }
    if (j.contains("ic")) {
      const json& ic = j.at("ic");
      detail::reject_unknown_keys(ic, {"id", "regions"}, "ic");
      detail::read_opt(ic, "id", c.ic.id);
      if (ic.contains("regions")) {
        for (const json& r : ic.at("regions")) {
          detail::reject_unknown_keys(r, {"shape", "state"}, "ic region");
          c.ic.regions.push_back({r.at("shape"), r.at("state")});
        }
      }
    }
    detail::read_opt(j, "topography", c.topography);
    if (j.contains("coriolis")) {
      const json& f = j.at("coriolis");
      detail::reject_unknown_keys(f, {"f0", "beta"}, "coriolis");
      detail::read_opt(f, "f0", c.coriolis.f0);
      detail::read_opt(f, "beta", c.coriolis.beta);
    }
    detail::read_opt(j, "advection_speed", c.advection_speed);
    if (j.contains("output")) {
      const json& o = j.at("output");
      detail::reject_unknown_keys(o, {"dir", "formats"}, "output");
      detail::read_opt(o, "dir", c.output.dir);
      detail::read_opt(o, "formats", c.output.formats);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (c.dimension == 1) c.ny = 1;
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace pccu
