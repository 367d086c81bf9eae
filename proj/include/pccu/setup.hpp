#pragma once

#include <cmath>
#include <map>
#include <set>
#include <numbers>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "models/advection.hpp"
#include "models/multifluid.hpp"
#include "models/trsw.hpp"

namespace pccu {

/// Topographies and Coriolis setups referenced by config files.
inline Bathymetry make_bathymetry(const std::string& id, const CoriolisSpec& coriolis) {
  Bathymetry b;
  b.f0 = coriolis.f0;
  b.beta = coriolis.beta;
  if (id == "flat") return b;
  if (id == "ex7_bumps") {
    // Two cosine bumps along the 1-D coordinate (stored as y).
    b.topography = [](double, double y) {
      const double pi = std::numbers::pi;
      if (y >= -0.4 && y <= -0.2) return std::cos(10.0 * pi * (y + 0.3)) + 1.0;
      if (y >= 0.2 && y <= 0.4) return 0.5 * (std::cos(10.0 * pi * (y - 0.3)) + 1.0);
      return 0.0;
    };
    return b;
  }
  if (id == "ex8_humps") {
    b.topography = [](double x, double y) {
      if (x < 0.0) return 0.5 * std::exp(-100.0 * ((x + 0.5) * (x + 0.5) + (y + 0.5) * (y + 0.5)));
      return 0.6 * std::exp(-100.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
    };
    return b;
  }
  throw ConfigError("unknown topography '" + id + "'");
}

namespace setup_detail {

inline double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

inline double required(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ConfigError(what + " state needs '" + key + "'");
  return num(j, key, 0.0);
}

inline double axis_value(const json& shape, double x, double y) {
  const std::string axis = shape.value("axis", std::string("x"));
  if (axis == "x") return x;
  if (axis == "y") return y;
  throw ConfigError("axis must be x or y");
}

}  // namespace setup_detail

inline void validate_shape(const json& shape) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"all", {}},
      {"interval", {"axis", "min", "max"}},
      {"half_plane", {"axis", "greater_than", "less_than"}},
      {"disk", {"center", "radius"}},
      {"annulus", {"center", "r_min", "r_max"}},
      {"box", {"x", "y"}}};
  if (!shape.is_object() || !shape.contains("type") || !shape.at("type").is_string())
    throw ConfigError("region shape needs a string 'type'");
  const auto it = keys.find(shape.at("type").get<std::string>());
  if (it == keys.end()) throw ConfigError("unknown region shape '" + shape.at("type").get<std::string>() + "'");
  for (auto k = shape.begin(); k != shape.end(); ++k)
    if (k.key() != "type" && !it->second.count(k.key()))
      throw ConfigError("unknown key '" + k.key() + "' in " + it->first + " shape");
}

/// Region shapes: all, interval (along the first coordinate), half_plane,
/// disk, annulus, box. Boundaries are exclusive.
inline bool shape_contains(const json& shape, double x, double y) {
  using setup_detail::num;
  const std::string type = shape.value("type", std::string());
  if (type == "all") return true;
  if (type == "interval") {
    const double s = setup_detail::axis_value(shape, x, y);
    return s > num(shape, "min", -INFINITY) && s < num(shape, "max", INFINITY);
  }
  if (type == "half_plane") {
    const double s = setup_detail::axis_value(shape, x, y);
    if (shape.contains("greater_than")) return s > num(shape, "greater_than", 0.0);
    if (shape.contains("less_than")) return s < num(shape, "less_than", 0.0);
    throw ConfigError("half_plane needs greater_than or less_than");
  }
  if (type == "disk" || type == "annulus") {
    const json c = shape.value("center", json::array({0.0, 0.0}));
    if (!c.is_array() || c.size() != 2) throw ConfigError("center must be [x, y]");
    const double dx = x - c[0].get<double>(), dy = y - c[1].get<double>();
    const double r2 = dx * dx + dy * dy;
    if (type == "disk") {
      const double r = num(shape, "radius", 0.0);
      return r2 < r * r;
    }
    const double r0 = num(shape, "r_min", 0.0), r1 = num(shape, "r_max", 0.0);
    return r2 > r0 * r0 && r2 < r1 * r1;
  }
  if (type == "box") {
    const json bx = shape.at("x"), by = shape.value("y", json::array({-INFINITY, INFINITY}));
    return x > bx[0].get<double>() && x < bx[1].get<double>() && y > by[0].get<double>() &&
           y < by[1].get<double>();
  }
  throw ConfigError("unknown region shape '" + type + "'");
}

template <int Dim>
State<Dim + 4> state_from_json(const Multifluid<Dim>& model, const json& s, double, double,
                               const Bathymetry&) {
  using setup_detail::num;
  MultifluidPrimitive w;
  w.rho = setup_detail::required(s, "rho", "multifluid");
  w.u = num(s, "u", 0.0);
  w.v = num(s, "v", 0.0);
  w.p = setup_detail::required(s, "p", "multifluid");
  w.gamma = setup_detail::required(s, "gamma", "multifluid");
  w.pi_inf = num(s, "pi_inf", 0.0);
  if (!(w.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  return model.conservative(w);
}

template <int Dim>
State<4> state_from_json(const Trsw<Dim>& model, const json& s, double x, double y,
                         const Bathymetry& bathy) {
  using setup_detail::num;
  TrswPrimitive w;
  if (s.contains("surface")) {
    const double z = Dim == 1 ? bathy.z(0.0, x) : bathy.z(x, y);
    w.h = num(s, "surface", 0.0) - z;
  } else {
    w.h = setup_detail::required(s, "h", "shallow water");
  }
  w.u = num(s, "u", 0.0);
  w.v = num(s, "v", 0.0);
  w.b = setup_detail::required(s, "b", "shallow water");
  return model.conservative(w);
}

inline State<1> state_from_json(const Advection&, const json& s, double, double, const Bathymetry&) {
  return {setup_detail::required(s, "u", "advection")};
}

template <int Dim>
State<Dim + 4> named_state(const Multifluid<Dim>& model, const std::string& id, double x, double) {
  if (id == "entropy_wave") {
    // Smooth single-fluid density wave advected at constant u and p.
    MultifluidPrimitive w{1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x), 1.0, 0.0, 1.0, 1.4, 0.0};
    return model.conservative(w);
  }
  if (id == "isentropic_wave") {
    // Smooth compression wave at rest, p = rho^gamma; steepens into shocks near t = 1.
    const double rho = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x);
    return model.conservative({rho, 0.0, 0.0, std::pow(rho, 1.4), 1.4, 0.0});
  }
  throw ConfigError("unknown initial condition '" + id + "' for the multifluid model");
}

template <int Dim>
State<4> named_state(const Trsw<Dim>& model, const std::string& id, double x, double y) {
  if (id == "ex10_anomaly") {
    const double b = 1.0 + 0.5 * std::exp(-(x * x / 50.0 + y * y / 2.0));
    return model.conservative({1.0, 0.0, 0.0, b});
  }
  throw ConfigError("unknown initial condition '" + id + "' for the shallow water model");
}

inline State<1> named_state(const Advection&, const std::string& id, double x, double) {
  if (id == "sine") return {std::sin(2.0 * std::numbers::pi * x)};
  throw ConfigError("unknown initial condition '" + id + "' for the advection model");
}

/// Cell-center sampling of the configured initial condition.
template <class Model>
Field<Model::ncomp> build_initial_field(const Model& model, const RunConfig& cfg, const Grid& grid,
                                        const Bathymetry& bathy) {
  constexpr int D = Model::ncomp;
  if (!cfg.ic.id.empty() && !cfg.ic.regions.empty())
    throw ConfigError("initial condition takes either an id or regions, not both");
  std::function<State<D>(double, double)> f;
  if (!cfg.ic.id.empty()) {
    f = [&](double x, double y) { return named_state(model, cfg.ic.id, x, y); };
  } else {
    for (const Region& r : cfg.ic.regions) validate_shape(r.shape);
    f = [&](double x, double y) {
      const json* state = nullptr;
      for (const Region& r : cfg.ic.regions)
        if (shape_contains(r.shape, x, y)) state = &r.state;
      if (!state)
        throw ConfigError("no initial-condition region covers (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
      return state_from_json(model, *state, x, y, bathy);
    };
  }
  return init_from_function<D>(grid, f);
}

inline Grid make_grid(const RunConfig& cfg) {
  if (cfg.dimension == 1) return Grid::line(cfg.domain.x_min, cfg.domain.x_max, cfg.nx);
  return Grid::plane(cfg.domain.x_min, cfg.domain.x_max, cfg.nx, cfg.domain.y_min,
                     cfg.domain.y_max, cfg.ny);
}

}  // namespace pccu
