#pragma once

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"

namespace pccu {

namespace catalog_detail {

inline json all() { return {{"type", "all"}}; }
inline json interval(double lo, double hi) { return {{"type", "interval"}, {"min", lo}, {"max", hi}}; }
inline json greater(const char* axis, double v) {
  return {{"type", "half_plane"}, {"axis", axis}, {"greater_than", v}};
}
inline json less(const char* axis, double v) {
  return {{"type", "half_plane"}, {"axis", axis}, {"less_than", v}};
}
inline json disk(double cx, double cy, double r) {
  return {{"type", "disk"}, {"center", {cx, cy}}, {"radius", r}};
}
inline json annulus(double cx, double cy, double r0, double r1) {
  return {{"type", "annulus"}, {"center", {cx, cy}}, {"r_min", r0}, {"r_max", r1}};
}

inline json gas(double rho, double u, double p, double gamma, double pi_inf) {
  return {{"rho", rho}, {"u", u}, {"p", p}, {"gamma", gamma}, {"pi_inf", pi_inf}};
}
inline json gas2(double rho, double u, double v, double p, double gamma, double pi_inf) {
  return {{"rho", rho}, {"u", u}, {"v", v}, {"p", p}, {"gamma", gamma}, {"pi_inf", pi_inf}};
}
inline json layer(double h, double b) { return {{"h", h}, {"u", 0.0}, {"v", 0.0}, {"b", b}}; }
inline json surface(double eta, double b) {
  return {{"surface", eta}, {"u", 0.0}, {"v", 0.0}, {"b", b}};
}

inline RunConfig base(const std::string& name, const std::string& model, int dim) {
  RunConfig c;
  c.name = name;
  c.model = model;
  c.dimension = dim;
  c.scheme = "both";
  c.output.dir = "out/" + name;
  return c;
}

inline RunConfig bubble_2d(const std::string& name, const json& bubble_state) {
  RunConfig c = base(name, "multifluid", 2);
  c.domain = {-3.0, 1.0, -0.5, 0.5};
  c.nx = 2000;
  c.ny = 500;
  c.t_final = 3.0;
  c.snapshots = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  c.bc = {"free", "free", "solid_wall", "solid_wall"};
  c.ic.regions = {{all(), gas2(1.0, 0.0, 0.0, 1.0, 1.4, 0.0)},
                  {disk(0.0, 0.0, 0.25), bubble_state},
                  {greater("x", 0.75), gas2(4.0 / 3.0, -0.3535, 0.0, 1.5, 1.4, 0.0)}};
  c.output.formats = {"csv", "schlieren"};
  return c;
}

inline std::map<std::string, std::pair<std::string, RunConfig>> build_catalog() {
  std::map<std::string, std::pair<std::string, RunConfig>> cat;

  {
    RunConfig c = base("ex1", "multifluid", 1);
    c.domain = {-1.0, 2.0};
    c.nx = 300;
    c.t_final = 3.0;
    c.bc = {"solid_wall", "solid_wall"};
    c.ic.regions = {{all(), gas(1.0, 0.0, 1.0, 1.4, 0.0)},
                    {interval(-0.25, 0.25), gas(13.1538, 0.0, 1.0, 5.0 / 3.0, 0.0)},
                    {greater("x", 0.75), gas(1.3333, -0.3535, 1.5, 1.4, 0.0)}};
    cat["ex1"] = {"1-D shock-bubble interaction", c};
  }
  {
    RunConfig c = base("ex2", "multifluid", 1);
    c.domain = {0.0, 18.0};
    c.nx = 180;
    c.t_final = 0.045;
    c.ic.regions = {{all(), gas(1.0, 0.0, 1.0, 4.4, 6000.0)},
                    {interval(3.0, 9.0), gas(0.05, 0.0, 1.0, 1.4, 0.0)},
                    {greater("x", 11.4), gas(1.325, -68.525, 19153.0, 4.4, 6000.0)}};
    cat["ex2"] = {"1-D water-air shock-bubble interaction", c};
  }
  cat["ex3"] = {"2-D shock-helium bubble interaction",
                bubble_2d("ex3", gas2(4.0 / 29.0, 0.0, 0.0, 1.0, 5.0 / 3.0, 0.0))};
  cat["ex4"] = {"2-D shock-R22 bubble interaction",
                bubble_2d("ex4", gas2(3.1538, 0.0, 0.0, 1.0, 1.249, 0.0))};
  {
    RunConfig c = base("ex5", "multifluid", 2);
    c.domain = {0.0, 10.0, 0.0, 6.0};
    c.nx = 800;
    c.ny = 480;
    c.t_final = 0.02;
    c.snapshots = {0.01, 0.015, 0.02};
    c.bc = {"free", "free", "solid_wall", "free"};
    c.ic.regions = {{all(), gas2(1.0, 0.0, 0.0, 1.0, 7.15, 3309.0)},
                    {greater("y", 4.0), gas2(0.02, 0.0, 0.0, 1.0, 1.4, 0.0)},
                    {disk(5.0, 2.0, 1.0), gas2(1.27, 0.0, 0.0, 8290.0, 2.0, 0.0)}};
    c.output.formats = {"csv", "schlieren"};
    cat["ex5"] = {"2-D cylindrical underwater explosion near a wall", c};
  }
  {
    RunConfig c = base("ex6", "trsw", 1);
    c.domain = {-5.0, 5.0};
    c.nx = 200;
    c.t_final = 10.0;
    c.ic.regions = {{all(), layer(1.0, 4.0)}, {less("x", 0.0), layer(2.0, 1.0)}};
    cat["ex6"] = {"1-D Ripa constant-pressure equilibrium", c};

    RunConfig p = c;
    p.name = "ex6p";
    p.output.dir = "out/ex6p";
    p.t_final = 1.6;
    p.snapshots = {1.2, 1.6};
    p.ic.regions.push_back({interval(-1.8, -1.7), layer(2.1, 1.0)});
    cat["ex6p"] = {"1-D Ripa: small perturbation of the constant-pressure equilibrium", p};
  }
  {
    RunConfig c = base("ex7", "trsw", 1);
    c.domain = {-1.0, 1.0};
    c.nx = 200;
    c.t_final = 0.2;
    c.snapshots = {0.1, 0.2};
    c.topography = "ex7_bumps";
    c.ic.regions = {{all(), surface(2.0, 5.0)}, {less("x", 0.0), surface(5.0, 1.0)}};
    cat["ex7"] = {"1-D Ripa dam break over a nonflat bottom", c};
  }
  {
    RunConfig c = base("ex8", "trsw", 2);
    c.domain = {-1.0, 1.0, -1.0, 1.0};
    c.nx = c.ny = 100;
    c.t_final = 0.12;
    c.topography = "ex8_humps";
    c.ic.regions = {{all(), surface(2.0, 3.0)},
                    {disk(0.0, 0.0, 0.5), surface(3.0, 4.0 / 3.0)},
                    {annulus(0.0, 0.0, 0.1, 0.3), surface(3.1, 4.0 / 3.0)}};
    c.output.formats = {"csv", "slice_diag"};
    cat["ex8"] = {"2-D TRSW small perturbation of a steady state", c};
  }
  {
    RunConfig c = base("ex9", "trsw", 2);
    c.domain = {-1.0, 1.0, -1.0, 1.0};
    c.nx = c.ny = 100;
    c.t_final = 0.15;
    c.ic.regions = {{all(), layer(1.2, 1.5)}, {disk(0.0, 0.0, 0.5), layer(1.5, 1.0)}};
    c.output.formats = {"csv", "slice_diag"};
    cat["ex9"] = {"2-D TRSW radial dam break over a flat bottom", c};
  }
  {
    RunConfig c = base("ex10", "trsw", 2);
    c.domain = {-40.0, 80.0, -10.0, 10.0};
    c.nx = 900;
    c.ny = 150;
    c.t_final = 120.0;
    c.snapshots = {30.0, 60.0, 90.0, 120.0};
    c.coriolis = {0.0, 1.0};
    c.ic.id = "ex10_anomaly";
    c.output.formats = {"csv", "slice_y0"};
    cat["ex10"] = {"2-D TRSW relaxation of a buoyancy anomaly on the equatorial beta-plane", c};
  }
  return cat;
}

}  // namespace catalog_detail

inline const std::map<std::string, std::pair<std::string, RunConfig>>& catalog() {
  static const auto cat = catalog_detail::build_catalog();
  return cat;
}

inline bool in_catalog(const std::string& name) { return catalog().count(name) > 0; }

inline RunConfig catalog_config(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw ConfigError("unknown example '" + name + "'");
  return it->second.second;
}

}  // namespace pccu
