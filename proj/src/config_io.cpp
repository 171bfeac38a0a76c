// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/config_io.hpp"

#include <fstream>

namespace sarrfi {
namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::invalid_config, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail("config: expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("config: missing field '") + name + "'");
  return *it;
}

double number(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number()) fail(std::string("config: field '") + name + "' must be a number");
  return v.get<double>();
}

std::size_t count(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(std::string("config: field '") + name + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

cdouble complex_value(const Json& v, const char* name) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(std::string("config: field '") + name + "' must be a number or [re, im]");
}

Json complex_json(cdouble z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

RadarConfig radar_from_json(const Json& j) {
  RadarConfig cfg;
  cfg.f0 = number(j, "f0");
  cfg.K_r = number(j, "K_r");
  cfg.T = number(j, "T");
  cfg.V = number(j, "V");
  cfg.B_p = number(j, "B_p");
  cfg.prf = number(j, "prf");
  cfg.f_s = number(j, "f_s");
  cfg.R_ref = number(j, "R_ref");
  cfg.squint_deg = j.contains("squint_deg") ? number(j, "squint_deg") : 0.0;
  cfg.N_a = count(j, "N_a");
  cfg.N_r = count(j, "N_r");
  if (cfg.prf > 0.0 && cfg.f_s > 0.0) center_windows(cfg);
  if (j.contains("eta0")) cfg.eta0 = number(j, "eta0");
  if (j.contains("tau0")) cfg.tau0 = number(j, "tau0");
  cfg.validate();
  return cfg;
}

Json to_json(const RadarConfig& cfg) {
  return Json{{"f0", cfg.f0},   {"K_r", cfg.K_r}, {"T", cfg.T},
              {"V", cfg.V},     {"B_p", cfg.B_p}, {"prf", cfg.prf},
              {"f_s", cfg.f_s}, {"R_ref", cfg.R_ref}, {"squint_deg", cfg.squint_deg},
              {"N_a", cfg.N_a}, {"N_r", cfg.N_r}, {"eta0", cfg.eta0},
              {"tau0", cfg.tau0}};
}

InterferenceConfig interference_from_json(const Json& j) {
  InterferenceConfig icfg;
  icfg.K_i = number(j, "K_i");
  icfg.T_i = number(j, "T_i");
  icfg.f_i0 = j.contains("f_i0") ? number(j, "f_i0") : 0.0;
  icfg.R_i = number(j, "R_i");
  icfg.gamma_i = j.contains("gamma_i") ? complex_value(j["gamma_i"], "gamma_i") : cdouble{1.0, 0.0};
  icfg.pulse_index = count(j, "pulse_index");
  return icfg;
}

Json to_json(const InterferenceConfig& icfg) {
  return Json{{"K_i", icfg.K_i},   {"T_i", icfg.T_i},
              {"f_i0", icfg.f_i0}, {"R_i", icfg.R_i},
              {"gamma_i", complex_json(icfg.gamma_i)}, {"pulse_index", icfg.pulse_index}};
}

Scene scene_from_json(const Json& j) {
  const Json& list = field(j, "scatterers");
  if (!list.is_array()) fail("config: 'scatterers' must be an array");
  Scene scene;
  for (const auto& s : list) {
    PointScatterer p;
    p.gamma0 = s.contains("gamma0") ? complex_value(s["gamma0"], "gamma0") : cdouble{1.0, 0.0};
    p.x0 = number(s, "x0");
    p.R0 = number(s, "R0");
    if (!(p.R0 > 0.0)) fail("config: scatterer R0 must be > 0");
    scene.scatterers.push_back(p);
  }
  return scene;
}

Json to_json(const Scene& scene) {
  Json list = Json::array();
  for (const auto& s : scene.scatterers) {
    list.push_back({{"gamma0", complex_json(s.gamma0)}, {"x0", s.x0}, {"R0", s.R0}});
  }
  return Json{{"scatterers", list}};
}

Json to_json(const ArtefactFootprint& fp) {
  Json j{{"eta_i", fp.eta_i},         {"tau_i", fp.tau_i},
         {"d_eta", fp.d_eta},         {"d_eta_approx", fp.d_eta_approx},
         {"d_tau", fp.d_tau},         {"eta_start", fp.eta_start},
         {"eta_end", fp.eta_end},     {"tau_start", fp.tau_start},
         {"tau_end", fp.tau_end}};
  if (fp.px) {
    const auto& p = *fp.px;
    j["px"] = {{"row_center", p.row_center}, {"col_center", p.col_center},
               {"row_extent", p.row_extent}, {"col_extent", p.col_extent},
               {"row_start", p.row_start},   {"row_end", p.row_end},
               {"col_start", p.col_start},   {"col_end", p.col_end}};
  }
  return j;
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::invalid_config, path.string() + ": " + e.what());
  }
}

void save_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

}  // namespace sarrfi
