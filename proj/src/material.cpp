#include "casimir/material.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace casimir {

double ev_to_angular_frequency(double energy_ev) {
  if (energy_ev <= 0.0)
    throw std::domain_error("ev_to_angular_frequency: energy must be > 0");
  return energy_ev * constants().e / constants().hbar;
}

std::complex<double> permittivity(const Material& m, double omega) {
  if (omega <= 0.0) throw std::domain_error("permittivity: omega must be > 0");
  const double wp2 = m.plasma_frequency * m.plasma_frequency;
  if (m.model == DielectricModel::Plasma)
    return {1.0 - wp2 / (omega * omega), 0.0};
  return 1.0 - wp2 / (omega * std::complex<double>(omega, m.relaxation));
}

double permittivity_imag_axis(const Material& m, double xi) {
  if (xi <= 0.0)
    throw std::domain_error("permittivity_imag_axis: xi must be > 0");
  const double wp2 = m.plasma_frequency * m.plasma_frequency;
  const double nu = m.model == DielectricModel::Plasma ? 0.0 : m.relaxation;
  return 1.0 + wp2 / (xi * (xi + nu));
}

const std::vector<MaterialPreset>& builtin_presets() {
  static const std::vector<MaterialPreset> presets = [] {
    const double wp_au = ev_to_angular_frequency(9.0);
    return std::vector<MaterialPreset>{
        {"Au-paper", {DielectricModel::Drude, wp_au, 5.32e13}},
        {"Au-low-loss", {DielectricModel::Drude, wp_au, 1e10}},
    };
  }();
  return presets;
}

Material material_preset(std::string_view name,
                         const std::vector<MaterialPreset>& extra) {
  for (const auto& p : extra)
    if (p.name == name) return p.material;
  for (const auto& p : builtin_presets())
    if (p.name == name) return p.material;
  throw std::invalid_argument("unknown material preset: " + std::string(name));
}

std::vector<MaterialPreset> load_presets(std::istream& in) {
  // accumulate fields per preset name, then validate
  struct Partial {
    double omega_p_ev = 0.0;
    double nu = 0.0;
    bool have_wp = false, have_nu = false;
    DielectricModel model = DielectricModel::Drude;
  };
  std::map<std::string, Partial> partials;
  std::vector<std::string> order;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    const auto dot = line.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw std::invalid_argument("presets line " + std::to_string(lineno) +
                                  ": expected <name>.<field> = <value>");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string name = trim(line.substr(0, dot));
    const std::string field = trim(line.substr(dot + 1, eq - dot - 1));
    const std::string value = trim(line.substr(eq + 1));
    if (name.empty() || value.empty())
      throw std::invalid_argument("presets line " + std::to_string(lineno) +
                                  ": empty name or value");
    if (!partials.count(name)) order.push_back(name);
    Partial& p = partials[name];
    if (field == "omega_p_ev") {
      p.omega_p_ev = std::stod(value);
      p.have_wp = true;
    } else if (field == "nu") {
      p.nu = std::stod(value);
      p.have_nu = true;
    } else if (field == "model") {
      if (value == "drude")
        p.model = DielectricModel::Drude;
      else if (value == "plasma")
        p.model = DielectricModel::Plasma;
      else
        throw std::invalid_argument("presets line " + std::to_string(lineno) +
                                    ": model must be drude or plasma");
    } else {
      throw std::invalid_argument("presets line " + std::to_string(lineno) +
                                  ": unknown field '" + field + "'");
    }
  }

  std::vector<MaterialPreset> out;
  for (const auto& name : order) {
    const Partial& p = partials[name];
    if (!p.have_wp)
      throw std::invalid_argument("preset '" + name + "': missing omega_p_ev");
    if (p.model == DielectricModel::Drude && !p.have_nu)
      throw std::invalid_argument("preset '" + name + "': missing nu");
    out.push_back({name,
                   {p.model, ev_to_angular_frequency(p.omega_p_ev), p.nu}});
  }
  return out;
}

}  // namespace casimir
