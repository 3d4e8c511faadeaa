#pragma once

#include <complex>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/constants.hpp"

namespace casimir {

enum class DielectricModel { Drude, Plasma };

// Analytic metal permittivity: omega_p and (for Drude) a relaxation rate nu.
struct Material {
  DielectricModel model = DielectricModel::Drude;
  double plasma_frequency = 0.0;  // rad/s
  double relaxation = 0.0;        // rad/s, ignored when model == Plasma
};

// Real-axis permittivity.
//   Drude:  eps = 1 - wp^2 / (w (w + i nu))
//   Plasma: eps = 1 - wp^2 / w^2
// Throws std::domain_error for omega <= 0.
std::complex<double> permittivity(const Material& m, double omega);

// Imaginary-axis permittivity eps(i xi), real and > 1 for xi > 0.
//   Drude:  1 + wp^2 / (xi (xi + nu)),  Plasma: 1 + wp^2 / xi^2
double permittivity_imag_axis(const Material& m, double xi);

struct MaterialPreset {
  std::string name;
  Material material;
};

// Built-in presets:
//   Au-paper    {hbar*wp = 9 eV, nu = 5.32e13 rad/s, Drude}
//   Au-low-loss {hbar*wp = 9 eV, nu = 1e10 rad/s,    Drude}
const std::vector<MaterialPreset>& builtin_presets();

// Lookup by name among built-ins plus any extra presets; throws
// std::invalid_argument when the name is unknown.
Material material_preset(std::string_view name,
                         const std::vector<MaterialPreset>& extra = {});

// Parse a key=value preset stream; keys are <name>.omega_p_ev, <name>.nu,
// <name>.model (drude|plasma). '#' starts a comment. Malformed lines throw.
std::vector<MaterialPreset> load_presets(std::istream& in);

}  // namespace casimir
