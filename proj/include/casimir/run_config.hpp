#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/matsubara.hpp"
#include "casimir/spectra.hpp"

namespace casimir {

enum class OutputFormat { csv, json, pretty };
enum class RunCommand { force, spectrum, applicability };

std::string to_string(OutputFormat f);
std::string to_string(RunCommand c);

// One fully resolved run: material, geometry, spectrum options, output and
// quadrature settings.  Built from defaults, then a config file, then
// command-line flags (later layers override earlier ones).
struct RunConfig {
  RunCommand command = RunCommand::force;

  // material: exactly one of preset name / inline pair / vacuum
  std::string preset;
  std::optional<double> omega_p_ev;  // inline plasma frequency, eV
  std::optional<double> nu;          // inline relaxation, rad/s
  DielectricModel model = DielectricModel::Drude;
  bool vacuum = false;

  std::vector<double> gaps;    // m, ascending, deduplicated
  double temperature = 300.0;  // K
  std::optional<double> radius;  // sphere radius, m (applicability)

  SpectrumVariable variable = SpectrumVariable::v;
  double fraction = 0.9;
  int grid_points = 200;

  OutputFormat format = OutputFormat::pretty;
  double rel_tol = 1e-7;
  int max_subdivisions = 2000;
  long n_max = 2000;  // Matsubara terms for --verify
  bool verify = false;

  std::string presets_file;  // optional extra material presets
};

// Unit-suffixed scalar parsing; every converter returns SI.  A bare number
// means the default unit named in the function.  Malformed text throws
// std::invalid_argument naming the offending token.
double parse_length(const std::string& text);              // nm|um|mm|m, bare = m
double parse_temperature(const std::string& text);         // K, bare = K
double parse_angular_frequency(const std::string& text,
                               const std::string& bare_unit);  // eV|rad/s

// Gap syntax: single value, comma list, or range a..b / a..b:N (N linear
// points, default 5, endpoints included).  Result sorted ascending, exact
// duplicates removed.
std::vector<double> parse_gap_list(const std::string& text);

// Flat key = value configuration text ('#' comments, blank lines ignored).
// Keys mirror the CLI flags; unknown keys throw.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);
void load_config_stream(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::string& path);

// The flat key/value image of a config: feeding these lines back through
// apply_config_entry reproduces the identical run (doubles serialized with
// full 17-digit precision so the round trip is bit-exact).
std::vector<std::pair<std::string, std::string>> config_items(
    const RunConfig& cfg);

// Material resolution: preset lookup (built-ins plus presets_file) or the
// inline pair; vacuum -> nullopt.  Validation failures throw
// std::invalid_argument naming the field.
Medium resolve_medium(const RunConfig& cfg);

// Remaining cross-field validation (gap list non-empty and positive,
// fraction in (0,1), tolerances positive, ...).
void validate(const RunConfig& cfg);

inline QuadratureSpec quadrature_spec(const RunConfig& cfg) {
  return {cfg.rel_tol, 0.0, cfg.max_subdivisions, {}};
}
inline MatsubaraSpec matsubara_spec(const RunConfig& cfg) {
  return {cfg.n_max, 1e-9};
}

}  // namespace casimir
