#include "casimir/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad_token(const std::string& what, const std::string& text) {
  throw std::invalid_argument(what + ": cannot parse '" + text + "'");
}

// number + suffix; suffix must match one of the given unit names exactly
double parse_suffixed(const std::string& text, const std::string& what,
                      const std::vector<std::pair<std::string, double>>& units,
                      double bare_scale) {
  const std::string t = trim(text);
  if (t.empty()) bad_token(what, text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) bad_token(what, text);
  const std::string suffix = trim(std::string(end));
  if (suffix.empty()) return value * bare_scale;
  for (const auto& [name, scale] : units)
    if (suffix == name) return value * scale;
  bad_token(what, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string format_full(double x) {  // shortest bit-exact round trip
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_token(key, v);
}

}  // namespace

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::pretty: return "pretty";
  }
  return "?";
}

std::string to_string(RunCommand c) {
  switch (c) {
    case RunCommand::force: return "force";
    case RunCommand::spectrum: return "spectrum";
    case RunCommand::applicability: return "applicability";
  }
  return "?";
}

double parse_length(const std::string& text) {
  return parse_suffixed(text, "length",
                        {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}},
                        1.0);
}

double parse_temperature(const std::string& text) {
  return parse_suffixed(text, "temperature", {{"K", 1.0}}, 1.0);
}

double parse_angular_frequency(const std::string& text,
                               const std::string& bare_unit) {
  const std::string t = trim(text);
  const char* begin = t.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) bad_token("frequency", text);
  std::string suffix = trim(std::string(end));
  if (suffix.empty()) suffix = bare_unit;
  if (suffix == "eV") return ev_to_angular_frequency(value);
  if (suffix == "rad/s") return value;
  bad_token("frequency", text);
}

std::vector<double> parse_gap_list(const std::string& text) {
  std::vector<double> gaps;
  for (const auto& raw : split(text, ',')) {
    const std::string token = trim(raw);
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      gaps.push_back(parse_length(token));
      continue;
    }
    std::string rest = token.substr(dots + 2);
    int n = 5;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      const std::string count = trim(rest.substr(colon + 1));
      char* end = nullptr;
      const long parsed = std::strtol(count.c_str(), &end, 10);
      if (end == count.c_str() || *end != '\0' || parsed < 2 || parsed > 100000)
        bad_token("gap range count", token);
      n = static_cast<int>(parsed);
      rest = rest.substr(0, colon);
    }
    const double lo = parse_length(token.substr(0, dots));
    const double hi = parse_length(rest);
    if (!(lo < hi)) throw std::invalid_argument(
        "gap range: bounds must be strictly increasing in '" + token + "'");
    for (int i = 0; i < n; ++i)
      gaps.push_back(lo + (hi - lo) * i / (n - 1));
  }
  if (gaps.empty()) throw std::invalid_argument("gap: empty list");
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return gaps;
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "preset") {
    cfg.preset = value;
  } else if (key == "omega_p_ev") {
    cfg.omega_p_ev = parse_suffixed(value, key, {{"eV", 1.0}}, 1.0);
  } else if (key == "nu") {
    cfg.nu = parse_angular_frequency(value, "rad/s");
  } else if (key == "model") {
    if (value == "drude") cfg.model = DielectricModel::Drude;
    else if (value == "plasma") cfg.model = DielectricModel::Plasma;
    else bad_token(key, value);
  } else if (key == "vacuum") {
    cfg.vacuum = parse_bool(value, key);
  } else if (key == "gap") {
    cfg.gaps = parse_gap_list(value);
  } else if (key == "temp") {
    cfg.temperature = parse_temperature(value);
  } else if (key == "radius") {
    cfg.radius = parse_length(value);
  } else if (key == "var") {
    if (value == "v") cfg.variable = SpectrumVariable::v;
    else if (value == "u") cfg.variable = SpectrumVariable::u;
    else if (value == "omega") cfg.variable = SpectrumVariable::omega;
    else bad_token(key, value);
  } else if (key == "fraction") {
    cfg.fraction = parse_suffixed(value, key, {}, 1.0);
  } else if (key == "grid") {
    cfg.grid_points = static_cast<int>(parse_suffixed(value, key, {}, 1.0));
  } else if (key == "format") {
    if (value == "csv") cfg.format = OutputFormat::csv;
    else if (value == "json") cfg.format = OutputFormat::json;
    else if (value == "pretty") cfg.format = OutputFormat::pretty;
    else bad_token(key, value);
  } else if (key == "rel_tol") {
    cfg.rel_tol = parse_suffixed(value, key, {}, 1.0);
  } else if (key == "max_subdivisions") {
    cfg.max_subdivisions = static_cast<int>(parse_suffixed(value, key, {}, 1.0));
  } else if (key == "n_max") {
    cfg.n_max = static_cast<long>(parse_suffixed(value, key, {}, 1.0));
  } else if (key == "verify") {
    cfg.verify = parse_bool(value, key);
  } else if (key == "presets_file") {
    cfg.presets_file = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void load_config_stream(RunConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    apply_config_entry(cfg, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  load_config_stream(cfg, in);
}

std::vector<std::pair<std::string, std::string>> config_items(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (cfg.vacuum) {
    kv.emplace_back("vacuum", "true");
  } else if (!cfg.preset.empty()) {
    kv.emplace_back("preset", cfg.preset);
    if (!cfg.presets_file.empty())
      kv.emplace_back("presets_file", cfg.presets_file);
  } else {
    kv.emplace_back("omega_p_ev", format_full(cfg.omega_p_ev.value_or(0.0)));
    kv.emplace_back("nu", format_full(cfg.nu.value_or(0.0)));
    kv.emplace_back("model", cfg.model == DielectricModel::Drude ? "drude"
                                                                 : "plasma");
  }
  std::string gap;
  for (size_t i = 0; i < cfg.gaps.size(); ++i) {
    if (i) gap += ',';
    gap += format_full(cfg.gaps[i]);
  }
  kv.emplace_back("gap", gap);
  kv.emplace_back("temp", format_full(cfg.temperature));
  if (cfg.radius) kv.emplace_back("radius", format_full(*cfg.radius));
  if (cfg.command == RunCommand::spectrum) {
    kv.emplace_back("var", to_string(cfg.variable));
    kv.emplace_back("fraction", format_full(cfg.fraction));
    kv.emplace_back("grid", std::to_string(cfg.grid_points));
  }
  kv.emplace_back("format", to_string(cfg.format));
  kv.emplace_back("rel_tol", format_full(cfg.rel_tol));
  kv.emplace_back("max_subdivisions", std::to_string(cfg.max_subdivisions));
  if (cfg.command == RunCommand::force) {
    kv.emplace_back("n_max", std::to_string(cfg.n_max));
    kv.emplace_back("verify", cfg.verify ? "true" : "false");
  }
  return kv;
}

Medium resolve_medium(const RunConfig& cfg) {
  const bool has_inline = cfg.omega_p_ev.has_value() || cfg.nu.has_value();
  const int sources = int(cfg.vacuum) + int(!cfg.preset.empty()) + int(has_inline);
  if (sources == 0)
    throw std::invalid_argument(
        "material: provide --preset, --omega-p/--nu, or --epsilon vacuum");
  if (sources > 1)
    throw std::invalid_argument(
        "material: preset, inline parameters, and vacuum are mutually exclusive");
  if (cfg.vacuum) return std::nullopt;
  if (!cfg.preset.empty()) {
    std::vector<MaterialPreset> extra;
    if (!cfg.presets_file.empty()) {
      std::ifstream in(cfg.presets_file);
      if (!in)
        throw std::invalid_argument("presets_file: cannot open '" +
                                    cfg.presets_file + "'");
      extra = load_presets(in);
    }
    return material_preset(cfg.preset, extra);
  }
  if (!cfg.omega_p_ev)
    throw std::invalid_argument("material: inline parameters need --omega-p");
  if (!(*cfg.omega_p_ev > 0.0))
    throw std::invalid_argument("omega_p_ev: must be > 0");
  Material m;
  m.model = cfg.model;
  m.plasma_frequency = ev_to_angular_frequency(*cfg.omega_p_ev);
  m.relaxation = cfg.nu.value_or(0.0);
  if (m.model == DielectricModel::Drude && !(m.relaxation > 0.0))
    throw std::invalid_argument("nu: Drude model needs a relaxation > 0");
  if (m.relaxation < 0.0) throw std::invalid_argument("nu: must be >= 0");
  return m;
}

void validate(const RunConfig& cfg) {
  if (cfg.gaps.empty()) throw std::invalid_argument("gap: required");
  for (double l : cfg.gaps)
    if (!(l > 0.0)) throw std::invalid_argument("gap: separations must be > 0");
  if (!(cfg.temperature > 0.0))
    throw std::invalid_argument("temp: must be > 0");
  if (!(cfg.fraction > 0.0) || !(cfg.fraction < 1.0))
    throw std::invalid_argument("fraction: must be in (0, 1)");
  if (cfg.grid_points < 8)
    throw std::invalid_argument("grid: needs at least 8 points");
  if (!(cfg.rel_tol > 0.0) || cfg.rel_tol > 0.1)
    throw std::invalid_argument("rel_tol: must be in (0, 0.1]");
  if (cfg.max_subdivisions < 1)
    throw std::invalid_argument("max_subdivisions: must be >= 1");
  if (cfg.n_max < 1) throw std::invalid_argument("n_max: must be >= 1");
  if (cfg.command == RunCommand::applicability && !cfg.radius)
    throw std::invalid_argument("radius: required for applicability");
  if (cfg.radius && !(*cfg.radius > 0.0))
    throw std::invalid_argument("radius: must be > 0");
}

}  // namespace casimir
