#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "casimir/output.hpp"

namespace {

using namespace casimir;

// raw option text; applied over the config file only when actually passed
struct FlagSet {
  std::string config_path, preset, epsilon, omega_p, nu, model, gap, temp,
      radius, var, fraction, grid, format, rel_tol, max_subdivisions, n_max,
      presets_file, out_path;
  bool verify = false;
};

size_t thread_budget(size_t jobs) {
  size_t limit = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("CASIMIR_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1)
      throw std::invalid_argument(
          "CASIMIR_SPECTRA_THREADS: expected a positive integer");
    limit = static_cast<size_t>(parsed);
  }
  if (limit < 1) limit = 1;
  return std::min(jobs, limit);
}

// index-ordered parallel sweep; results land in caller-owned slots, so the
// output order never depends on completion order
template <class Fn>
void run_sweep(size_t jobs, Fn&& fn) {
  const size_t workers = thread_budget(jobs);
  if (workers <= 1) {
    for (size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)  // lowest gap index wins: deterministic message
    if (e) std::rethrow_exception(e);
}

int run_force(const RunConfig& cfg, std::ostream& os) {
  const Medium med = resolve_medium(cfg);
  std::vector<ForceRow> rows(cfg.gaps.size());
  run_sweep(cfg.gaps.size(), [&](size_t i) {
    const Gap gap{cfg.gaps[i], cfg.temperature};
    ForceRow row;
    row.gap = cfg.gaps[i];
    row.breakdown = thermal_pressure_total(gap, med, quadrature_spec(cfg));
    if (cfg.verify) {
      const auto oracle = thermal_correction_oracle(
          gap, med, matsubara_spec(cfg), quadrature_spec(cfg));
      row.oracle_rel_diff =
          oracle.pressure != 0.0
              ? std::abs(row.breakdown.total - oracle.pressure) /
                    std::abs(oracle.pressure)
              : std::abs(row.breakdown.total);
      row.oracle = oracle;
    }
    rows[i] = std::move(row);
  });
  write_force(os, cfg, rows);
  return all_converged(rows) ? 0 : 2;
}

int run_spectrum(const RunConfig& cfg, std::ostream& os) {
  const Medium med = resolve_medium(cfg);
  if (!med)
    throw std::invalid_argument("spectrum: the empty gap has no spectrum");
  const Material m = *med;
  std::vector<SpectrumRow> rows(cfg.gaps.size());
  run_sweep(cfg.gaps.size(), [&](size_t i) {
    const Gap gap{cfg.gaps[i], cfg.temperature};
    SpectrumRow row;
    row.gap = cfg.gaps[i];
    if (cfg.variable == SpectrumVariable::v) {
      row.table = wavevector_spectrum(gap, m, default_v_grid(cfg.grid_points),
                                      quadrature_spec(cfg));
    } else {
      row.table = frequency_spectrum(
          gap, m, default_u_grid(gap, m, cfg.grid_points), quadrature_spec(cfg));
      if (cfg.variable == SpectrumVariable::omega)
        row.table = to_omega_axis(row.table);
    }
    row.range = contribution_range(row.table, cfg.fraction);
    row.min_width = minimal_width_range(row.table, cfg.fraction, false);
    row.min_width_log = minimal_width_range(row.table, cfg.fraction, true);
    rows[i] = std::move(row);
  });
  write_spectrum(os, cfg, rows);
  return all_converged(rows) ? 0 : 2;
}

int run_applicability(const RunConfig& cfg, std::ostream& os) {
  const Medium med = resolve_medium(cfg);
  if (!med || !(med->relaxation > 0.0))
    throw std::invalid_argument(
        "nu: the applicability report compares against 2 pi c / nu and needs "
        "a material with relaxation > 0");
  std::vector<ApplicabilityRow> rows(cfg.gaps.size());
  for (size_t i = 0; i < cfg.gaps.size(); ++i)
    rows[i].report = applicability_report({cfg.gaps[i], cfg.temperature}, *med,
                                          *cfg.radius);
  write_applicability(os, cfg, rows);
  return 0;
}

void apply_flags(const CLI::App& sub, const FlagSet& fl, RunConfig& cfg) {
  auto seen = [&](const std::string& name) {
    const CLI::Option* opt = sub.get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (seen("--preset")) cfg.preset = fl.preset;
  if (seen("--presets")) cfg.presets_file = fl.presets_file;
  if (seen("--epsilon")) {
    if (fl.epsilon != "vacuum")
      throw std::invalid_argument(
          "epsilon: only 'vacuum' is supported; metals go through "
          "--preset or --omega-p/--nu");
    cfg.vacuum = true;
  }
  if (seen("--omega-p"))
    cfg.omega_p_ev = parse_angular_frequency(fl.omega_p, "eV") /
                     ev_to_angular_frequency(1.0);
  if (seen("--nu")) apply_config_entry(cfg, "nu", fl.nu);
  if (seen("--model")) apply_config_entry(cfg, "model", fl.model);
  if (seen("--gap")) apply_config_entry(cfg, "gap", fl.gap);
  if (seen("--temp")) apply_config_entry(cfg, "temp", fl.temp);
  if (seen("--radius")) apply_config_entry(cfg, "radius", fl.radius);
  if (seen("--var")) apply_config_entry(cfg, "var", fl.var);
  if (seen("--fraction")) apply_config_entry(cfg, "fraction", fl.fraction);
  if (seen("--grid")) apply_config_entry(cfg, "grid", fl.grid);
  if (seen("--format")) apply_config_entry(cfg, "format", fl.format);
  if (seen("--rel-tol")) apply_config_entry(cfg, "rel_tol", fl.rel_tol);
  if (seen("--max-subdivisions"))
    apply_config_entry(cfg, "max_subdivisions", fl.max_subdivisions);
  if (seen("--n-max")) apply_config_entry(cfg, "n_max", fl.n_max);
  if (seen("--verify")) cfg.verify = true;
}

int dispatch(RunCommand command, const CLI::App& sub, const FlagSet& fl) {
  RunConfig cfg;
  cfg.command = command;
  if (!fl.config_path.empty()) load_config_file(cfg, fl.config_path);
  apply_flags(sub, fl, cfg);
  validate(cfg);

  std::ofstream file;
  if (!fl.out_path.empty()) {
    file.open(fl.out_path);
    if (!file)
      throw std::invalid_argument("out: cannot write '" + fl.out_path + "'");
  }
  std::ostream& os = fl.out_path.empty() ? std::cout : file;

  switch (command) {
    case RunCommand::force: return run_force(cfg, os);
    case RunCommand::spectrum: return run_spectrum(cfg, os);
    case RunCommand::applicability: return run_applicability(cfg, os);
  }
  return 1;
}

void add_common(CLI::App* sub, FlagSet& fl) {
  sub->add_option("--config", fl.config_path,
                  "flat key = value config file, applied before flags");
  sub->add_option("--preset", fl.preset,
                  "material preset (Au-paper, Au-low-loss, or from --presets)");
  sub->add_option("--presets", fl.presets_file, "extra material presets file");
  sub->add_option("--epsilon", fl.epsilon, "'vacuum' for the empty gap");
  sub->add_option("--omega-p", fl.omega_p,
                  "inline plasma frequency, eV ('rad/s' suffix accepted)");
  sub->add_option("--nu", fl.nu,
                  "inline relaxation, rad/s ('eV' suffix accepted)");
  sub->add_option("--model", fl.model, "inline material model: drude|plasma");
  sub->add_option("--gap", fl.gap,
                  "separation: value, comma list, or a..b[:N] (nm|um|mm|m)");
  sub->add_option("--temp", fl.temp, "temperature, K");
  sub->add_option("--format", fl.format, "output format: csv|json|pretty");
  sub->add_option("--rel-tol", fl.rel_tol, "outer quadrature relative tolerance");
  sub->add_option("--max-subdivisions", fl.max_subdivisions,
                  "adaptive quadrature panel budget");
  sub->add_option("--out", fl.out_path, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "thermal correction to the Casimir pressure between metallic "
      "half-spaces, computed on the real frequency axis"};
  app.require_subcommand(1);

  FlagSet fl;
  CLI::App* force = app.add_subcommand(
      "force", "four-channel pressure breakdown, optional cross-check sum");
  add_common(force, fl);
  force->add_flag("--verify", fl.verify,
                  "also evaluate the discrete-frequency cross-check");
  force->add_option("--n-max", fl.n_max,
                    "term budget for the cross-check sum");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "spectral density of the dominant evanescent channel");
  add_common(spectrum, fl);
  spectrum->add_option("--var", fl.var, "spectral variable: v|u|omega");
  spectrum->add_option("--fraction", fl.fraction,
                       "contribution fraction for the reported range");
  spectrum->add_option("--grid", fl.grid, "initial sample-grid size");

  CLI::App* applicability = app.add_subcommand(
      "applicability", "wavelength vs interaction-spot-size report");
  add_common(applicability, fl);
  applicability->add_option("--radius", fl.radius, "sphere radius (um|mm|m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;
  }

  try {
    if (force->parsed()) return dispatch(RunCommand::force, *force, fl);
    if (spectrum->parsed()) return dispatch(RunCommand::spectrum, *spectrum, fl);
    return dispatch(RunCommand::applicability, *applicability, fl);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
