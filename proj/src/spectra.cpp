#include "casimir/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace casimir {

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

// insert geometric midpoints between neighbours
std::vector<double> refine_grid(const std::vector<double>& g) {
  std::vector<double> out;
  out.reserve(2 * g.size() - 1);
  for (size_t i = 0; i + 1 < g.size(); ++i) {
    out.push_back(g[i]);
    out.push_back(std::sqrt(g[i] * g[i + 1]));
  }
  out.push_back(g.back());
  return out;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 8)
    throw std::domain_error("spectrum grid needs at least 8 samples");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] > 0.0) || !(grid[i] < grid[i + 1]))
      throw std::domain_error("spectrum grid must be positive and increasing");
}

// trapezoid cumulative, normalized to end at exactly 1
void fill_cumulative(SpectrumTable& t) {
  double run = 0.0;
  std::vector<double> partial(t.samples.size(), 0.0);
  for (size_t i = 1; i < t.samples.size(); ++i) {
    run += 0.5 * (t.samples[i].density + t.samples[i - 1].density) *
           (t.samples[i].x - t.samples[i - 1].x);
    partial[i] = run;
  }
  if (run == 0.0)
    throw std::runtime_error("spectrum density integrated to zero");
  // the density must keep a single sign over the grid for the cumulative to
  // be a contribution fraction; a sign change would make this nonsensical
  for (size_t i = 1; i < partial.size(); ++i)
    if (partial[i] < partial[i - 1] - 1e-9 * std::abs(run))
      throw std::runtime_error("spectrum density changes sign across the grid");
  for (size_t i = 0; i < partial.size(); ++i)
    t.samples[i].cumulative = partial[i] / run;
}

double interp_quantile(const SpectrumTable& t, double frac) {
  const auto& s = t.samples;
  if (frac <= s.front().cumulative) return s.front().x;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i].cumulative >= frac) {
      const double c0 = s[i - 1].cumulative, c1 = s[i].cumulative;
      if (c1 == c0) return s[i].x;
      const double w = (frac - c0) / (c1 - c0);
      return s[i - 1].x + w * (s[i].x - s[i - 1].x);
    }
  }
  return s.back().x;
}

double interp_cumulative(const SpectrumTable& t, double x) {
  const auto& s = t.samples;
  if (x <= s.front().x) return s.front().cumulative;
  if (x >= s.back().x) return s.back().cumulative;
  auto it = std::lower_bound(
      s.begin(), s.end(), x,
      [](const SpectrumPoint& p, double v) { return p.x < v; });
  const auto hi = it, lo = it - 1;
  const double w = (x - lo->x) / (hi->x - lo->x);
  return lo->cumulative + w * (hi->cumulative - lo->cumulative);
}

template <class Density>
SpectrumTable build_table(SpectrumVariable var, std::vector<double> grid,
                          Density&& density, double normalization,
                          bool norm_converged, long norm_evals) {
  check_grid(grid);
  SpectrumTable t;
  t.variable = var;
  t.normalization = normalization;
  t.converged = norm_converged;
  t.evaluations = norm_evals;

  long spent = 0;
  auto sample_all = [&](const std::vector<double>& g) {
    SpectrumTable nt = t;
    nt.samples.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      auto r = density(g[i]);
      nt.samples[i] = {g[i], r.value, 0.0};
      spent += r.evaluations;
      nt.converged = nt.converged && r.converged;
    }
    fill_cumulative(nt);
    return nt;
  };

  SpectrumTable cur = sample_all(grid);
  // refine until the equal-tail 90% endpoints settle to < 1%
  for (int round = 0; round < 4; ++round) {
    const double lo0 = interp_quantile(cur, 0.05);
    const double hi0 = interp_quantile(cur, 0.95);
    grid = refine_grid(grid);
    SpectrumTable next = sample_all(grid);
    const double lo1 = interp_quantile(next, 0.05);
    const double hi1 = interp_quantile(next, 0.95);
    cur = std::move(next);
    if (std::abs(lo1 - lo0) <= 0.01 * std::abs(lo0) &&
        std::abs(hi1 - hi0) <= 0.01 * std::abs(hi0))
      break;
  }
  cur.evaluations += spent;
  return cur;
}

}  // namespace

std::string to_string(SpectrumVariable var) {
  switch (var) {
    case SpectrumVariable::v: return "v";
    case SpectrumVariable::u: return "u";
    case SpectrumVariable::omega: return "omega";
    case SpectrumVariable::k_perp: return "k_perp";
  }
  return "?";
}

std::vector<double> default_v_grid(int n) { return log_grid(1e-3, 20.0, n); }

std::vector<double> default_u_grid(const Gap& gap, const Material& m, int n) {
  const double a = dimensionless_bose_scale(gap, m);
  return log_grid(1e-4, 1e3 / a, n);
}

SpectrumTable wavevector_spectrum(const Gap& gap, const Material& m,
                                  std::vector<double> v_grid,
                                  const QuadratureSpec& spec) {
  if (m.model != DielectricModel::Drude || !(m.relaxation > 0.0))
    throw std::domain_error("wavevector_spectrum: requires Drude with nu > 0");
  const QuadratureSpec inner = inner_spec_from(spec);
  auto density = [&](double v) {
    auto g = te_evanescent_g(v, gap, m, inner);
    g.value *= v * v;
    return g;
  };
  // normalization: the adaptive full integral of the same density
  const auto whole = te_evanescent_dimensionless(gap, m, spec);
  const double norm = whole.pressure / te_evanescent_prefactor(gap, m);
  return build_table(SpectrumVariable::v, std::move(v_grid), density, norm,
                     whole.converged, whole.evaluations);
}

SpectrumTable frequency_spectrum(const Gap& gap, const Material& m,
                                 std::vector<double> u_grid,
                                 const QuadratureSpec& spec) {
  if (m.model != DielectricModel::Drude || !(m.relaxation > 0.0))
    throw std::domain_error("frequency_spectrum: requires Drude with nu > 0");
  const auto& C = constants();
  const double l = gap.separation;
  const double a = dimensionless_bose_scale(gap, m);
  const QuadratureSpec inner = inner_spec_from(spec);

  auto density = [&](double u) {
    auto f = [&](double v) {
      const auto r = fresnel_te_dimensionless(u, v, m, l);
      const auto x = r * r * std::exp(-2.0 * v);
      return v * v * std::imag(-x / (1.0 - x));
    };
    // v-integrand peaks at v ~ 1 and dies like e^{-2v}
    QuadratureSpec seg = inner;
    auto head = integrate_finite(f, 0.0, 2.0, seg);
    seg.abs_tol = std::max(inner.abs_tol,
                           0.1 * inner.rel_tol * std::abs(head.value));
    auto tail = integrate_semi_infinite(f, 2.0, seg, 0.5);
    head.value += tail.value;
    head.error_estimate += tail.error_estimate;
    head.evaluations += tail.evaluations;
    head.converged = head.converged && tail.converged;
    head.value /= std::expm1(a * u);
    return head;
  };

  const auto whole = te_evanescent_dimensionless(gap, m, spec);
  const double norm = whole.pressure / te_evanescent_prefactor(gap, m);
  auto t = build_table(SpectrumVariable::u, std::move(u_grid), density, norm,
                       whole.converged, whole.evaluations);
  const double kappa =
      m.relaxation * C.c * C.c / (m.plasma_frequency * m.plasma_frequency * l * l);
  t.mapped_omega.reserve(t.samples.size());
  for (const auto& s : t.samples) t.mapped_omega.push_back(kappa * s.x);
  return t;
}

SpectrumTable to_omega_axis(const SpectrumTable& u_table) {
  if (u_table.variable != SpectrumVariable::u ||
      u_table.mapped_omega.size() != u_table.samples.size())
    throw std::domain_error("to_omega_axis: input must be a u table");
  SpectrumTable t = u_table;
  t.variable = SpectrumVariable::omega;
  const double kappa = u_table.mapped_omega.front() / u_table.samples.front().x;
  for (size_t i = 0; i < t.samples.size(); ++i) {
    t.samples[i].x = u_table.mapped_omega[i];
    t.samples[i].density = u_table.samples[i].density / kappa;
  }
  t.mapped_omega.clear();
  return t;
}

ContributionRange contribution_range(const SpectrumTable& table,
                                     double fraction) {
  if (!(fraction > 0.0) || !(fraction < 1.0))
    throw std::domain_error("contribution_range: fraction must be in (0,1)");
  if (table.samples.size() < 2)
    throw std::domain_error("contribution_range: empty table");
  ContributionRange r;
  r.fraction = fraction;
  r.x_lo = interp_quantile(table, 0.5 * (1.0 - fraction));
  r.x_hi = interp_quantile(table, 0.5 * (1.0 + fraction));
  return r;
}

ContributionRange minimal_width_range(const SpectrumTable& table,
                                      double fraction, bool log_metric) {
  if (!(fraction > 0.0) || !(fraction < 1.0))
    throw std::domain_error("minimal_width_range: fraction must be in (0,1)");
  ContributionRange best;
  best.fraction = fraction;
  double best_width = std::numeric_limits<double>::infinity();
  for (const auto& s : table.samples) {
    const double target = s.cumulative + fraction;
    if (target > 1.0) break;
    const double hi = interp_quantile(table, target);
    const double width = log_metric ? hi / s.x : hi - s.x;
    if (width < best_width) {
      best_width = width;
      best.x_lo = s.x;
      best.x_hi = hi;
    }
  }
  return best;
}

double enclosed_fraction(const SpectrumTable& table, double x_lo, double x_hi) {
  return interp_cumulative(table, x_hi) - interp_cumulative(table, x_lo);
}

double wavelength_of(double k_perp) {
  if (!(k_perp > 0.0)) throw std::domain_error("wavelength_of: k_perp must be > 0");
  return 2.0 * pi / k_perp;
}

SpotSize effective_spot_size(double R, double l) {
  if (!(l > 0.0) || !(l < R))
    throw std::domain_error("effective_spot_size: requires 0 < l < R");
  return {2.0 * std::sqrt(R * R - (R - l) * (R - l)),
          2.0 * std::sqrt(2.0 * R * l)};
}

double characteristic_frequency(double l) {
  if (!(l > 0.0))
    throw std::domain_error("characteristic_frequency: l must be > 0");
  return 0.5 * constants().c / l;
}

ApplicabilityReport applicability_report(const Gap& gap, const Material& m,
                                         double R) {
  ApplicabilityReport rep;
  rep.l = gap.separation;
  rep.R = R;
  rep.spot = effective_spot_size(R, gap.separation);  // validates l < R
  rep.lambda_max = 2.0 * pi * gap.separation;
  rep.criterion_spot = rep.lambda_max < rep.spot.exact;
  rep.threshold_separation = 2.0 * R / (pi * pi);
  rep.ref_wavelength_estimate =
      m.relaxation > 0.0 ? 2.0 * pi * constants().c / m.relaxation
                         : std::numeric_limits<double>::infinity();
  rep.criterion_ref = rep.ref_wavelength_estimate < rep.spot.exact;
  return rep;
}

}  // namespace casimir
