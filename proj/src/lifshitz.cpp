#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace casimir {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_gap(const Gap& gap) {
  if (!(gap.separation > 0.0) || !(gap.temperature > 0.0))
    throw std::domain_error("Gap requires separation > 0 and temperature > 0");
}

// r^2 d / (1 - r^2 d) with d = e^{-2lq}; algebraically [r^{-2} e^{2lq} - 1]^{-1}
// but free of e^{+2lq} overflow
std::complex<double> pair_fraction(std::complex<double> r,
                                   std::complex<double> decay) {
  const auto x = r * r * decay;
  return x / (1.0 - x);
}

// Bose factor x Im{ q [r^{-2} e^{2lq} - 1]^{-1} } at one (omega, k_perp)
double channel_integrand(const Medium& med, Polarization pol, double l,
                         double T, double omega, double k_perp) {
  const double n = bose_factor(omega, T);
  if (n == 0.0 || !med) return 0.0;
  const WavePoint pt{omega, k_perp};
  const auto r = fresnel(pt, permittivity(*med, omega), pol);
  const auto q = vacuum_momentum_q(pt);
  const auto decay = std::exp(-2.0 * l * q);
  return n * std::imag(q * pair_fraction(r, decay));
}

// head integral over (0, hi] with interior seed points, plus an exponential
// tail from hi with the given decay scale; the tail inherits an absolute
// tolerance from the head so a negligible tail cannot spin on rel_tol
template <class F>
QuadratureResult head_plus_tail(F&& f, double hi, std::vector<double> cuts,
                                double tail_scale, const QuadratureSpec& spec) {
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult out;
  out.converged = true;
  double lo = 0.0;
  // first pass: locate the dominant segment scale so later segments can use
  // an absolute floor instead of chasing pure relative tolerance on noise
  double scale = 0.0;
  QuadratureSpec seg = spec;
  for (double c : cuts) {
    if (!(c > lo) || c > hi) continue;
    seg.abs_tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * scale);
    auto r = integrate_finite(f, lo, c, seg);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
    scale = std::max(scale, std::abs(out.value));
    lo = c;
  }
  if (tail_scale > 0.0) {
    seg.abs_tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * scale);
    auto t = integrate_semi_infinite(f, hi, seg, tail_scale);
    out.value += t.value;
    out.error_estimate += t.error_estimate;
    out.evaluations += t.evaluations;
    out.converged = out.converged && t.converged;
  }
  return out;
}

struct EvanescentInner {
  QuadratureResult result;
};

// inner evanescent frequency integral at fixed k_perp, substituted variable
QuadratureResult evanescent_inner(const Medium& med, Polarization pol,
                                  const Gap& gap, double k_perp,
                                  const QuadratureSpec& inner_spec) {
  const auto& C = constants();
  const double l = gap.separation;
  const double T = gap.temperature;

  // omega = kappa * u; Drude uses the relaxation-conditioned substitution,
  // Plasma/vacuum a plain thermal scaling (their integrands carry no nu scale)
  double kappa;
  std::vector<double> cuts;
  const bool drude = med && med->model == DielectricModel::Drude &&
                     med->relaxation > 0.0;
  if (drude) {
    const double wp2 = med->plasma_frequency * med->plasma_frequency;
    kappa = med->relaxation * C.c * C.c / (wp2 * l * l);
    const double a = C.hbar * kappa / (C.k_B * T);
    const double v0 = l * k_perp;  // static-limit v; TE structure sits at u ~ v0^2
    cuts = {v0 * v0, 1.0, wp2 * l * l / (C.c * C.c), 40.0 / a};
  } else {
    kappa = C.k_B * T / C.hbar;
    cuts = {1.0, 40.0};
  }
  const double u_max = C.c * k_perp / kappa;

  auto f = [&](double u) {
    return kappa * channel_integrand(med, pol, l, T, kappa * u, k_perp);
  };

  // strictly interior cuts; the light-cone endpoint u_max terminates the head
  std::vector<double> interior;
  for (double c : cuts)
    if (c > 0.0 && c < u_max) interior.push_back(c);
  return head_plus_tail(f, u_max, std::move(interior), 0.0, inner_spec);
}

QuadratureResult propagating_inner(const Medium& med, Polarization pol,
                                   const Gap& gap, double k_perp,
                                   const QuadratureSpec& inner_spec) {
  const auto& C = constants();
  const double l = gap.separation;
  const double T = gap.temperature;
  auto f = [&](double k_z) {
    const double omega = C.c * std::hypot(k_perp, k_z);
    const double jac = C.c * C.c * k_z / omega;  // d omega = jac d k_z
    return jac * channel_integrand(med, pol, l, T, omega, k_perp);
  };
  return integrate_oscillatory(f, 0.0, std::nullopt, pi / l, inner_spec);
}

ChannelResult assemble(double prefactor, const QuadratureResult& outer,
                       double inner_rel, long inner_evals, bool inner_ok) {
  ChannelResult res;
  res.pressure = prefactor * outer.value;
  if (res.pressure == 0.0) res.pressure = 0.0;  // normalize -0
  // outer panel estimate plus the inner tolerance folded through the value
  res.error_estimate = std::abs(prefactor) * outer.error_estimate +
                       std::abs(res.pressure) * inner_rel;
  res.evaluations = outer.evaluations + inner_evals;
  res.converged = outer.converged && inner_ok;
  return res;
}

}  // namespace

double bose_factor(double omega, double T) {
  if (!(omega > 0.0)) throw std::domain_error("bose_factor: omega must be > 0");
  if (!(T > 0.0)) throw std::domain_error("bose_factor: T must be > 0");
  const auto& C = constants();
  return 1.0 / std::expm1(C.hbar * omega / (C.k_B * T));
}

const ChannelResult& PressureBreakdown::channel(Channel ch) const {
  if (ch.sector == Sector::Evanescent)
    return ch.polarization == Polarization::TE ? te_evanescent : tm_evanescent;
  return ch.polarization == Polarization::TE ? te_propagating : tm_propagating;
}

double PressureBreakdown::signed_share(const ChannelResult& ch) const {
  return total != 0.0 ? ch.pressure / total : 0.0;
}

double PressureBreakdown::magnitude_share(const ChannelResult& ch) const {
  const double mag = std::abs(te_evanescent.pressure) +
                     std::abs(tm_evanescent.pressure) +
                     std::abs(te_propagating.pressure) +
                     std::abs(tm_propagating.pressure);
  return mag != 0.0 ? std::abs(ch.pressure) / mag : 0.0;
}

ChannelResult thermal_pressure_channel(const Gap& gap, const Medium& med,
                                       Channel ch,
                                       const QuadratureSpec& outer_spec) {
  check_gap(gap);
  const auto& C = constants();
  const QuadratureSpec inner_spec = inner_spec_from(outer_spec);

  long inner_evals = 0;
  bool inner_ok = true;
  double inner_scale = 0.0;  // largest |inner| seen: abs floor for dead points
  auto outer_f = [&](double k_perp) {
    QuadratureSpec spec_i = inner_spec;
    spec_i.abs_tol =
        std::max(inner_spec.abs_tol, 0.1 * inner_spec.rel_tol * inner_scale);
    const auto inner =
        ch.sector == Sector::Evanescent
            ? evanescent_inner(med, ch.polarization, gap, k_perp, spec_i)
            : propagating_inner(med, ch.polarization, gap, k_perp, spec_i);
    inner_evals += inner.evaluations;
    inner_ok = inner_ok && inner.converged;
    inner_scale = std::max(inner_scale, std::abs(inner.value));
    return k_perp * inner.value;
  };

  const double decay_scale = ch.sector == Sector::Evanescent
                                 ? 0.5 / gap.separation
                                 : C.k_B * gap.temperature / (C.hbar * C.c);
  const auto outer =
      integrate_semi_infinite(outer_f, 0.0, outer_spec, decay_scale);
  return assemble(-C.hbar / (pi * pi), outer, inner_spec.rel_tol, inner_evals,
                  inner_ok);
}

PressureBreakdown thermal_pressure_total(const Gap& gap, const Medium& med,
                                         const QuadratureSpec& outer_spec) {
  PressureBreakdown out;
  out.te_evanescent = thermal_pressure_channel(
      gap, med, {Polarization::TE, Sector::Evanescent}, outer_spec);
  out.tm_evanescent = thermal_pressure_channel(
      gap, med, {Polarization::TM, Sector::Evanescent}, outer_spec);
  out.te_propagating = thermal_pressure_channel(
      gap, med, {Polarization::TE, Sector::Propagating}, outer_spec);
  out.tm_propagating = thermal_pressure_channel(
      gap, med, {Polarization::TM, Sector::Propagating}, outer_spec);
  for (const ChannelResult* ch :
       {&out.te_evanescent, &out.tm_evanescent, &out.te_propagating,
        &out.tm_propagating}) {
    out.total += ch->pressure;
    out.total_error += ch->error_estimate;
  }
  out.converged = out.te_evanescent.converged && out.tm_evanescent.converged &&
                  out.te_propagating.converged && out.tm_propagating.converged;
  return out;
}

double dimensionless_bose_scale(const Gap& gap, const Material& m) {
  const auto& C = constants();
  const double l = gap.separation;
  return (C.hbar * m.relaxation / (C.k_B * gap.temperature)) * C.c * C.c /
         (m.plasma_frequency * m.plasma_frequency * l * l);
}

double te_evanescent_prefactor(const Gap& gap, const Material& m) {
  const auto& C = constants();
  const double l = gap.separation;
  return C.hbar * m.relaxation * C.c * C.c /
         (pi * pi * m.plasma_frequency * m.plasma_frequency * l * l * l * l * l);
}

QuadratureResult te_evanescent_g(double v, const Gap& gap, const Material& m,
                                 const QuadratureSpec& inner_spec) {
  check_gap(gap);
  const auto& C = constants();
  const double l = gap.separation;
  const double a = dimensionless_bose_scale(gap, m);
  const double wpl2 =
      m.plasma_frequency * m.plasma_frequency * l * l / (C.c * C.c);

  auto f = [&](double u) {
    const auto r = fresnel_te_dimensionless(u, v, m, l);
    const auto x = r * r * std::exp(-2.0 * v);
    return std::imag(-x / (1.0 - x)) / std::expm1(a * u);
  };
  return head_plus_tail(f, 40.0 / a, {v * v, 1.0, wpl2}, 1.0 / a, inner_spec);
}

ChannelResult te_evanescent_dimensionless(const Gap& gap, const Material& m,
                                          const QuadratureSpec& outer_spec) {
  check_gap(gap);
  if (m.model != DielectricModel::Drude || !(m.relaxation > 0.0))
    throw std::domain_error(
        "te_evanescent_dimensionless: requires a Drude material with nu > 0 "
        "(use the channel evaluator for Plasma)");

  const QuadratureSpec inner_spec = inner_spec_from(outer_spec);
  long inner_evals = 0;
  bool inner_ok = true;
  auto outer_f = [&](double v) {
    const auto g = te_evanescent_g(v, gap, m, inner_spec);
    inner_evals += g.evaluations;
    inner_ok = inner_ok && g.converged;
    return v * v * g.value;
  };
  const auto outer = integrate_semi_infinite(outer_f, 0.0, outer_spec, 1.0);
  return assemble(te_evanescent_prefactor(gap, m), outer, inner_spec.rel_tol,
                  inner_evals, inner_ok);
}

}  // namespace casimir
