#pragma once

#include <optional>

#include "casimir/em_kernel.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct Gap {
  double separation;   // m, > 0
  double temperature;  // K, > 0
};

struct Channel {
  Polarization polarization;
  Sector sector;
};

struct ChannelResult {
  double pressure = 0.0;        // Pa
  double error_estimate = 0.0;  // Pa
  long evaluations = 0;
  bool converged = false;
};

struct PressureBreakdown {
  ChannelResult te_evanescent, tm_evanescent, te_propagating, tm_propagating;
  double total = 0.0;        // Pa, signed sum of the four channels
  double total_error = 0.0;  // Pa
  bool converged = false;

  const ChannelResult& channel(Channel ch) const;
  // signed ratio channel/total and |channel| / sum of |channel|
  double signed_share(const ChannelResult& ch) const;
  double magnitude_share(const ChannelResult& ch) const;
};

// nullopt models the empty gap (eps = 1): every reflection coefficient is
// zero and all pressures vanish identically.
using Medium = std::optional<Material>;

// thermal occupation 1/(exp(hbar w / k_B T) - 1), expm1-based so the
// small-argument 1/x limit keeps full accuracy
double bose_factor(double omega, double T);

inline QuadratureSpec default_outer_spec() { return {1e-7, 0.0, 2000, {}}; }
inline QuadratureSpec inner_spec_from(const QuadratureSpec& outer) {
  QuadratureSpec s = outer;
  s.rel_tol = 0.1 * outer.rel_tol;
  s.abs_tol = 0.0;
  return s;
}

// Thermal correction to the Casimir pressure restricted to one
// polarization x sector channel:
//   -(hbar/pi^2) Int dk_perp k_perp Int dw n(w) Im{ q r^2 e^{-2lq} / (1 - r^2 e^{-2lq}) }
// Evanescent sector: w in (0, c k_perp); for Drude media the inner variable
// is the substituted u = wp^2 l^2 w / (nu c^2), which turns the relaxation
// and Bose scales into O(1) ranges.  Propagating sector: inner variable
// k_z in (0, inf) where e^{-2 i l k_z} has exact period pi/l.
ChannelResult thermal_pressure_channel(const Gap& gap, const Medium& med,
                                       Channel ch,
                                       const QuadratureSpec& outer_spec =
                                           default_outer_spec());

// All four channels and their signed sum.
PressureBreakdown thermal_pressure_total(const Gap& gap, const Medium& med,
                                         const QuadratureSpec& outer_spec =
                                             default_outer_spec());

// Dedicated dimensionless form of the TE evanescent channel (Drude only):
//   F = (hbar nu c^2 / (pi^2 wp^2 l^5)) Int_0^inf dv v^2 g(v)
// with g from te_evanescent_g below.  Throws std::domain_error when the
// material has no relaxation (use the channel evaluator for Plasma).
ChannelResult te_evanescent_dimensionless(const Gap& gap, const Material& m,
                                          const QuadratureSpec& outer_spec =
                                              default_outer_spec());

// g(v) = Int_0^inf du [exp(a u) - 1]^{-1} Im[1 - e^{2v}/r_TE^2(u,v)]^{-1},
// evaluated as Im[-x/(1-x)] with x = r_TE^2 e^{-2v} so large v cannot
// overflow.  This is the inner integral of the dimensionless form and the
// sample density (times v^2) of the wave-vector spectrum.
QuadratureResult te_evanescent_g(double v, const Gap& gap, const Material& m,
                                 const QuadratureSpec& inner_spec);

// dimensionless Bose scale a = (hbar nu / k_B T) c^2/(wp^2 l^2)
double dimensionless_bose_scale(const Gap& gap, const Material& m);
// prefactor hbar nu c^2 / (pi^2 wp^2 l^5) of the dimensionless form, Pa
double te_evanescent_prefactor(const Gap& gap, const Material& m);

}  // namespace casimir
