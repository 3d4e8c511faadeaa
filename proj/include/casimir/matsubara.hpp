#pragma once

#include "casimir/lifshitz.hpp"

namespace casimir {

struct MatsubaraSpec {
  long n_max = 2000;           // terms before tail extrapolation
  double tail_rel_tol = 1e-9;  // truncate when |term| < tol * |partial sum|
};

struct OracleResult {
  double pressure = 0.0;        // Pa
  double error_estimate = 0.0;  // Pa
  long evaluations = 0;
  long terms = 0;          // Matsubara terms actually summed (0 for T = 0)
  bool converged = false;  // false when n_max was hit before the tail target
};

// Imaginary-axis Casimir pressure
//   F(l,T) = -(k_B T/pi) Sum'_{n>=0} Int_0^inf k dk q_n [sum over TM/TE of
//            r_s^2 e^{-2 q_n l}/(1 - r_s^2 e^{-2 q_n l})]
// with xi_n = 2 pi n k_B T/hbar, q_n = sqrt(k^2 + xi_n^2/c^2) and the n = 0
// term at half weight.  The n = 0 reflections use the xi -> 0 limits:
// r_TM = 1 for both models; r_TE = 0 for Drude and the finite plasma value
// for Plasma.  Truncated sums get a geometric tail extrapolation.
OracleResult pressure_matsubara(const Gap& gap, const Medium& med,
                                const MatsubaraSpec& mspec = {},
                                const QuadratureSpec& qspec =
                                    default_outer_spec());

// Same with perfect-mirror reflections r_TM = 1, r_TE = -1 forced at every
// frequency; reference limit for large plasma frequencies.
OracleResult pressure_matsubara_ideal(const Gap& gap,
                                      const MatsubaraSpec& mspec = {},
                                      const QuadratureSpec& qspec =
                                          default_outer_spec());

// Zero-temperature pressure: the sum replaced by (hbar/2pi) Int_0^inf dxi of
// the same k-integral.
OracleResult pressure_zero_temperature(const Gap& gap, const Medium& med,
                                       const QuadratureSpec& qspec =
                                           default_outer_spec());
OracleResult pressure_zero_temperature_ideal(const Gap& gap,
                                             const QuadratureSpec& qspec =
                                                 default_outer_spec());

// pressure_matsubara - pressure_zero_temperature; cross-validation target for
// the real-frequency channel sum.
OracleResult thermal_correction_oracle(const Gap& gap, const Medium& med,
                                       const MatsubaraSpec& mspec = {},
                                       const QuadratureSpec& qspec =
                                           default_outer_spec());

}  // namespace casimir
