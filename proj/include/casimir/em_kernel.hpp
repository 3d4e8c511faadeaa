#pragma once

#include <complex>

#include "casimir/material.hpp"

namespace casimir {

struct WavePoint {
  double omega;   // rad/s, > 0
  double k_perp;  // 1/m, >= 0
};

enum class Sector { Propagating, Evanescent };
enum class Polarization { TM, TE };

// k_perp < omega/c -> Propagating; otherwise Evanescent.  Points exactly on
// the light cone count as Evanescent (measure-zero bookkeeping convention).
Sector classify(const WavePoint& p);

// Complex square root restricted to the closed right half plane, with the
// Re == 0 edge resolved to Im <= 0.  The principal branch is corrected
// explicitly so the convention does not depend on the host math library.
std::complex<double> half_plane_sqrt(std::complex<double> z);

// Vacuum transverse momentum q with q^2 = k_perp^2 - omega^2/c^2.
// Evanescent: q real > 0.  Propagating: q = -i k_z with k_z real > 0, so
// exp(2 l q) = exp(-2 i l k_z) has unit modulus.
std::complex<double> vacuum_momentum_q(const WavePoint& p);

// Medium momentum k with k^2 = k_perp^2 - eps omega^2/c^2, branch Re k >= 0
// (Im k < 0 on the Re k = 0 edge); coincides with q at eps = 1.
std::complex<double> medium_momentum_k(const WavePoint& p,
                                       std::complex<double> eps);

// Fresnel reflection coefficient of the vacuum/half-space interface:
//   TM: (eps q - k) / (eps q + k),   TE: (q - k) / (q + k)
std::complex<double> fresnel(const WavePoint& p, std::complex<double> eps,
                             Polarization pol);

// TE reflection coefficient in the dimensionless variables
//   u = wp^2 l^2 omega / (nu c^2),  v = l q:
//   r = (v - w)/(v + w),  w = sqrt(v^2 + wp^2 l^2 u / (i wp^2 l^2 + c^2 u))
// Only the plasma frequency of the material enters.  Throws for u <= 0.
std::complex<double> fresnel_te_dimensionless(double u, double v,
                                              const Material& m, double l);

}  // namespace casimir
