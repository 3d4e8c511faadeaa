#pragma once

namespace casimir {

// CODATA 2018 values (SI). Single source for every physical number used by
// the library; all acceptance figures trace back to this table.
struct PhysicalConstants {
  double c;     // speed of light, m/s
  double hbar;  // reduced Planck constant, J s
  double k_B;   // Boltzmann constant, J/K
  double e;     // elementary charge, C
};

inline constexpr PhysicalConstants codata2018{
    299792458.0, 1.054571817e-34, 1.380649e-23, 1.602176634e-19};

inline const PhysicalConstants& constants() { return codata2018; }

// energy in eV -> angular frequency in rad/s (omega = E e / hbar)
double ev_to_angular_frequency(double energy_ev);

}  // namespace casimir
