#pragma once

#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

enum class SpectrumVariable { v, u, omega, k_perp };

std::string to_string(SpectrumVariable var);

struct SpectrumPoint {
  double x;
  double density;
  double cumulative;  // running fraction of the signed total, 0 -> 1
};

// Sampled spectral decomposition of the TE-evanescent thermal correction.
// The cumulative column is the trapezoid running integral normalized by the
// trapezoid total; `normalization` stores the adaptive full integral of the
// density for cross-checking the sampling resolution.
struct SpectrumTable {
  SpectrumVariable variable = SpectrumVariable::v;
  std::vector<SpectrumPoint> samples;
  double normalization = 0.0;
  // for u tables: the dimensional angular frequency omega = nu c^2 u/(wp^2 l^2)
  // matching each sample
  std::vector<double> mapped_omega;
  bool converged = true;
  long evaluations = 0;
};

struct ContributionRange {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double fraction = 0.0;
};

struct SpotSize {
  double exact;   // 2 sqrt(R^2 - (R-l)^2)
  double approx;  // 2 sqrt(2 R l)
};

// Size-vs-wavelength applicability summary for a sphere-plate measurement:
// compares the longest contributing wavelength 2 pi l against the interaction
// spot L, alongside the 2 pi c / nu estimate that ties the wavelength to the
// period of the field instead of its transverse wave number.
struct ApplicabilityReport {
  double l = 0.0;
  double R = 0.0;
  double lambda_max = 0.0;            // 2 pi l
  SpotSize spot;                      // L
  bool criterion_spot = false;        // lambda_max < L_exact
  double threshold_separation = 0.0;  // 2 R / pi^2
  double ref_wavelength_estimate = 0.0;  // 2 pi c / nu
  bool criterion_ref = false;            // 2 pi c / nu < L_exact
};

// density v^2 g(v) sampled on the given grid (log-spaced recommended,
// default domain [1e-3, 20]); the grid is refined by inserting geometric
// midpoints until the equal-tail 90% endpoints move by less than 1%.
SpectrumTable wavevector_spectrum(const Gap& gap, const Material& m,
                                  std::vector<double> v_grid,
                                  const QuadratureSpec& spec =
                                      default_outer_spec());

// density Bose(a u) * Int dv v^2 Im[1 - e^{2v}/r_TE^2]^{-1}; same refinement
SpectrumTable frequency_spectrum(const Gap& gap, const Material& m,
                                 std::vector<double> u_grid,
                                 const QuadratureSpec& spec =
                                     default_outer_spec());

// rescales a u table to the dimensional frequency axis
SpectrumTable to_omega_axis(const SpectrumTable& u_table);

// convenience log-spaced grids matching the defaults above
std::vector<double> default_v_grid(int n = 200);
std::vector<double> default_u_grid(const Gap& gap, const Material& m,
                                   int n = 200);

// equal-tail quantile interval: cumulative (1-f)/2 .. (1+f)/2
ContributionRange contribution_range(const SpectrumTable& table,
                                     double fraction);
// narrowest interval holding the fraction; linear and log metrics
ContributionRange minimal_width_range(const SpectrumTable& table,
                                      double fraction, bool log_metric = false);
// mass of the cumulative between two abscissae (diagnostic)
double enclosed_fraction(const SpectrumTable& table, double x_lo, double x_hi);

double wavelength_of(double k_perp);           // 2 pi / k_perp
SpotSize effective_spot_size(double R, double l);
double characteristic_frequency(double l);     // c / (2 l)

ApplicabilityReport applicability_report(const Gap& gap, const Material& m,
                                         double R);

}  // namespace casimir
