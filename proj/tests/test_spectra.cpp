#include <algorithm>
#include <cmath>

#include "casimir/spectra.hpp"
#include "approx.hpp"
#include "doctest.h"

using namespace casimir;

namespace {
constexpr double pi = 3.14159265358979323846;
const Gap paper_gap{162e-9, 300.0};

Material gold() { return material_preset("Au-paper"); }
Material lowloss() { return material_preset("Au-low-loss"); }

// cache: the refined tables are the expensive part, reuse across cases
const SpectrumTable& gold_v_table() {
  static const SpectrumTable t =
      wavevector_spectrum(paper_gap, gold(), default_v_grid());
  return t;
}
const SpectrumTable& lowloss_v_table() {
  static const SpectrumTable t =
      wavevector_spectrum(paper_gap, lowloss(), default_v_grid());
  return t;
}
const SpectrumTable& gold_u_table() {
  static const SpectrumTable t = frequency_spectrum(
      paper_gap, gold(), default_u_grid(paper_gap, gold()));
  return t;
}

SpectrumTable uniform_table() {
  // flat density on [0,1]: quantiles are exact by construction
  SpectrumTable t;
  t.variable = SpectrumVariable::v;
  const int n = 101;
  for (int i = 0; i < n; ++i) {
    const double x = double(i) / (n - 1);
    t.samples.push_back({x, 1.0, x});
  }
  t.normalization = 1.0;
  return t;
}
}  // namespace

TEST_CASE("variable names") {
  CHECK(to_string(SpectrumVariable::v) == "v");
  CHECK(to_string(SpectrumVariable::u) == "u");
  CHECK(to_string(SpectrumVariable::omega) == "omega");
}

TEST_CASE("quantiles of a flat density") {
  const auto t = uniform_table();
  const auto r = contribution_range(t, 0.9);
  CHECK(r.x_lo == testutil::Approx(0.05).epsilon(1e-12));
  CHECK(r.x_hi == testutil::Approx(0.95).epsilon(1e-12));
  CHECK(r.fraction == 0.9);

  // for a flat density the minimal-width interval has the same length
  const auto m = minimal_width_range(t, 0.9);
  CHECK(m.x_hi - m.x_lo == testutil::Approx(0.9).epsilon(1e-6));

  CHECK(enclosed_fraction(t, 0.25, 0.75) == testutil::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(contribution_range(t, 0.0), std::domain_error);
  CHECK_THROWS_AS(contribution_range(t, 1.0), std::domain_error);
  CHECK_THROWS_AS(minimal_width_range(t, -0.2), std::domain_error);
}

TEST_CASE("wave-vector spectrum of the pinned gold point") {
  const auto& t = gold_v_table();
  CHECK(t.converged);
  CHECK(t.variable == SpectrumVariable::v);
  REQUIRE(t.samples.size() >= 8);

  // cumulative runs monotonically 0 -> 1
  CHECK(t.samples.front().cumulative == 0.0);
  CHECK(t.samples.back().cumulative == testutil::Approx(1.0).epsilon(1e-12));
  for (size_t i = 1; i < t.samples.size(); ++i) {
    CHECK(t.samples[i].cumulative >= t.samples[i - 1].cumulative - 1e-12);
    CHECK(t.samples[i].x > t.samples[i - 1].x);
  }

  // the density is concentrated around v ~ 1: peak location and tails
  const auto peak = std::max_element(
      t.samples.begin(), t.samples.end(),
      [](const SpectrumPoint& a, const SpectrumPoint& b) {
        return a.density < b.density;
      });
  CHECK(peak->x > 0.3);
  CHECK(peak->x < 3.0);
  CHECK(t.samples.front().density < 1e-2 * peak->density);
  CHECK(t.samples.back().density < 1e-6 * peak->density);

  // trapezoid mass of the samples reproduces the adaptive normalization
  double trapz = 0.0;
  for (size_t i = 1; i < t.samples.size(); ++i) {
    trapz += 0.5 * (t.samples[i].density + t.samples[i - 1].density) *
             (t.samples[i].x - t.samples[i - 1].x);
  }
  CHECK(trapz == testutil::Approx(t.normalization).epsilon(1e-2));

  // equal-tail 90% window, frozen
  const auto r = contribution_range(t, 0.9);
  CHECK(r.x_lo == testutil::Approx(0.191979142748).epsilon(3e-3));
  CHECK(r.x_hi == testutil::Approx(2.21037770208).epsilon(3e-3));

  // nesting: the 50% window sits inside the 90% window
  const auto r50 = contribution_range(t, 0.5);
  CHECK(r50.x_lo > r.x_lo);
  CHECK(r50.x_hi < r.x_hi);

  // minimal-width windows hold their mass and beat the equal-tail window
  // in their own metric
  const auto mlin = minimal_width_range(t, 0.9, false);
  CHECK(enclosed_fraction(t, mlin.x_lo, mlin.x_hi) >= 0.9 - 1e-3);
  CHECK(mlin.x_hi - mlin.x_lo <= r.x_hi - r.x_lo + 1e-9);

  const auto mlog = minimal_width_range(t, 0.9, true);
  CHECK(enclosed_fraction(t, mlog.x_lo, mlog.x_hi) >= 0.9 - 1e-3);
  CHECK(std::log(mlog.x_hi / mlog.x_lo) <=
        std::log(r.x_hi / r.x_lo) + 1e-9);
}

TEST_CASE("low-loss metal shifts the window only slightly") {
  const auto r_paper = contribution_range(gold_v_table(), 0.9);
  const auto r_low = contribution_range(lowloss_v_table(), 0.9);

  CHECK(r_low.x_lo == testutil::Approx(0.211979).epsilon(5e-3));
  CHECK(r_low.x_hi == testutil::Approx(2.399224).epsilon(5e-3));

  // three decades of relaxation move the endpoints by only ~10%
  CHECK(std::abs(r_low.x_lo - r_paper.x_lo) / r_paper.x_lo < 0.12);
  CHECK(std::abs(r_low.x_hi - r_paper.x_hi) / r_paper.x_hi < 0.10);

  // both windows carry ~90% of the mass when widened to [~0.27, 3]
  CHECK(enclosed_fraction(gold_v_table(), 0.26, 3.0) ==
        testutil::Approx(0.9040).epsilon(5e-3));
  CHECK(enclosed_fraction(lowloss_v_table(), 0.28, 3.0) ==
        testutil::Approx(0.9015).epsilon(5e-3));
}

TEST_CASE("grid refinement has converged at the default resolution") {
  const auto coarse =
      wavevector_spectrum(paper_gap, gold(), default_v_grid(100));
  const auto r100 = contribution_range(coarse, 0.9);
  const auto r200 = contribution_range(gold_v_table(), 0.9);
  CHECK(std::abs(r100.x_lo - r200.x_lo) / r200.x_lo < 0.01);
  CHECK(std::abs(r100.x_hi - r200.x_hi) / r200.x_hi < 0.01);
}

TEST_CASE("frequency spectrum") {
  const auto& t = gold_u_table();
  CHECK(t.converged);
  CHECK(t.variable == SpectrumVariable::u);
  REQUIRE(t.mapped_omega.size() == t.samples.size());

  // u = omega/nu measured in scaled units: the support ends near the
  // relaxation frequency, u(omega = nu) = wp^2 l^2/c^2 ~ 54.6
  const Material m = gold();
  const double l = paper_gap.separation;
  const double u_at_nu = m.plasma_frequency * m.plasma_frequency * l * l /
                         (constants().c * constants().c);
  CHECK(u_at_nu == testutil::Approx(54.593647).epsilon(1e-4));

  // at least 95% of the correction accumulates below omega = nu
  const double below = enclosed_fraction(t, t.samples.front().x, u_at_nu);
  CHECK(below >= 0.95);

  // the 90% window in u, frozen loosely
  const auto r = contribution_range(t, 0.9);
  CHECK(r.x_lo == testutil::Approx(0.618256).epsilon(2e-2));
  CHECK(r.x_hi == testutil::Approx(53.950384).epsilon(2e-2));

  // mapped omegas follow omega = kappa u with a single positive kappa
  const double kappa = t.mapped_omega.front() / t.samples.front().x;
  CHECK(kappa > 0.0);
  for (size_t i = 0; i < t.samples.size(); ++i) {
    CHECK(t.mapped_omega[i] ==
          testutil::Approx(kappa * t.samples[i].x).epsilon(1e-12));
  }
}

TEST_CASE("frequency axis rescaling") {
  const auto& u = gold_u_table();
  const auto w = to_omega_axis(u);
  REQUIRE(w.samples.size() == u.samples.size());
  CHECK(w.variable == SpectrumVariable::omega);

  const double kappa = u.mapped_omega.front() / u.samples.front().x;
  for (size_t i = 0; i < u.samples.size(); ++i) {
    CHECK(w.samples[i].x ==
          testutil::Approx(u.samples[i].x * kappa).epsilon(1e-12));
    // same recovered kappa, same division: bitwise equal (tail densities
    // underflow to zero, where a relative check is meaningless)
    CHECK(w.samples[i].density == u.samples[i].density / kappa);
    CHECK(w.samples[i].cumulative == u.samples[i].cumulative);
  }

  // quantiles transform with the axis
  const auto ru = contribution_range(u, 0.9);
  const auto rw = contribution_range(w, 0.9);
  CHECK(rw.x_lo == testutil::Approx(ru.x_lo * kappa).epsilon(1e-9));
  CHECK(rw.x_hi == testutil::Approx(ru.x_hi * kappa).epsilon(1e-9));

  // median frequency sits within a factor 50 of the natural scale
  // nu (omega_c/omega_p)^2
  double median = 0.0;
  for (size_t i = 1; i < w.samples.size(); ++i) {
    if (w.samples[i].cumulative >= 0.5) {
      median = w.samples[i].x;
      break;
    }
  }
  const Material m = gold();
  const double wc = characteristic_frequency(paper_gap.separation);
  const double scale =
      m.relaxation * (wc / m.plasma_frequency) * (wc / m.plasma_frequency);
  CHECK(median / scale > 1.0);
  CHECK(median / scale < 50.0);

  CHECK_THROWS_AS(to_omega_axis(w), std::domain_error);  // omega, not u
  CHECK_THROWS_AS(to_omega_axis(gold_v_table()), std::domain_error);
}

TEST_CASE("geometry helpers") {
  CHECK(wavelength_of(1.0) == testutil::Approx(2.0 * pi).epsilon(1e-15));
  CHECK(wavelength_of(1.0 / paper_gap.separation) ==
        testutil::Approx(1.01787601976e-6).epsilon(1e-10));
  CHECK_THROWS_AS(wavelength_of(0.0), std::domain_error);
  CHECK_THROWS_AS(wavelength_of(-1.0), std::domain_error);

  const double R = 150e-6;
  const auto s162 = effective_spot_size(R, 162e-9);
  CHECK(s162.exact == testutil::Approx(1.39389749982e-5).epsilon(1e-9));
  CHECK(s162.approx == testutil::Approx(1.39427400463e-5).epsilon(1e-9));
  const auto s750 = effective_spot_size(R, 750e-9);
  CHECK(s750.exact == testutil::Approx(2.99624765332e-5).epsilon(1e-9));
  CHECK(s750.approx == testutil::Approx(3.0e-5).epsilon(1e-9));
  // the chord and the parabolic estimate agree to O(l/R)
  CHECK(s162.exact < s162.approx);
  CHECK_THROWS_AS(effective_spot_size(R, 0.0), std::domain_error);
  CHECK_THROWS_AS(effective_spot_size(R, R), std::domain_error);
  CHECK_THROWS_AS(effective_spot_size(R, 2.0 * R), std::domain_error);

  // c/(2l): at l = 100 nm this sits near omega_p/9 for the gold presets
  const double wc100 = characteristic_frequency(100e-9);
  CHECK(wc100 == testutil::Approx(constants().c / 2e-7).epsilon(1e-15));
  CHECK(wc100 / gold().plasma_frequency ==
        testutil::Approx(1.0 / 9.0).epsilon(0.03));
  CHECK(characteristic_frequency(162e-9) <
        characteristic_frequency(100e-9));
  CHECK_THROWS_AS(characteristic_frequency(0.0), std::domain_error);
}

TEST_CASE("applicability report") {
  const double R = 150e-6;
  const auto rep = applicability_report(paper_gap, gold(), R);

  CHECK(rep.l == paper_gap.separation);
  CHECK(rep.R == R);
  CHECK(rep.lambda_max ==
        testutil::Approx(2.0 * pi * paper_gap.separation).epsilon(1e-15));
  CHECK(rep.threshold_separation ==
        testutil::Approx(3.03963550927e-5).epsilon(1e-9));
  CHECK(rep.ref_wavelength_estimate ==
        testutil::Approx(3.54069843479e-5).epsilon(1e-9));

  // transverse-wavelength criterion passes across the measured gap range,
  // the period-based estimate fails everywhere (it exceeds the spot)
  for (double l : {162e-9, 300e-9, 450e-9, 600e-9, 750e-9}) {
    const auto r = applicability_report({l, 300.0}, gold(), R);
    CHECK(r.criterion_spot);
    CHECK_FALSE(r.criterion_ref);
    CHECK(r.lambda_max < r.spot.exact);
    CHECK(r.ref_wavelength_estimate > r.spot.exact);
  }

  // a lossless metal has no relaxation scale: the period estimate diverges
  Material pl{DielectricModel::Plasma, gold().plasma_frequency, 0.0};
  const auto rp = applicability_report(paper_gap, pl, R);
  CHECK(std::isinf(rp.ref_wavelength_estimate));
  CHECK_FALSE(rp.criterion_ref);
}

TEST_CASE("spectrum domain guards") {
  Material pl{DielectricModel::Plasma, gold().plasma_frequency, 0.0};
  CHECK_THROWS_AS(wavevector_spectrum(paper_gap, pl, default_v_grid()),
                  std::domain_error);
  CHECK_THROWS_AS(frequency_spectrum(paper_gap, pl,
                                     default_u_grid(paper_gap, gold())),
                  std::domain_error);

  std::vector<double> tiny{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(wavevector_spectrum(paper_gap, gold(), tiny),
                  std::domain_error);
  std::vector<double> unsorted{0.1, 0.5, 0.3, 0.7, 0.9, 1.1, 1.3, 1.5};
  CHECK_THROWS_AS(wavevector_spectrum(paper_gap, gold(), unsorted),
                  std::domain_error);
}
