#include <cmath>

#include "casimir/lifshitz.hpp"
#include "approx.hpp"
#include "doctest.h"

using namespace casimir;

namespace {
const Gap paper_gap{162e-9, 300.0};

Medium gold() { return material_preset("Au-paper"); }

constexpr Channel TEev{Polarization::TE, Sector::Evanescent};
constexpr Channel TMev{Polarization::TM, Sector::Evanescent};
constexpr Channel TEpr{Polarization::TE, Sector::Propagating};
constexpr Channel TMpr{Polarization::TM, Sector::Propagating};
}  // namespace

TEST_CASE("thermal occupation factor") {
  const double T = 300.0;
  const double kT_over_hbar = constants().k_B * T / constants().hbar;

  // hbar w = kT ln 2  ->  n = 1/(2-1) = 1
  CHECK(bose_factor(kT_over_hbar * std::log(2.0), T) ==
        testutil::Approx(1.0).epsilon(1e-12));

  // small-argument limit n ~ kT/(hbar w); expm1 keeps this exact
  const double w_small = 1e-8 * kT_over_hbar;
  CHECK(bose_factor(w_small, T) * (w_small / kT_over_hbar) ==
        testutil::Approx(1.0).epsilon(1e-7));

  // deep Wien tail
  const double w_big = 40.0 * kT_over_hbar;
  CHECK(bose_factor(w_big, T) == testutil::Approx(std::exp(-40.0)).epsilon(1e-10));

  CHECK_THROWS_AS(bose_factor(0.0, 300.0), std::domain_error);
  CHECK_THROWS_AS(bose_factor(1e15, 0.0), std::domain_error);
}

TEST_CASE("channel pressures at the pinned gold point") {
  const Medium med = gold();

  const auto te_ev = thermal_pressure_channel(paper_gap, med, TEev);
  CHECK(te_ev.converged);
  CHECK(te_ev.pressure == testutil::Approx(1.653966081053e-2).epsilon(1e-6));

  const auto tm_ev = thermal_pressure_channel(paper_gap, med, TMev);
  CHECK(tm_ev.converged);
  CHECK(tm_ev.pressure == testutil::Approx(-4.680444241907e-5).epsilon(1e-6));

  const auto te_pr = thermal_pressure_channel(paper_gap, med, TEpr);
  CHECK(te_pr.converged);
  CHECK(te_pr.pressure == testutil::Approx(4.674707618629e-7).epsilon(1e-5));

  const auto tm_pr = thermal_pressure_channel(paper_gap, med, TMpr);
  CHECK(tm_pr.converged);
  CHECK(tm_pr.pressure == testutil::Approx(6.555197101095e-7).epsilon(1e-5));
}

TEST_CASE("breakdown assembles the channels") {
  const Medium med = gold();
  const auto bd = thermal_pressure_total(paper_gap, med);

  CHECK(bd.converged);
  CHECK(bd.total == testutil::Approx(1.649397935858e-2).epsilon(1e-6));
  CHECK(bd.total == testutil::Approx(bd.te_evanescent.pressure +
                                    bd.tm_evanescent.pressure +
                                    bd.te_propagating.pressure +
                                    bd.tm_propagating.pressure)
                        .epsilon(1e-15));
  CHECK(bd.total_error >= bd.te_evanescent.error_estimate);

  // channel() addresses the same objects the struct holds
  CHECK(bd.channel(TEev).pressure == bd.te_evanescent.pressure);
  CHECK(bd.channel(TMpr).pressure == bd.tm_propagating.pressure);

  // TE evanescent dominates: > 99.4% of the summed magnitudes
  CHECK(bd.magnitude_share(bd.te_evanescent) ==
        testutil::Approx(0.997110644888).epsilon(1e-4));
  CHECK(bd.magnitude_share(bd.te_evanescent) > 0.994);
  CHECK(bd.signed_share(bd.te_evanescent) > 1.0);  // TM evanescent opposes
}

TEST_CASE("lossless metal has no thermal evanescent contribution") {
  Material p{DielectricModel::Plasma, ev_to_angular_frequency(9.0), 0.0};
  const Medium med = p;

  const auto te = thermal_pressure_channel(paper_gap, med, TEev);
  CHECK(te.pressure == 0.0);
  CHECK(te.converged);

  const auto tm = thermal_pressure_channel(paper_gap, med, TMev);
  CHECK(tm.pressure == 0.0);
  CHECK(tm.converged);
}

TEST_CASE("empty gap is identically zero") {
  const auto bd = thermal_pressure_total(paper_gap, std::nullopt);
  CHECK(bd.total == 0.0);
  CHECK(bd.converged);
  CHECK(bd.te_evanescent.pressure == 0.0);
  CHECK(bd.tm_propagating.pressure == 0.0);
  CHECK(std::signbit(bd.total) == false);
  // shares degrade gracefully instead of dividing by zero
  CHECK(bd.signed_share(bd.te_evanescent) == 0.0);
  CHECK(bd.magnitude_share(bd.te_evanescent) == 0.0);
}

TEST_CASE("dimensionless TE evanescent form") {
  const Material m = material_preset("Au-paper");

  CHECK(dimensionless_bose_scale(paper_gap, m) ==
        testutil::Approx(2.481082170016e-2).epsilon(1e-10));
  CHECK(te_evanescent_prefactor(paper_gap, m) ==
        testutil::Approx(2.449068295262e-3).epsilon(1e-10));

  const auto dimless = te_evanescent_dimensionless(paper_gap, m);
  CHECK(dimless.converged);
  CHECK(dimless.pressure == testutil::Approx(1.653966081675e-2).epsilon(1e-6));

  // the two independent formulations of the same channel agree
  for (const char* name : {"Au-paper", "Au-low-loss"}) {
    const Material mat = material_preset(name);
    for (double l : {162e-9, 750e-9}) {
      const Gap g{l, 300.0};
      const double a = te_evanescent_dimensionless(g, mat).pressure;
      const double b =
          thermal_pressure_channel(g, Medium{mat}, TEev).pressure;
      CHECK(std::abs(a - b) <= 1e-4 * std::abs(b));
    }
  }

  Material p{DielectricModel::Plasma, m.plasma_frequency, 0.0};
  CHECK_THROWS_AS(te_evanescent_dimensionless(paper_gap, p),
                  std::domain_error);
}

TEST_CASE("inner profile g(v)") {
  const Material m = material_preset("Au-paper");
  const QuadratureSpec inner = inner_spec_from(default_outer_spec());

  // positive across the physically dominant window
  for (double v : {0.1, 1.0, 3.0}) {
    const auto g = te_evanescent_g(v, paper_gap, m, inner);
    CHECK(g.converged);
    CHECK(g.value > 0.0);
  }

  // g grows like 1/v toward v -> 0 (v^2 g stays integrable); v*g bounded
  const double g_small = te_evanescent_g(1e-3, paper_gap, m, inner).value;
  const double g_mid = te_evanescent_g(0.1, paper_gap, m, inner).value;
  const double g_one = te_evanescent_g(1.0, paper_gap, m, inner).value;
  CHECK(g_small > g_mid);
  CHECK(g_mid > g_one);
  CHECK(1e-3 * g_small < 10.0 * g_one);
  CHECK(1e-3 * g_small > 0.0);
}

TEST_CASE("scale self-similarity of the dimensionless form") {
  // a and wp*l are invariant under l -> 2l, wp -> wp/2 at fixed nu, T,
  // so F scales purely through the prefactor: F' = F / 2^5 * 2^2 = F / 8
  Material m = material_preset("Au-paper");
  Material m2 = m;
  m2.plasma_frequency = m.plasma_frequency / 2.0;
  const Gap g1{162e-9, 300.0};
  const Gap g2{324e-9, 300.0};

  CHECK(dimensionless_bose_scale(g1, m) ==
        testutil::Approx(dimensionless_bose_scale(g2, m2)).epsilon(1e-14));

  const double f1 = te_evanescent_dimensionless(g1, m).pressure;
  const double f2 = te_evanescent_dimensionless(g2, m2).pressure;
  CHECK(f2 == testutil::Approx(f1 / 8.0).epsilon(1e-7));
}

TEST_CASE("error estimates respond to the requested tolerance") {
  const Medium med = gold();
  QuadratureSpec loose = default_outer_spec();
  loose.rel_tol = 1e-5;

  const auto fine = thermal_pressure_channel(paper_gap, med, TEev);
  const auto coarse = thermal_pressure_channel(paper_gap, med, TEev, loose);
  CHECK(coarse.converged);
  CHECK(fine.evaluations > coarse.evaluations);
  // both land on the same answer within the coarse budget
  CHECK(std::abs(fine.pressure - coarse.pressure) <=
        1e-4 * std::abs(fine.pressure));
}
