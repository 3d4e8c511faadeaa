#include "casimir/em_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

namespace {
void check_point(const WavePoint& p) {
  if (!(p.omega > 0.0) || !(p.k_perp >= 0.0))
    throw std::domain_error("WavePoint requires omega > 0 and k_perp >= 0");
}
}  // namespace

Sector classify(const WavePoint& p) {
  check_point(p);
  return p.k_perp < p.omega / constants().c ? Sector::Propagating
                                            : Sector::Evanescent;
}

std::complex<double> half_plane_sqrt(std::complex<double> z) {
  auto w = std::sqrt(z);
  if (w.real() < 0.0) w = -w;
  if (w.real() == 0.0 && w.imag() > 0.0) w = -w;
  return w;
}

std::complex<double> vacuum_momentum_q(const WavePoint& p) {
  const double woc = p.omega / constants().c;
  // difference-of-squares form keeps accuracy near the light cone
  if (classify(p) == Sector::Evanescent)
    return {std::sqrt((p.k_perp - woc) * (p.k_perp + woc)), 0.0};
  return {0.0, -std::sqrt((woc - p.k_perp) * (woc + p.k_perp))};
}

std::complex<double> medium_momentum_k(const WavePoint& p,
                                       std::complex<double> eps) {
  check_point(p);
  const double woc = p.omega / constants().c;
  return half_plane_sqrt(p.k_perp * p.k_perp - eps * (woc * woc));
}

std::complex<double> fresnel(const WavePoint& p, std::complex<double> eps,
                             Polarization pol) {
  const auto q = vacuum_momentum_q(p);
  const auto k = medium_momentum_k(p, eps);
  const auto num = pol == Polarization::TM ? eps * q - k : q - k;
  const auto den = pol == Polarization::TM ? eps * q + k : q + k;
  if (den == std::complex<double>(0.0, 0.0))
    throw std::logic_error("fresnel: reflection coefficient pole hit");
  return num / den;
}

std::complex<double> fresnel_te_dimensionless(double u, double v,
                                              const Material& m, double l) {
  if (!(u > 0.0))
    throw std::domain_error("fresnel_te_dimensionless: u must be > 0");
  const double c = constants().c;
  const double wpl2 = m.plasma_frequency * m.plasma_frequency * l * l;
  const std::complex<double> term =
      wpl2 * u / std::complex<double>(c * c * u, wpl2);
  const auto w = half_plane_sqrt(v * v + term);
  return (v - w) / (v + w);
}

}  // namespace casimir
