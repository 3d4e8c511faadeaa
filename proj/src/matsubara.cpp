#include "casimir/matsubara.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_gap(const Gap& gap) {
  if (!(gap.separation > 0.0) || !(gap.temperature > 0.0))
    throw std::domain_error("Gap requires separation > 0 and temperature > 0");
}

// everything on the imaginary axis is real arithmetic: eps(i xi) > 1 keeps
// q, k and both reflection coefficients real
struct Mirror {
  bool ideal = false;
  const Material* mat = nullptr;  // null and !ideal -> vacuum
};

double summand(double x) {  // x = r^2 e^{-2lq} in (0,1)
  return x / (1.0 - x);
}

// Int_0^inf k dk q_n Sum_s B_s rewritten as Int_{xi/c}^inf q^2 dq Sum_s B_s
double k_integral(double xi, const Mirror& mir, double l,
                  const QuadratureSpec& spec, long& evals, bool& ok) {
  if (!mir.ideal && !mir.mat) return 0.0;
  const double c = constants().c;
  double eps = 0.0;
  if (!mir.ideal) eps = permittivity_imag_axis(*mir.mat, xi);

  auto f = [&](double q) {
    const double e2 = std::exp(-2.0 * l * q);
    if (e2 == 0.0) return 0.0;
    double rtm2, rte2;
    if (mir.ideal) {
      rtm2 = rte2 = 1.0;
    } else {
      const double k = std::sqrt(q * q + (eps - 1.0) * xi * xi / (c * c));
      const double rtm = (eps * q - k) / (eps * q + k);
      const double rte = (q - k) / (q + k);
      rtm2 = rtm * rtm;
      rte2 = rte * rte;
    }
    return q * q * (summand(rtm2 * e2) + summand(rte2 * e2));
  };
  auto r = integrate_semi_infinite(f, xi / c, spec, 0.5 / l);
  evals += r.evaluations;
  ok = ok && r.converged;
  return r.value;
}

// n = 0 term: r_TM -> 1 for any metal (the xi -> 0 limit, not a 0/0
// evaluation); r_TE -> 0 for Drude, finite for Plasma, -1 for perfect mirrors
double k_integral_static(const Mirror& mir, double wp, bool te_plasma, double l,
                         const QuadratureSpec& spec, long& evals, bool& ok) {
  if (!mir.ideal && !mir.mat) return 0.0;
  const double c = constants().c;
  auto f = [&](double k) {
    const double e2 = std::exp(-2.0 * l * k);
    if (e2 == 0.0) return 0.0;
    double te = 0.0;
    if (mir.ideal) {
      te = summand(e2);
    } else if (te_plasma) {
      const double kp = std::hypot(k, wp / c);
      const double r0 = (k - kp) / (k + kp);
      te = summand(r0 * r0 * e2);
    }
    return k * k * (summand(e2) + te);
  };
  auto r = integrate_semi_infinite(f, 0.0, spec, 0.5 / l);
  evals += r.evaluations;
  ok = ok && r.converged;
  return r.value;
}

OracleResult matsubara_sum(const Gap& gap, const Mirror& mir,
                           const MatsubaraSpec& mspec,
                           const QuadratureSpec& qspec) {
  check_gap(gap);
  if (mspec.n_max < 1)
    throw std::domain_error("MatsubaraSpec: n_max must be >= 1");
  const auto& C = constants();
  const double l = gap.separation;
  const double xi1 = 2.0 * pi * C.k_B * gap.temperature / C.hbar;

  OracleResult out;
  bool ok = true;
  const bool te_plasma =
      mir.mat && mir.mat->model == DielectricModel::Plasma;
  const double wp = mir.mat ? mir.mat->plasma_frequency : 0.0;

  double sum = 0.5 * k_integral_static(mir, wp, te_plasma, l, qspec,
                                       out.evaluations, ok);
  out.terms = 1;
  double term = 0.0, prev_term = 0.0;
  bool truncated = true;
  for (long n = 1; n <= mspec.n_max; ++n) {
    prev_term = term;
    term = k_integral(n * xi1, mir, l, qspec, out.evaluations, ok);
    sum += term;
    ++out.terms;
    if (std::abs(term) <= mspec.tail_rel_tol * std::abs(sum)) {
      truncated = false;
      break;
    }
  }

  // geometric tail from the last two terms (terms decay ~ e^{-2 l xi_1 n / c})
  double tail = 0.0;
  if (prev_term != 0.0 && term != 0.0) {
    const double rho = term / prev_term;
    if (rho > 0.0 && rho < 1.0) tail = term * rho / (1.0 - rho);
  }
  sum += tail;

  const double pref = -C.k_B * gap.temperature / pi;
  out.pressure = pref * sum;
  // the geometric extrapolation is only accurate to a fraction of itself
  out.error_estimate = std::abs(pref) * (0.5 * std::abs(tail) +
                                         qspec.rel_tol * std::abs(sum));
  out.converged = ok && !truncated;
  return out;
}

OracleResult zero_temperature(const Gap& gap, const Mirror& mir,
                              const QuadratureSpec& qspec) {
  check_gap(gap);
  const auto& C = constants();
  const double l = gap.separation;
  const double xi_scale = 0.5 * C.c / l;  // xi = xi_scale * y

  OracleResult out;
  bool ok = true;
  auto f = [&](double y) {
    return k_integral(xi_scale * y, mir, l, inner_spec_from(qspec),
                      out.evaluations, ok);
  };
  // the Drude TE response develops a boundary layer at xi -> 0 whose width
  // shrinks with nu; seed the small-y subdivision so it is never overlooked
  QuadratureSpec seg = qspec;
  QuadratureResult acc;
  acc.converged = true;
  double lo = 0.0;
  for (double cut : {1e-4, 1e-2, 1.0}) {
    auto r = integrate_finite(f, lo, cut, seg);
    acc.value += r.value;
    acc.error_estimate += r.error_estimate;
    acc.evaluations += r.evaluations;
    acc.converged = acc.converged && r.converged;
    lo = cut;
  }
  seg.abs_tol =
      std::max(qspec.abs_tol, 0.1 * qspec.rel_tol * std::abs(acc.value));
  auto t = integrate_semi_infinite(f, 1.0, seg, 1.0);
  acc.value += t.value;
  acc.error_estimate += t.error_estimate;
  acc.evaluations += t.evaluations;
  acc.converged = acc.converged && t.converged;

  const double pref = -C.hbar / (2.0 * pi * pi) * xi_scale;
  out.pressure = pref * acc.value;
  out.error_estimate = std::abs(pref) * acc.error_estimate +
                       std::abs(out.pressure) * qspec.rel_tol;
  out.converged = ok && acc.converged;
  out.evaluations += acc.evaluations;  // inner k-integral counts plus outer
  return out;
}

}  // namespace

OracleResult pressure_matsubara(const Gap& gap, const Medium& med,
                                const MatsubaraSpec& mspec,
                                const QuadratureSpec& qspec) {
  Mirror mir;
  mir.mat = med ? &*med : nullptr;
  return matsubara_sum(gap, mir, mspec, qspec);
}

OracleResult pressure_matsubara_ideal(const Gap& gap,
                                      const MatsubaraSpec& mspec,
                                      const QuadratureSpec& qspec) {
  Mirror mir;
  mir.ideal = true;
  return matsubara_sum(gap, mir, mspec, qspec);
}

OracleResult pressure_zero_temperature(const Gap& gap, const Medium& med,
                                       const QuadratureSpec& qspec) {
  Mirror mir;
  mir.mat = med ? &*med : nullptr;
  return zero_temperature(gap, mir, qspec);
}

OracleResult pressure_zero_temperature_ideal(const Gap& gap,
                                             const QuadratureSpec& qspec) {
  Mirror mir;
  mir.ideal = true;
  return zero_temperature(gap, mir, qspec);
}

OracleResult thermal_correction_oracle(const Gap& gap, const Medium& med,
                                       const MatsubaraSpec& mspec,
                                       const QuadratureSpec& qspec) {
  const auto ft = pressure_matsubara(gap, med, mspec, qspec);
  const auto f0 = pressure_zero_temperature(gap, med, qspec);
  OracleResult out;
  out.pressure = ft.pressure - f0.pressure;
  out.error_estimate = ft.error_estimate + f0.error_estimate;
  out.evaluations = ft.evaluations + f0.evaluations;
  out.terms = ft.terms;
  out.converged = ft.converged && f0.converged;
  return out;
}

}  // namespace casimir
