#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace casimir {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  // fallback period for integrate_oscillatory when the caller passes none
  std::optional<double> oscillation_period_hint = {};
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

namespace detail {

// Gauss(7)/Kronrod(15) pair on [-1,1]; positive abscissae, the Gauss weight
// is zero at Kronrod-only nodes.  All nodes are interior, so integrands are
// never evaluated at panel endpoints (endpoint-safe by construction).
struct GK15Node {
  double x, wk, wg;
};
inline constexpr GK15Node gk15_nodes[8] = {
    {0.000000000000000, 0.209482141084728, 0.417959183673469},
    {0.207784955007898, 0.204432940075298, 0.0},
    {0.405845151377397, 0.190350578064785, 0.381830050505119},
    {0.586087235467691, 0.169004726639267, 0.0},
    {0.741531185599394, 0.140653259715525, 0.279705391489277},
    {0.864864423359769, 0.104790010322250, 0.0},
    {0.949107912342759, 0.063092092629979, 0.129484966168870},
    {0.991455371120813, 0.022935322010529, 0.0},
};

[[noreturn]] inline void throw_nonfinite(double x, double fx) {
  std::ostringstream os;
  os << "integrand returned non-finite value " << fx << " at x = " << x;
  throw std::runtime_error(os.str());
}

struct Panel {
  double a, b;
  double value, err;
  std::uint64_t seq;  // insertion order, tie-break for determinism
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.seq > q.seq;
  }
};

template <class F>
Panel eval_panel(F&& f, double a, double b, std::uint64_t seq) {
  const double m = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0;
  for (const auto& n : gk15_nodes) {
    const double fx_hi = f(m + h * n.x);
    if (!std::isfinite(fx_hi)) throw_nonfinite(m + h * n.x, fx_hi);
    double s = fx_hi;
    if (n.x != 0.0) {
      const double fx_lo = f(m - h * n.x);
      if (!std::isfinite(fx_lo)) throw_nonfinite(m - h * n.x, fx_lo);
      s += fx_lo;
    }
    kron += n.wk * s;
    gauss += n.wg * s;
  }
  kron *= h;
  gauss *= h;
  // plain |K - G|: deliberately conservative, keeps the reported estimate
  // honest on integrands where the usual (200|K-G|)^1.5 downscaling lies
  return Panel{a, b, kron, std::abs(kron - gauss), seq};
}

inline bool within(double err, double value, const QuadratureSpec& spec) {
  return err <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
}

// Wynn epsilon update; `diag` carries the rising diagonal of the table.
// Returns the current best sum estimate (even-column entry).
inline double epsilon_update(std::vector<double>& diag, double s_new) {
  diag.push_back(s_new);
  double below = 0.0;
  for (int j = static_cast<int>(diag.size()) - 2; j >= 0; --j) {
    const double old = diag[j];
    const double num = diag[j + 1] - old;
    double nxt;
    if (std::abs(num) < 1e-300)
      nxt = diag[j + 1];  // stalled differences: series already converged
    else
      nxt = below + 1.0 / num;
    below = old;
    diag[j] = nxt;
  }
  return diag.size() % 2 ? diag[0] : diag[1];
}

}  // namespace detail

// Adaptive Gauss-Kronrod on (a, b).  Worst panel first (deterministic
// tie-break), error = sum of per-panel |K - G|.  Integrands must be finite at
// every interior node; endpoint limits are fine since no node touches a or b.
template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b,
                                  const QuadratureSpec& spec) {
  if (!(a < b)) throw std::domain_error("integrate_finite: requires a < b");

  std::priority_queue<detail::Panel, std::vector<detail::Panel>,
                      detail::PanelWorse>
      queue;
  std::vector<detail::Panel> frozen;  // panels too narrow to split further
  std::uint64_t seq = 0;
  long evals = 0;

  auto push = [&](double lo, double hi) -> std::pair<double, double> {
    auto p = detail::eval_panel(f, lo, hi, seq++);
    evals += 15;
    const std::pair<double, double> ve{p.value, p.err};
    queue.push(p);
    return ve;
  };
  auto [total_value, total_err] = push(a, b);

  int splits = 0;
  while (!detail::within(total_err, total_value, spec) && !queue.empty()) {
    if (splits >= spec.max_subdivisions) break;
    const detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width_floor =
        4.0 * std::numeric_limits<double>::epsilon() *
        std::max({std::abs(worst.a), std::abs(worst.b), 1e-300});
    if (!(worst.a < mid && mid < worst.b) || worst.b - worst.a < width_floor) {
      frozen.push_back(worst);  // cannot be refined further in double
      continue;
    }
    total_value -= worst.value;
    total_err -= worst.err;
    const auto [v1, e1] = push(worst.a, mid);
    const auto [v2, e2] = push(mid, worst.b);
    total_value += v1 + v2;
    total_err += e1 + e2;
    ++splits;
  }

  // Drain and produce the deterministic left-to-right sum.
  std::vector<detail::Panel> all = std::move(frozen);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const detail::Panel& p, const detail::Panel& q) {
              return p.a < q.a;
            });
  QuadratureResult res;
  for (const auto& p : all) {
    res.value += p.value;
    res.error_estimate += p.err;
  }
  res.evaluations = evals;
  res.converged = detail::within(res.error_estimate, res.value, spec);
  return res;
}

// f absolutely integrable on (a, inf); decay_scale ~ e-folding scale of |f|.
// Maps x = a + s t/(1-t) onto t in (0,1).
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double a,
                                         const QuadratureSpec& spec,
                                         double decay_scale) {
  if (!(decay_scale > 0.0))
    throw std::domain_error("integrate_semi_infinite: decay_scale must be > 0");
  auto g = [&f, a, decay_scale](double t) -> double {
    const double om1 = 1.0 - t;
    if (om1 < 1e-15) return 0.0;  // tail sliver; integrand must decay
    const double x = a + decay_scale * t / om1;
    return f(x) * decay_scale / (om1 * om1);
  };
  return integrate_finite(g, 0.0, 1.0, spec);
}

// Quasi-periodic integrand with the given sign period.  Finite b: half-period
// panels summed directly.  Infinite b: partial sums of half-period panel
// integrals accelerated with a Wynn epsilon table (alternating-series style).
template <class F>
QuadratureResult integrate_oscillatory(F&& f, double a,
                                       std::optional<double> b, double period,
                                       const QuadratureSpec& spec) {
  if (!(period > 0.0)) {
    if (spec.oscillation_period_hint && *spec.oscillation_period_hint > 0.0)
      period = *spec.oscillation_period_hint;
    else
      throw std::domain_error("integrate_oscillatory: period must be > 0");
  }
  const double half = 0.5 * period;
  QuadratureSpec panel_spec = spec;
  panel_spec.rel_tol = std::max(spec.rel_tol * 1e-2, 1e-14);
  panel_spec.abs_tol = 0.0;
  panel_spec.max_subdivisions = 200;

  QuadratureResult res;

  if (b) {
    // finite range: fixed half-period panelization, direct sum
    bool all_ok = true;
    double lo = a;
    while (lo < *b) {
      const double hi = std::min(lo + half, *b);
      auto piece = integrate_finite(f, lo, hi, panel_spec);
      res.value += piece.value;
      res.error_estimate += piece.error_estimate;
      res.evaluations += piece.evaluations;
      all_ok = all_ok && piece.converged;
      lo = hi;
    }
    res.converged = all_ok && detail::within(res.error_estimate, res.value, spec);
    return res;
  }

  std::vector<double> diag;
  double partial = 0.0, quad_err = 0.0;
  double best = 0.0, best_prev = std::numeric_limits<double>::quiet_NaN();
  int quiet = 0;        // consecutive panels with negligible contribution
  int stable = 0;       // consecutive accelerated estimates within tolerance
  const int max_panels = std::max(8, spec.max_subdivisions);
  bool ok = false;

  for (int k = 0; k < max_panels; ++k) {
    const double lo = a + k * half;
    auto piece = integrate_finite(f, lo, lo + half, panel_spec);
    partial += piece.value;
    quad_err += piece.error_estimate;
    res.evaluations += piece.evaluations;

    best_prev = best;
    best = detail::epsilon_update(diag, partial);

    const double tol = std::max(spec.rel_tol * std::abs(best), spec.abs_tol);
    if (k >= 1 && std::abs(piece.value) <= std::max(tol * 1e-3, 0.0))
      ++quiet;
    else
      quiet = 0;
    if (k >= 4 && std::isfinite(best_prev) &&
        std::abs(best - best_prev) <= 0.5 * tol)
      ++stable;
    else
      stable = 0;
    if (quiet >= 2 || stable >= 2) {
      ok = true;
      break;
    }
  }

  const double accel_err =
      std::isfinite(best_prev) ? std::abs(best - best_prev) : std::abs(best);
  res.value = best;
  res.error_estimate = accel_err + quad_err;
  res.converged =
      ok && std::isfinite(best) &&
      detail::within(res.error_estimate, res.value, spec);
  return res;
}

}  // namespace casimir
