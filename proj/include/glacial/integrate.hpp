#pragma once

// Adaptive embedded Runge-Kutta 5(4) integration with PI step-size control,
// fourth-order dense output, and strict-forward section-event location.
// Fields are autonomous callables State f(const State&).  Backward-time
// integration is done by handing in the negated field.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

#include "glacial/errors.hpp"
#include "glacial/model.hpp"

namespace glacial {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-14;
  double h_max = std::numeric_limits<double>::infinity();
  long max_steps = 2000000;
  double divergence_norm = 1e8;

  void validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) {
      throw invalid_parameter("integrator tolerances must be positive");
    }
    if (!(h_init > 0.0) || !(h_min > 0.0) || !(h_max > 0.0)) {
      throw invalid_parameter("integrator step bounds must be positive");
    }
    if (max_steps < 1) {
      throw invalid_parameter("integrator max_steps must be >= 1");
    }
  }
};

enum class TerminalReason { TimeEnd, Event, StepFailure, Diverged };

inline const char* to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::TimeEnd: return "TimeEnd";
    case TerminalReason::Event: return "Event";
    case TerminalReason::StepFailure: return "StepFailure";
    case TerminalReason::Diverged: return "Diverged";
  }
  return "unknown";
}

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;
  std::vector<State<N>> states;
  TerminalReason terminal_reason = TerminalReason::TimeEnd;
};

// Quartic interpolant over one accepted step; eval at theta in [0, 1].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  State<N> c0{}, c1{}, c2{}, c3{}, c4{};

  [[nodiscard]] State<N> eval(double theta) const {
    State<N> out{};
    const double th1 = 1.0 - theta;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = c0[i] +
               theta * (c1[i] + th1 * (c2[i] + theta * (c3[i] + th1 * c4[i])));
    }
    return out;
  }
};

namespace detail {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - bhat.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
// Dense-output weights.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

template <std::size_t N>
double max_norm(const State<N>& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace detail

// One proposed step: stages, 5th-order solution, embedded error estimate and
// dense coefficients.  k1 must hold f(y) on entry (FSAL: k7 of the previous
// accepted step); on acceptance the caller reuses k7 as the next k1.
template <std::size_t N, class Field>
struct StepResult {
  State<N> y_new{};
  State<N> k7{};
  double error = 0.0;
  DenseSegment<N> dense{};
};

template <std::size_t N, class Field>
StepResult<N, Field> rk_step(Field& f, double t, const State<N>& y,
                             const State<N>& k1, double h, double atol,
                             double rtol) {
  using namespace detail;
  State<N> tmp{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, y_new{};
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * kA21 * k1[i];
  k2 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
  k3 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
  k4 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
  k5 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                         kA64 * k4[i] + kA65 * k5[i]);
  k6 = f(tmp);
  for (std::size_t i = 0; i < N; ++i)
    y_new[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] +
                           kB5 * k5[i] + kB6 * k6[i]);
  k7 = f(y_new);

  double err_sq = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] +
                          kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
    const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    err_sq += (e / sk) * (e / sk);
  }
  const double error = std::sqrt(err_sq / static_cast<double>(N));

  StepResult<N, Field> out;
  out.y_new = y_new;
  out.k7 = k7;
  out.error = error;
  out.dense.t0 = t;
  out.dense.h = h;
  for (std::size_t i = 0; i < N; ++i) {
    const double ydiff = y_new[i] - y[i];
    const double bspl = h * k1[i] - ydiff;
    out.dense.c0[i] = y[i];
    out.dense.c1[i] = ydiff;
    out.dense.c2[i] = bspl;
    out.dense.c3[i] = ydiff - h * k7[i] - bspl;
    out.dense.c4[i] = h * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] +
                           kD5 * k5[i] + kD6 * k6[i] + kD7 * k7[i]);
  }
  return out;
}

// Core driver.  The observer is called after every accepted step as
// observer(t_prev, t_new, y_prev, y_new, dense) and returns true to stop the
// run (reported as TerminalReason::Event).
template <std::size_t N, class Field, class Observer>
TerminalReason integrate_core(Field f, State<N> y0, double t0, double t1,
                              const IntegratorConfig& cfg, Observer observer) {
  cfg.validate();
  if (!(t1 > t0)) {
    throw invalid_parameter("integration window must satisfy t1 > t0; "
                            "integrate backward by negating the field");
  }
  constexpr double kSafe = 0.9;
  constexpr double kExpo = 0.17;   // 1/5 - 0.75 * kBeta
  constexpr double kBeta = 0.04;
  constexpr double kFacMin = 0.2;
  constexpr double kFacMax = 10.0;

  double t = t0;
  State<N> y = y0;
  State<N> k1 = f(y);
  double h = std::min(cfg.h_init, std::min(cfg.h_max, t1 - t0));
  double errold = 1e-4;
  bool rejected = false;

  for (long step = 0; step < cfg.max_steps; ++step) {
    if (t >= t1) return TerminalReason::TimeEnd;
    const bool final_step = (t + h >= t1);
    if (final_step) h = t1 - t;
    if (h < cfg.h_min && !final_step) return TerminalReason::StepFailure;
    if (h <= 0.0) return TerminalReason::TimeEnd;

    auto res = rk_step<N>(f, t, y, k1, h, cfg.atol, cfg.rtol);
    if (!std::isfinite(res.error)) res.error = 2.0;  // force rejection

    if (res.error <= 1.0) {
      const double t_new = final_step ? t1 : t + h;
      if (detail::max_norm(res.y_new) > cfg.divergence_norm) {
        observer(t, t_new, y, res.y_new, res.dense);
        return TerminalReason::Diverged;
      }
      if (observer(t, t_new, y, res.y_new, res.dense)) {
        return TerminalReason::Event;
      }
      t = t_new;
      y = res.y_new;
      k1 = res.k7;
      const double fac =
          kSafe * std::pow(std::max(res.error, 1e-16), -kExpo) *
          std::pow(errold, kBeta);
      const double facmax = rejected ? 1.0 : kFacMax;
      h = std::min(cfg.h_max, h * std::min(facmax, std::max(kFacMin, fac)));
      errold = std::max(res.error, 1e-4);
      rejected = false;
    } else {
      const double fac =
          kSafe * std::pow(res.error, -kExpo);
      h *= std::max(kFacMin, fac);
      rejected = true;
      if (h < cfg.h_min) return TerminalReason::StepFailure;
    }
  }
  return TerminalReason::StepFailure;  // step budget exhausted
}

// Full trajectory at the integrator's own accepted steps.
template <std::size_t N, class Field>
Trajectory<N> integrate(Field f, const State<N>& y0, double t0, double t1,
                        const IntegratorConfig& cfg = {}) {
  Trajectory<N> traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  traj.terminal_reason = integrate_core<N>(
      f, y0, t0, t1, cfg,
      [&](double, double t_new, const State<N>&, const State<N>& y_new,
          const DenseSegment<N>&) {
        traj.times.push_back(t_new);
        traj.states.push_back(y_new);
        return false;
      });
  return traj;
}

// Trajectory sampled on a uniform time grid (dense output between steps).
template <std::size_t N, class Field>
Trajectory<N> integrate_sampled(Field f, const State<N>& y0, double t0, double t1,
                                int n_samples, const IntegratorConfig& cfg = {}) {
  if (n_samples < 2) {
    throw invalid_parameter("sampled integration needs n_samples >= 2");
  }
  Trajectory<N> traj;
  const double dt = (t1 - t0) / (n_samples - 1);
  int next = 0;
  traj.terminal_reason = integrate_core<N>(
      f, y0, t0, t1, cfg,
      [&](double t_prev, double t_new, const State<N>&, const State<N>& y_new,
          const DenseSegment<N>& dense) {
        (void)t_prev;
        while (next < n_samples) {
          const double ts = (next == n_samples - 1) ? t1 : t0 + next * dt;
          if (ts > t_new + 1e-15 * std::max(1.0, std::abs(t_new))) break;
          if (ts >= t_new) {
            traj.times.push_back(ts);
            traj.states.push_back(y_new);
          } else {
            const double theta = (ts - dense.t0) / dense.h;
            traj.times.push_back(ts);
            traj.states.push_back(dense.eval(std::clamp(theta, 0.0, 1.0)));
          }
          ++next;
        }
        return false;
      });
  return traj;
}

template <std::size_t N>
struct SectionEvent {
  double t = 0.0;
  State<N> state{};
  double g_residual = 0.0;
  int crossings_accepted = 0;  // qualifying crossings seen including this one
};

namespace detail {

template <std::size_t N, class G>
double refine_crossing(const DenseSegment<N>& dense, G& g, double g_lo,
                       double g_hi, double* theta_out) {
  // Bisection on the dense interpolant: [lo, hi] brackets the sign change.
  double lo = 0.0, hi = 1.0;
  double f_lo = g_lo;
  (void)g_hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = g(dense.eval(mid));
    if (std::abs(f_mid) < 1e-12 || hi - lo < 1e-16) {
      *theta_out = mid;
      return f_mid;
    }
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  *theta_out = 0.5 * (lo + hi);
  return g(dense.eval(*theta_out));
}

}  // namespace detail

// Integrate until the crossing_index-th qualifying crossing of the section
// g(state) = 0.  direction > 0 accepts sign changes from g < 0 to g >= 0
// between accepted steps, direction < 0 the reverse, direction == 0 both;
// the crossing instant is refined on the dense output to |g| < 1e-10.
// Crossings are strictly after t0 (a start exactly on the section does not
// count until g leaves and comes back with the right sign).  The accept
// predicate filters qualifying crossings (e.g. by region); rejected ones do
// not advance the crossing count.  Throws no_crossing if the time window,
// step budget, or solution norm is exhausted first.
template <std::size_t N, class Field, class G, class Accept>
SectionEvent<N> integrate_to_section(Field f, const State<N>& y0, double t0,
                                     G g, int direction, double t_max,
                                     const IntegratorConfig& cfg,
                                     int crossing_index, Accept accept) {
  if (crossing_index < 1) {
    throw invalid_parameter("crossing_index must be >= 1");
  }
  SectionEvent<N> event;
  bool found = false;
  int count = 0;
  double g_prev = g(y0);
  const TerminalReason reason = integrate_core<N>(
      f, y0, t0, t_max, cfg,
      [&](double t_prev, double t_new, const State<N>&, const State<N>& y_new,
          const DenseSegment<N>& dense) {
        (void)t_prev;
        const double g_new = g(y_new);
        const bool crossed_up = (g_prev < 0.0) && (g_new >= 0.0);
        const bool crossed_down = (g_prev > 0.0) && (g_new <= 0.0);
        const bool crossed = (direction > 0)   ? crossed_up
                             : (direction < 0) ? crossed_down
                                               : (crossed_up || crossed_down);
        if (crossed) {
          double theta = 0.0;
          const double res = detail::refine_crossing<N>(dense, g, g_prev, g_new, &theta);
          const State<N> y_cross = dense.eval(theta);
          if (accept(y_cross)) {
            ++count;
            if (count >= crossing_index) {
              event.t = dense.t0 + theta * dense.h;
              event.state = y_cross;
              event.g_residual = std::abs(res);
              event.crossings_accepted = count;
              g_prev = g_new;
              found = true;
              return true;
            }
          }
        }
        g_prev = g_new;
        return false;
      });
  if (!found) {
    std::ostringstream os;
    os << "no qualifying section crossing before t = " << t_max
       << " (terminal reason: " << to_string(reason) << ", qualifying crossings seen: "
       << count << ")";
    throw no_crossing(os.str());
  }
  return event;
}

template <std::size_t N, class Field, class G>
SectionEvent<N> integrate_to_section(Field f, const State<N>& y0, double t0,
                                     G g, int direction, double t_max,
                                     const IntegratorConfig& cfg = {},
                                     int crossing_index = 1) {
  return integrate_to_section<N>(f, y0, t0, g, direction, t_max, cfg,
                                 crossing_index,
                                 [](const State<N>&) { return true; });
}

// Single fixed-size RK5 stepping (no error control); used for convergence
//-order measurements.
template <std::size_t N, class Field>
State<N> integrate_fixed(Field f, State<N> y, double t0, double t1, long n_steps) {
  using namespace detail;
  if (n_steps < 1) throw invalid_parameter("n_steps must be >= 1");
  const double h = (t1 - t0) / static_cast<double>(n_steps);
  double t = t0;
  State<N> k1 = f(y);
  for (long i = 0; i < n_steps; ++i) {
    auto res = rk_step<N>(f, t, y, k1, h, 1.0, 1.0);
    y = res.y_new;
    k1 = res.k7;
    t += h;
  }
  return y;
}

// Diagnostics comparing the full slow-fast flow with the reduced planar flow
// from the same (x, y) start (the full start must be supplied with its z).
struct SlowFastDiagnostics {
  double transient = 0.0;          // 10 eps |ln eps|
  double manifold_residual = 0.0;  // sup |z + x| over t >= transient
  double state_gap = 0.0;          // sup_t hypot(x_f - x_r, y_f - y_r)
};

SlowFastDiagnostics slow_fast_compare(const SlowFastParams& prm,
                                      const FullState& y0, double t_end,
                                      int n_samples = 2001,
                                      const IntegratorConfig& cfg = {});

}  // namespace glacial
