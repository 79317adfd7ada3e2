#pragma once

// Global objects of the planar flow found by numerical continuation of the
// flow itself: limit cycles via a Poincare return map on a ray section,
// saddle-manifold shooting for homoclinic loops in the physical chart, and
// first-order-guided homoclinic refinement in the rescaled chart.

#include <vector>

#include "glacial/equilibria.hpp"
#include "glacial/integrate.hpp"
#include "glacial/melnikov.hpp"
#include "glacial/model.hpp"

namespace glacial {

namespace detail {
inline IntegratorConfig shooting_config() {
  IntegratorConfig c;
  c.rtol = 1e-12;
  c.atol = 1e-14;
  c.h_init = 1e-4;
  c.h_max = 0.05;
  return c;
}
}  // namespace detail

struct LimitCycle {
  enum class Stability { Stable, Unstable };

  PlanarState section_point;  // on the horizontal ray from the focus
  double radius = 0.0;        // ray coordinate of the fixed point
  double period = 0.0;
  double multiplier = 0.0;    // nontrivial Floquet multiplier (return-map slope)
  Stability stability = Stability::Stable;
};

const char* to_string(LimitCycle::Stability s);

struct CycleSearchConfig {
  int n_scan = 60;        // displacement-map scan points across the bracket
  double fd_h = 1e-6;     // centered step for the return-map slope
  double t_max = 400.0;   // time budget per return
  IntegratorConfig integ = detail::shooting_config();
};

// All limit cycles crossing the ray {y = focus.y, x > focus.x}, located by a
// scan of the return-map displacement over the ray coordinate in
// [rho_lo, rho_hi] followed by bisection of each sign change.  Cycles are
// returned sorted by radius; Stable means |multiplier| < 1.  Throws
// no_cycle_in_bracket when the scan finds no sign change.
std::vector<LimitCycle> find_limit_cycles(const ReducedParams& prm,
                                          const PlanarState& focus,
                                          double rho_lo, double rho_hi,
                                          const CycleSearchConfig& cfg = {});

// One full turn of the return map: the ray coordinate and the return time of
// the first qualifying upward crossing (counterclockwise rotation).
struct ReturnMapPoint {
  double rho_return = 0.0;
  double period = 0.0;
};

ReturnMapPoint return_map(const ReducedParams& prm, const PlanarState& focus,
                          double rho, double t_max,
                          const IntegratorConfig& cfg);

// Eigen-direction seeds on the invariant manifolds of a saddle.
struct SaddleSeeds {
  PlanarState saddle;
  double lambda_unstable = 0.0;
  double lambda_stable = 0.0;
  PlanarState dir_unstable;  // unit vectors
  PlanarState dir_stable;
  PlanarState unstable_plus, unstable_minus;  // saddle +- offset * direction
  PlanarState stable_plus, stable_minus;
  double offset = 0.0;
};

// Throws not_a_saddle if the equilibrium's eigenvalues are not real with
// opposite signs, invalid_parameter for offset <= 0, not_an_equilibrium if
// the location is not an equilibrium.
SaddleSeeds saddle_manifold_seed(const ReducedParams& prm,
                                 const PlanarState& saddle, double offset);

// Signed x-distance between the first far-side crossings of the section
// {x + y = saddle.x + saddle.y} by the unstable manifold (forward time) and
// the stable manifold (backward time), both launched on the side of the
// enclosed focus.  A crossing qualifies when it lies on the focus side of
// the saddle and at least 20% of the saddle-focus x-distance away from the
// saddle.
double splitting_distance(const ReducedParams& prm, const PlanarState& saddle,
                          const PlanarState& enclosed_focus,
                          double offset = 1e-6,
                          const IntegratorConfig& cfg = detail::shooting_config());

// Which side of the saddle the loop encloses (by x-coordinate).
enum class LoopSide { Left, Right };

const char* to_string(LoopSide side);

struct HomoclinicFind {
  double p_star = 0.0;             // parameter at the connection
  double splitting_at_root = 0.0;  // residual splitting there
  int iterations = 0;
  PlanarState saddle;
  PlanarState enclosed;
  // Reconstructed loop: unstable segment forward from the saddle to the
  // section, then the stable segment onward to the saddle (its backward run
  // reversed).  Both open ends sit one seed-offset from the saddle.
  std::vector<double> orbit_times;
  std::vector<PlanarState> orbit_states;
  double segment_end_distance = 0.0;
};

// Bisect p in [p_lo, p_hi] (r, s fixed) on the sign of splitting_distance
// until |splitting| < 1e-10 or the bracket width falls below 1e-12 (relative).
// Throws no_sign_change when the endpoints do not straddle zero.
HomoclinicFind find_homoclinic(double r, double s, double p_lo, double p_hi,
                               LoopSide side, double offset = 1e-6);

// Loop families in the rescaled chart.
enum class RescaledLoopKind { SingleLeft, SingleRight, DoubleLoop };

const char* to_string(RescaledLoopKind k);

struct MelnikovGuidedResult {
  double lambda_melnikov = 0.0;  // first-order prediction (closed form)
  double lambda_refined = 0.0;   // shooting root of the full rescaled system
  double gap_at_root = 0.0;
  int iterations = 0;
};

// Refine the first-order persistence prediction into a true connection of
// the full rescaled flow at finite eta by bisecting lambda on the signed
// apex gap between the saddle's unstable and stable manifolds.  For the
// double loop both manifolds are launched on the same side and matched at
// their second apex crossing.  Preconditions: 0 < eta <= 0.3, mu > 0,
// delta >= 0.
MelnikovGuidedResult melnikov_guided_homoclinic(double delta, double mu,
                                                double eta,
                                                RescaledLoopKind kind,
                                                double offset = 1e-9);

}  // namespace glacial
