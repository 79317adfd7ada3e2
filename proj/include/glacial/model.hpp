#pragma once

// Vector fields and coordinate charts for a planar glacial-oscillation model
// and its singular perturbation / normal-form companions.
//
// Reduced planar system (state (x, y)):
//     x' = -x - y
//     y' = p x + r y - s y^2 - y^3
//
// Full slow-fast system (state (x, y, z), fast parameter eps > 0):
//     x' = -x - y
//     y' = r y - p z - s y^2 - y^3
//     z' = (-x - z) / eps
//
// Companion ("translated") chart (x, w) with w = x', and a rescaled
// (normal-form) chart (u, v) with small parameter eta:
//     x = eta * u,  y = eta^2 * v,  t = tau / eta
//     u' = v
//     v' = mu u + delta u^2 - u^3
//          + eta (lambda v + 2 delta u v - 3 u^2 v)
//          + eta^2 (delta v^2 - 3 u v^2) - eta^3 v^3
// with the parameter map  delta = s/eta, mu = (r - p)/eta^2,
// lambda = (r - 1)/eta^2.  At eta = 0 the rescaled system is Hamiltonian with
//     H(u, v) = v^2/2 - mu u^2/2 - delta u^3/3 + u^4/4.

#include <array>

#include "glacial/errors.hpp"

namespace glacial {

struct PlanarState {
  double x = 0.0;
  double y = 0.0;
};

struct FullState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// State of the rescaled (normal-form) chart.
struct HamState {
  double u = 0.0;
  double v = 0.0;
};

// Row-major 2x2 real matrix.
struct Matrix2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  [[nodiscard]] double trace() const { return a11 + a22; }
  [[nodiscard]] double det() const { return a11 * a22 - a12 * a21; }
};

// Row-major 3x3 real matrix.
struct Matrix3 {
  double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
};

// Parameters of the reduced planar system.  Domain: p > 0, s >= 0, r real.
struct ReducedParams {
  double p = 1.0;
  double r = 1.0;
  double s = 0.0;

  ReducedParams(double p_, double r_, double s_);
};

// Parameters of the full slow-fast system.  Domain: eps > 0.
struct SlowFastParams {
  ReducedParams base;
  double eps = 0.01;

  SlowFastParams(ReducedParams base_, double eps_);
};

// Parameters of the rescaled chart.  Domain: eta >= 0, all entries finite.
struct RescaledParams {
  double delta = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double eta = 0.0;

  RescaledParams(double delta_, double mu_, double lambda_, double eta_);
};

// Right-hand sides.
PlanarState reduced_field(const ReducedParams& prm, const PlanarState& st);
FullState full_field(const SlowFastParams& prm, const FullState& st);

// Companion ("translated") chart: coordinates (x, w) with w = x' = -x - y.
// The push-forward of the reduced field is
//     x' = w
//     w' = (r - p) x + (r - 1) w + s (x + w)^2 - (x + w)^3
// The chart map is (x, y) |-> (x, -x - y), its own inverse in the second slot.
PlanarState translated_field(const ReducedParams& prm, const PlanarState& companion);
PlanarState to_companion(const PlanarState& xy);
PlanarState from_companion(const PlanarState& xw);

HamState rescaled_field(const RescaledParams& prm, const HamState& st);

// Hamiltonian of the eta = 0 rescaled system.
double hamiltonian_value(double delta, double mu, const HamState& st);

// Parameter chart between the reduced system and the rescaled chart.
// to_rescaled requires eta > 0.  from_rescaled requires eta >= 0 and returns
// p = 1 + eta^2 (lambda - mu), r = 1 + eta^2 lambda, s = eta delta.
RescaledParams to_rescaled(const ReducedParams& prm, double eta);
ReducedParams from_rescaled(const RescaledParams& prm);

// Jacobians.
Matrix2 jacobian_reduced(const ReducedParams& prm, const PlanarState& st);
Matrix2 jacobian_rescaled(const RescaledParams& prm, const HamState& st);
Matrix3 jacobian_full(const SlowFastParams& prm, const FullState& st);

}  // namespace glacial
