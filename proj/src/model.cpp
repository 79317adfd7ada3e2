#include "glacial/model.hpp"

#include <cmath>
#include <sstream>

namespace glacial {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "parameter " << name << " must be finite, got " << v;
    throw invalid_parameter(os.str());
  }
}

}  // namespace

ReducedParams::ReducedParams(double p_, double r_, double s_) : p(p_), r(r_), s(s_) {
  require_finite(p, "p");
  require_finite(r, "r");
  require_finite(s, "s");
  if (!(p > 0.0)) {
    std::ostringstream os;
    os << "constraint p > 0 violated: p = " << p;
    throw invalid_parameter(os.str());
  }
  if (!(s >= 0.0)) {
    std::ostringstream os;
    os << "constraint s >= 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
}

SlowFastParams::SlowFastParams(ReducedParams base_, double eps_) : base(base_), eps(eps_) {
  require_finite(eps, "eps");
  if (!(eps > 0.0)) {
    std::ostringstream os;
    os << "constraint eps > 0 violated: eps = " << eps;
    throw invalid_parameter(os.str());
  }
}

RescaledParams::RescaledParams(double delta_, double mu_, double lambda_, double eta_)
    : delta(delta_), mu(mu_), lambda(lambda_), eta(eta_) {
  require_finite(delta, "delta");
  require_finite(mu, "mu");
  require_finite(lambda, "lambda");
  require_finite(eta, "eta");
  if (!(eta >= 0.0)) {
    std::ostringstream os;
    os << "constraint eta >= 0 violated: eta = " << eta;
    throw invalid_parameter(os.str());
  }
}

PlanarState reduced_field(const ReducedParams& prm, const PlanarState& st) {
  const double y2 = st.y * st.y;
  return {-st.x - st.y, prm.p * st.x + prm.r * st.y - prm.s * y2 - y2 * st.y};
}

FullState full_field(const SlowFastParams& prm, const FullState& st) {
  const ReducedParams& b = prm.base;
  const double y2 = st.y * st.y;
  return {-st.x - st.y, b.r * st.y - b.p * st.z - b.s * y2 - y2 * st.y,
          (-st.x - st.z) / prm.eps};
}

PlanarState translated_field(const ReducedParams& prm, const PlanarState& companion) {
  const double x = companion.x;
  const double w = companion.y;
  const double q = x + w;
  return {w, (prm.r - prm.p) * x + (prm.r - 1.0) * w + prm.s * q * q - q * q * q};
}

PlanarState to_companion(const PlanarState& xy) { return {xy.x, -xy.x - xy.y}; }

PlanarState from_companion(const PlanarState& xw) { return {xw.x, -xw.x - xw.y}; }

HamState rescaled_field(const RescaledParams& prm, const HamState& st) {
  const double u = st.u;
  const double v = st.v;
  const double eta = prm.eta;
  const double u2 = u * u;
  const double dv =
      prm.mu * u + prm.delta * u2 - u2 * u +
      eta * (prm.lambda * v + 2.0 * prm.delta * u * v - 3.0 * u2 * v) +
      eta * eta * (prm.delta * v * v - 3.0 * u * v * v) - eta * eta * eta * v * v * v;
  return {v, dv};
}

double hamiltonian_value(double delta, double mu, const HamState& st) {
  const double u2 = st.u * st.u;
  return 0.5 * st.v * st.v - 0.5 * mu * u2 - (delta / 3.0) * u2 * st.u +
         0.25 * u2 * u2;
}

RescaledParams to_rescaled(const ReducedParams& prm, double eta) {
  require_finite(eta, "eta");
  if (!(eta > 0.0)) {
    std::ostringstream os;
    os << "constraint eta > 0 violated: eta = " << eta;
    throw invalid_parameter(os.str());
  }
  const double eta2 = eta * eta;
  return {prm.s / eta, (prm.r - prm.p) / eta2, (prm.r - 1.0) / eta2, eta};
}

ReducedParams from_rescaled(const RescaledParams& prm) {
  const double eta2 = prm.eta * prm.eta;
  return {1.0 + eta2 * (prm.lambda - prm.mu), 1.0 + eta2 * prm.lambda,
          prm.eta * prm.delta};
}

Matrix2 jacobian_reduced(const ReducedParams& prm, const PlanarState& st) {
  return {-1.0, -1.0, prm.p, prm.r - 2.0 * prm.s * st.y - 3.0 * st.y * st.y};
}

Matrix2 jacobian_rescaled(const RescaledParams& prm, const HamState& st) {
  const double u = st.u;
  const double v = st.v;
  const double eta = prm.eta;
  const double dvu = prm.mu + 2.0 * prm.delta * u - 3.0 * u * u +
                     eta * (2.0 * prm.delta * v - 6.0 * u * v) -
                     eta * eta * 3.0 * v * v;
  const double dvv = eta * (prm.lambda + 2.0 * prm.delta * u - 3.0 * u * u) +
                     eta * eta * (2.0 * prm.delta * v - 6.0 * u * v) -
                     3.0 * eta * eta * eta * v * v;
  return {0.0, 1.0, dvu, dvv};
}

Matrix3 jacobian_full(const SlowFastParams& prm, const FullState& st) {
  const ReducedParams& b = prm.base;
  Matrix3 m;
  m.a[0][0] = -1.0;
  m.a[0][1] = -1.0;
  m.a[0][2] = 0.0;
  m.a[1][0] = 0.0;
  m.a[1][1] = b.r - 2.0 * b.s * st.y - 3.0 * st.y * st.y;
  m.a[1][2] = -b.p;
  m.a[2][0] = -1.0 / prm.eps;
  m.a[2][1] = 0.0;
  m.a[2][2] = -1.0 / prm.eps;
  return m;
}

}  // namespace glacial
