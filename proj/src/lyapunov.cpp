#include "glacial/lyapunov.hpp"

#include <cmath>
#include <sstream>

namespace glacial {

namespace {

constexpr Complex kImagUnit{0.0, 1.0};

}  // namespace

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::Supercritical: return "Supercritical";
    case Criticality::Subcritical: return "Subcritical";
    case Criticality::DegenerateCandidate: return "DegenerateCandidate";
  }
  return "unknown";
}

DerivativeTensors derivative_tensors(const ReducedParams& prm,
                                     const PlanarState& equilibrium) {
  // Second component of the field: p x + r y - s y^2 - y^3.
  return {-2.0 * prm.s - 6.0 * equilibrium.y, -6.0, 0.0};
}

GCoefficients g_coefficients(const DerivativeTensors& t, const EigenPair& eig) {
  const CVec2& q = eig.q;
  const CVec2 qb{std::conj(q.c1), std::conj(q.c2)};
  const auto project = [&](const CVec2& v) { return inner(eig.p, v); };

  GCoefficients g;
  g.g20 = project(t.B(q, q));
  g.g11 = project(t.B(q, qb));
  g.g02 = project(t.B(qb, qb));
  g.g30 = project(t.C(q, q, q));
  g.g21 = project(t.C(q, q, qb));
  g.g12 = project(t.C(q, qb, qb));
  g.g03 = project(t.C(qb, qb, qb));
  g.g40 = project(t.D(q, q, q, q));
  g.g31 = project(t.D(q, q, q, qb));
  g.g22 = project(t.D(q, q, qb, qb));
  g.g13 = project(t.D(q, qb, qb, qb));
  g.g32 = Complex(0.0, 0.0);  // fifth order vanishes for a cubic field
  return g;
}

double first_lyapunov(const GCoefficients& g, double omega) {
  return std::real(kImagUnit * g.g20 * g.g11 + omega * g.g21) /
         (2.0 * omega * omega);
}

double second_lyapunov(const GCoefficients& g, double omega) {
  using std::conj;
  using std::imag;
  using std::real;
  const double w = omega;
  const double w2 = w * w;

  const double t1 = real(g.g32) / w;

  const double t2 =
      imag(g.g20 * conj(g.g31) - g.g11 * (4.0 * g.g31 + 3.0 * conj(g.g22)) -
           (1.0 / 3.0) * g.g02 * (g.g40 + conj(g.g13)) - g.g30 * g.g12) /
      w2;

  const double t3 =
      (real(g.g20 * (conj(g.g11) * (3.0 * g.g12 - conj(g.g30)) +
                     g.g02 * (conj(g.g12) - (1.0 / 3.0) * g.g30) +
                     (1.0 / 3.0) * conj(g.g02) * g.g03) +
            g.g11 * (conj(g.g02) * ((5.0 / 3.0) * conj(g.g30) + 3.0 * g.g12) +
                     (1.0 / 3.0) * g.g02 * conj(g.g03) - 4.0 * g.g11 * g.g30)) +
       3.0 * imag(g.g20 * g.g11) * imag(g.g21)) /
      (w2 * w);

  const double t4 =
      (imag(g.g11 * conj(g.g02) *
            (conj(g.g20) * conj(g.g20) - 3.0 * conj(g.g20) * g.g11 -
             4.0 * g.g11 * g.g11)) +
       imag(g.g20 * g.g11) *
           (3.0 * real(g.g20 * g.g11) - 2.0 * std::norm(g.g02))) /
      (w2 * w2);

  return (t1 + t2 + t3 + t4) / 12.0;
}

LyapunovResult hopf_lyapunov(const ReducedParams& prm,
                             const PlanarState& equilibrium) {
  const PlanarState f = reduced_field(prm, equilibrium);
  const double residual = std::max(std::abs(f.x), std::abs(f.y));
  const double eq_tol =
      1e-8 * (1.0 + std::abs(equilibrium.x) + std::abs(equilibrium.y));
  if (residual > eq_tol) {
    std::ostringstream os;
    os << "field residual " << residual << " exceeds " << eq_tol
       << "; not an equilibrium";
    throw not_an_equilibrium(os.str());
  }
  const Matrix2 j = jacobian_reduced(prm, equilibrium);
  const DerivativeTensors tensors = derivative_tensors(prm, equilibrium);

  LyapunovResult out;
  const EigenPair eig = hopf_eigendata(j, EigenvectorScale::Projector);
  out.omega = eig.omega;
  out.g = g_coefficients(tensors, eig);
  out.l1 = first_lyapunov(out.g, eig.omega);

  const double threshold = 1e-6 * eig.omega;
  if (out.l1 < -threshold) {
    out.criticality = Criticality::Supercritical;
  } else if (out.l1 > threshold) {
    out.criticality = Criticality::Subcritical;
  } else {
    out.criticality = Criticality::DegenerateCandidate;
    const EigenPair eig_adj = hopf_eigendata(j, EigenvectorScale::Adjugate);
    const GCoefficients g_adj = g_coefficients(tensors, eig_adj);
    out.l2 = second_lyapunov(g_adj, eig.omega);
  }
  return out;
}

double l1_origin_closed(double p, double s) {
  if (!(p > 1.0)) {
    std::ostringstream os;
    os << "constraint p > 1 violated: p = " << p;
    throw invalid_parameter(os.str());
  }
  const double w2 = p - 1.0;
  return -p * (3.0 * w2 - 2.0 * s * s) / (8.0 * w2 * w2 * std::sqrt(w2));
}

double l2_origin_closed(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "constraint s > 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  const double a = 3.0 + 2.0 * s * s;
  const double a4 = a * a * a * a;
  const double s7 = std::pow(s, 7);
  return -5.0 * a4 / (128.0 * std::sqrt(6.0) * s7);
}

double l1_offorigin_closed(double p, double s, EquilibriumId which) {
  if (!(p > 1.0)) {
    std::ostringstream os;
    os << "constraint p > 1 violated: p = " << p;
    throw invalid_parameter(os.str());
  }
  if (which == EquilibriumId::P0) {
    throw invalid_parameter("off-origin closed form requested for the origin; "
                            "use l1_origin_closed");
  }
  const double w2 = p - 1.0;
  const double big_k = std::sqrt(s * s + 8.0 * w2);
  const double sign = (which == EquilibriumId::P1) ? -1.0 : 1.0;
  return p * (24.0 * w2 + 5.0 * s * s + sign * 3.0 * s * big_k) /
         (32.0 * w2 * w2 * std::sqrt(w2));
}

double bautin_transversality(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "constraint s > 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  const double s5 = std::pow(s, 5);
  return -9.0 * std::sqrt(2.0 / 3.0) * (3.0 + 2.0 * s * s) / (32.0 * s5);
}

double bautin_transversality_fd(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "constraint s > 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  const double p_star = 1.0 + 2.0 * s * s / 3.0;
  const double h = 1e-5 * (1.0 + p_star);
  const auto l1_at = [&](double p) {
    const ReducedParams prm{p, 1.0, s};
    return hopf_lyapunov(prm, {0.0, 0.0}).l1;
  };
  const double slope = (l1_at(p_star + h) - l1_at(p_star - h)) / (2.0 * h);
  return (2.0 / 3.0) * slope;
}

}  // namespace glacial
