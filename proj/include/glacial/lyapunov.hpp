#pragma once

// First and second focus quantities at a linear center of the planar system,
// computed from multilinear Taylor data projected onto the critical
// eigenspace, together with closed-form references and the codimension-two
// transversality quantity.
//
// Gauge conventions.  With g-coefficients computed from eigenvectors
// (q, p), rescaling q -> kappa q (and p -> p / conj(kappa), keeping
// <p, q> = 1) multiplies the first focus quantity by |kappa|^2 and the
// second by |kappa|^4; a pure phase changes nothing.  The closed forms below
// are normalized as follows and the pipeline matches each one exactly:
//   - the l1 closed forms and the transversality quantity assume the
//     Projector eigenvector scale;
//   - the l2 closed form assumes the Adjugate scale.
// At an origin Hopf point the two scales differ by |kappa|^2 = p.

#include <complex>
#include <optional>

#include "glacial/equilibria.hpp"
#include "glacial/linalg.hpp"
#include "glacial/model.hpp"

namespace glacial {

// Multilinear derivative forms of the field at an equilibrium.  For this
// model every nonlinearity sits in the second component and depends only on
// the second coordinate, so each form is determined by one scalar per order.
// The field is cubic, hence fyyyy = 0 identically.
struct DerivativeTensors {
  double fyy = 0.0;
  double fyyy = 0.0;
  double fyyyy = 0.0;

  [[nodiscard]] CVec2 B(const CVec2& a, const CVec2& b) const {
    return {Complex(0.0, 0.0), fyy * a.c2 * b.c2};
  }
  [[nodiscard]] CVec2 C(const CVec2& a, const CVec2& b, const CVec2& c) const {
    return {Complex(0.0, 0.0), fyyy * a.c2 * b.c2 * c.c2};
  }
  [[nodiscard]] CVec2 D(const CVec2& a, const CVec2& b, const CVec2& c,
                        const CVec2& d) const {
    return {Complex(0.0, 0.0), fyyyy * a.c2 * b.c2 * c.c2 * d.c2};
  }
};

DerivativeTensors derivative_tensors(const ReducedParams& prm,
                                     const PlanarState& equilibrium);

// Projections g_jk = <p, M(q, ..., qbar, ...)> with j copies of q and k of
// qbar; orders two (B), three (C), four (D), and the fifth-order g32 which
// vanishes identically for a cubic field.
struct GCoefficients {
  Complex g20, g11, g02;
  Complex g30, g21, g12, g03;
  Complex g40, g31, g22, g13;
  Complex g32;
};

GCoefficients g_coefficients(const DerivativeTensors& t, const EigenPair& eig);

// First focus quantity: Re(i g20 g11 + omega g21) / (2 omega^2).
double first_lyapunov(const GCoefficients& g, double omega);

// Second focus quantity (valid on the l1 = 0 locus), phase-invariant form.
double second_lyapunov(const GCoefficients& g, double omega);

enum class Criticality { Supercritical, Subcritical, DegenerateCandidate };

const char* to_string(Criticality c);

struct LyapunovResult {
  double omega = 0.0;
  GCoefficients g;            // Projector-scale coefficients (used for l1)
  double l1 = 0.0;
  std::optional<double> l2;   // computed (Adjugate scale) only when
                              // |l1| <= 1e-6 * omega
  Criticality criticality = Criticality::DegenerateCandidate;
};

// Full pipeline at a claimed equilibrium: verifies the equilibrium residual,
// requires a linear center there, and evaluates l1 (and l2 when l1 is
// numerically zero).
LyapunovResult hopf_lyapunov(const ReducedParams& prm, const PlanarState& equilibrium);

// Closed forms.
// At the origin Hopf locus r = 1, p > 1 (Projector scale):
//   l1 = -p (3 (p - 1) - 2 s^2) / (8 (p - 1)^(5/2)).
double l1_origin_closed(double p, double s);

// At the codimension-two point (r, p) = (1, 1 + 2 s^2/3), s > 0 (Adjugate
// scale):  l2 = -5 (3 + 2 s^2)^4 / (128 sqrt(6) s^7).
double l2_origin_closed(double s);

// On the off-origin Hopf loci (Projector scale), K = sqrt(s^2 + 8 (p - 1)):
//   P1:  l1 = p (24 (p - 1) + 5 s^2 - 3 s K) / (32 (p - 1)^(5/2))
//   P2:  same with + 3 s K.
double l1_offorigin_closed(double p, double s, EquilibriumId which);

// Transversal derivative of l1 across the codimension-two point, closed form
//   -9 sqrt(2/3) (3 + 2 s^2) / (32 s^5),
// equal to (2/3) d(l1)/dp along r = 1 at p = 1 + 2 s^2/3.
double bautin_transversality(double s);

// The same quantity via a centered finite difference of the pipeline l1.
double bautin_transversality_fd(double s);

}  // namespace glacial
