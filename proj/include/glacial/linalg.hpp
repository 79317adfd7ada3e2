#pragma once

// Tiny dense eigen-helpers for the 2x2 Jacobians of the planar model, plus a
// characteristic-cubic 3x3 solver used only for slow-fast diagnostics.

#include <array>
#include <complex>

#include "glacial/errors.hpp"
#include "glacial/model.hpp"

namespace glacial {

using Complex = std::complex<double>;

// Complex 2-vector.
struct CVec2 {
  Complex c1{0.0, 0.0};
  Complex c2{0.0, 0.0};
};

// Hermitian pairing <p, q> = conj(p1) q1 + conj(p2) q2.
Complex inner(const CVec2& p, const CVec2& q);

// Eigenvalues of a real 2x2 matrix, roots of z^2 - tr z + det, sorted by
// imaginary part descending (for a complex pair the +i omega root first), and
// for two real roots by value descending.
std::array<Complex, 2> eig2(const Matrix2& m);

// Eigenvalues of a real 3x3 matrix via its characteristic cubic (Cardano),
// sorted by real part ascending, ties by imaginary part ascending.
std::array<Complex, 3> eig3(const Matrix3& m);

// Eigenvector scaling conventions for a linear center (Hopf candidate).
// Both produce a right eigenvector q for +i omega and the left eigenvector p
// normalized so that <p, q> = 1.  They differ by the complex scalar
// (a22 - i omega):
//   Projector: q = (a12, i omega - abar) / (2 i omega),  abar = (a11 - a22)/2.
//   Adjugate:  q = (a22 - i omega) * q_projector = adj-column form.
// Downstream Taylor coefficients depend on this gauge; the first and second
// focus quantities computed from them scale by |kappa|^2 and |kappa|^4 under
// q -> kappa q.  See lyapunov.hpp for which scale each closed form expects.
enum class EigenvectorScale { Projector, Adjugate };

struct EigenPair {
  double omega = 0.0;  // positive imaginary part of the eigenvalue pair
  CVec2 q;             // right eigenvector for +i omega
  CVec2 p;             // left eigenvector (of A^T, conjugated pairing), <p,q> = 1
};

// Eigendata at a linear center.  Preconditions: |trace| <= 1e-10 * (1 + max
// |entry|) and det > 0; otherwise throws not_a_hopf_point.  The returned pair
// satisfies the residual bounds ||A q - i omega q|| <= 1e-12 and
// ||A^T p + i omega p|| <= 1e-12 (scaled), and <p, q> = 1 to 1e-12.
// Determinism: after scaling, both vectors are rotated by a common unit phase
// so that the largest-modulus component of q is real and positive (this
// preserves <p, q> = 1 and every phase-invariant quantity downstream).
EigenPair hopf_eigendata(const Matrix2& m,
                         EigenvectorScale scale = EigenvectorScale::Projector);

}  // namespace glacial
