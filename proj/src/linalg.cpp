#include "glacial/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace glacial {

Complex inner(const CVec2& p, const CVec2& q) {
  return std::conj(p.c1) * q.c1 + std::conj(p.c2) * q.c2;
}

std::array<Complex, 2> eig2(const Matrix2& m) {
  const double tr = m.trace();
  const double det = m.det();
  const double disc = tr * tr - 4.0 * det;
  std::array<Complex, 2> roots;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Stable quadratic roots: compute the larger-magnitude root first.
    double r1, r2;
    if (tr >= 0.0) {
      r1 = 0.5 * (tr + sq);
    } else {
      r1 = 0.5 * (tr - sq);
    }
    if (r1 != 0.0) {
      r2 = det / r1;
    } else {
      r2 = 0.5 * (tr + sq) + 0.5 * (tr - sq) - r1;  // both roots are 0
    }
    roots = {Complex(std::max(r1, r2), 0.0), Complex(std::min(r1, r2), 0.0)};
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    roots = {Complex(0.5 * tr, im), Complex(0.5 * tr, -im)};
  }
  return roots;
}

std::array<Complex, 3> eig3(const Matrix3& m) {
  const auto& a = m.a;
  const double c2 = a[0][0] + a[1][1] + a[2][2];
  const double c1 = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) +
                    (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
                    (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
  const double c0 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                    a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                    a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  // Characteristic polynomial: z^3 - c2 z^2 + c1 z - c0.  Depress with
  // z = t + c2/3:  t^3 + pp t + qq.
  const double sh = c2 / 3.0;
  const double pp = c1 - c2 * c2 / 3.0;
  const double qq = -c0 + c1 * sh - 2.0 * sh * sh * sh;
  // t^3 + pp t + qq = 0
  const double discr = qq * qq / 4.0 + pp * pp * pp / 27.0;
  std::array<Complex, 3> roots;
  if (discr > 0.0) {
    // One real root, one complex pair.
    const double sq = std::sqrt(discr);
    const double u3 = -qq / 2.0 + sq;
    const double v3 = -qq / 2.0 - sq;
    const double u = std::cbrt(u3);
    const double v = std::cbrt(v3);
    const double t1 = u + v;
    const double re = -t1 / 2.0;
    const double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
    roots = {Complex(t1 + sh, 0.0), Complex(re + sh, im), Complex(re + sh, -im)};
  } else {
    // Three real roots (trigonometric form).
    const double rho = std::sqrt(std::max(0.0, -pp * pp * pp / 27.0));
    double phi = 0.0;
    if (rho > 0.0) {
      double c = -qq / (2.0 * rho);
      c = std::clamp(c, -1.0, 1.0);
      phi = std::acos(c);
    }
    const double mag = 2.0 * std::sqrt(std::max(0.0, -pp / 3.0));
    for (int k = 0; k < 3; ++k) {
      roots[static_cast<std::size_t>(k)] =
          Complex(mag * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0) + sh, 0.0);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& l, const Complex& r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });
  return roots;
}

EigenPair hopf_eigendata(const Matrix2& m, EigenvectorScale scale) {
  const double tr = m.trace();
  const double mag = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                               std::abs(m.a22)});
  if (std::abs(tr) > 1e-10 * (1.0 + mag)) {
    std::ostringstream os;
    os << "matrix trace " << tr << " is not zero within 1e-10 * (1 + " << mag << ")";
    throw not_a_hopf_point(os.str());
  }
  // abar is the trace-centered diagonal half-difference; for an exact linear
  // center omega^2 = -abar^2 - a12 a21 = det > 0.
  const double abar = 0.5 * (m.a11 - m.a22);
  const double w2 = -abar * abar - m.a12 * m.a21;
  if (!(w2 > 0.0)) {
    std::ostringstream os;
    os << "matrix determinant is not positive (omega^2 = " << w2 << ")";
    throw not_a_hopf_point(os.str());
  }
  const double omega = std::sqrt(w2);
  // det > 0 forces a12 a21 < -abar^2 <= 0, so both off-diagonals are nonzero.
  const Complex iw(0.0, omega);
  CVec2 q{Complex(m.a12, 0.0) / (2.0 * iw), (iw - abar) / (2.0 * iw)};
  if (scale == EigenvectorScale::Adjugate) {
    const Complex kappa = Complex(m.a22, 0.0) - iw;
    q.c1 *= kappa;
    q.c2 *= kappa;
  }
  CVec2 p{Complex(-m.a21, 0.0), Complex(abar, omega)};
  const Complex denom = std::conj(inner(p, q));
  p.c1 /= denom;
  p.c2 /= denom;
  // Deterministic common phase: rotate so the largest-modulus component of q
  // is real and positive.  Dividing both vectors by the same unit phase
  // preserves <p, q> = 1.
  const Complex piv = (std::abs(q.c1) >= std::abs(q.c2)) ? q.c1 : q.c2;
  const double piv_mod = std::abs(piv);
  if (piv_mod > 0.0) {
    const Complex phase = piv / piv_mod;
    q.c1 /= phase;
    q.c2 /= phase;
    p.c1 /= phase;
    p.c2 /= phase;
  }
  return {omega, q, p};
}

}  // namespace glacial
