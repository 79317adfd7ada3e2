#pragma once

// Equilibrium finding and linear classification for the reduced planar
// system, its codimension-one/two degeneracy loci in the (p, r) plane, and
// the equilibria of the integrable rescaled system.

#include <array>
#include <vector>

#include "glacial/linalg.hpp"
#include "glacial/model.hpp"

namespace glacial {

enum class EquilibriumKind {
  SaddlePoint,
  StableNode,
  UnstableNode,
  StableDegenerateNode,
  UnstableDegenerateNode,
  StableFocus,
  UnstableFocus,
  LinearCenter,
  DoubleZero,
  ZeroEigenvalue,
};

const char* to_string(EquilibriumKind kind);

// Identity of a root of the equilibrium equation x^2 - s x + (p - r) = 0
// (together with the origin): P0 is the origin, P1 the plus root
// x = (s + sqrt(Delta))/2, P2 the minus root, Delta = s^2 + 4 (r - p).
enum class EquilibriumId { P0, P1, P2 };

const char* to_string(EquilibriumId id);

struct Equilibrium {
  PlanarState location;
  std::array<Complex, 2> eigenvalues;
  EquilibriumKind kind = EquilibriumKind::SaddlePoint;
  EquilibriumId id = EquilibriumId::P0;
  // True when two analytically distinct roots coincided within the merge
  // tolerance and were reported as this single entry.
  bool collision = false;
};

// All equilibria, sorted by x descending.  The origin is always present.
// Roots closer than 1e-9 (max-norm) are merged into one entry flagged as a
// collision; a double root (Delta = 0 within tolerance) is reported once at
// (s/2, -s/2).
std::vector<Equilibrium> find_equilibria(const ReducedParams& prm);

// Linear kind from trace/determinant/discriminant with relative tolerances
// 1e-10 * (1 + matrix magnitude) for the exact-degeneracy labels.
EquilibriumKind classify_matrix(const Matrix2& m);

// Classify a claimed equilibrium location; throws not_an_equilibrium if the
// field residual there exceeds 1e-8 * (1 + |x| + |y|).
Equilibrium classify(const ReducedParams& prm, const PlanarState& location);

struct ParamPoint {
  double p = 0.0;
  double r = 0.0;
};

// Codimension-one and -two degeneracy loci in the (p, r) plane for fixed s:
// the fold (saddle-node) line p = r + s^2/4, the transcritical line p = r,
// and the two double-zero (Bogdanov-Takens) points.  The residual fields are
// numerical certificates computed at probe values of r.
struct DegeneracyLoci {
  double s = 0.0;
  ParamPoint bt_origin;     // (p, r) = (1, 1)
  ParamPoint bt_offorigin;  // (p, r) = (1, 1 - s^2/4)

  double fold_zero_eigenvalue_residual = 0.0;
  double transcritical_zero_eigenvalue_residual = 0.0;
  double bt_origin_nilpotency = 0.0;     // max-norm of J^2 at the BT point
  double bt_offorigin_nilpotency = 0.0;
  bool bt_eigenspace_one_dimensional = false;

  [[nodiscard]] double fold_p(double r) const { return r + 0.25 * s * s; }
  [[nodiscard]] double transcritical_p(double r) const { return r; }
  // The non-zero eigenvalue on the fold line (the double root's trace).
  [[nodiscard]] double fold_other_eigenvalue(double r) const {
    return r + 0.25 * s * s - 1.0;
  }
};

DegeneracyLoci degeneracy_loci(double s);

// Equilibria of the eta = 0 rescaled system v' = mu u + delta u^2 - u^3 on
// the u-axis, sorted by u descending; kinds are SaddlePoint, LinearCenter,
// or DoubleZero according to the sign of f'(u) = mu + 2 delta u - 3 u^2.
struct HamiltonianEquilibrium {
  HamState location;
  EquilibriumKind kind = EquilibriumKind::SaddlePoint;
  double fprime = 0.0;
};

std::vector<HamiltonianEquilibrium> hamiltonian_equilibria(double delta, double mu);

}  // namespace glacial
