#pragma once

// Explicit saddle loops of the integrable rescaled system, first-order
// persistence of single and double loops under the dissipative perturbation
// (closed forms and independent quadrature), and the area ratio R(alpha)
// on level sets of the symmetric Hamiltonian with its minimum kappa.

#include <vector>

#include "glacial/grid.hpp"
#include "glacial/model.hpp"

namespace glacial {

enum class LoopBranch { LeftLoop, RightLoop };

const char* to_string(LoopBranch b);

// One explicit homoclinic loop of  u' = v, v' = mu u + delta u^2 - u^3
// (delta >= 0, mu > 0), based at the saddle (0, 0).  With
// alpha = sqrt(mu / (2 delta^2 + 9 mu)) and D(t) the branch denominator
//   D(t) = sqrt(mu) cosh(sqrt(mu) t) +- sqrt(2) delta alpha   (+ left, - right),
// the loop is
//   u(t) = -+ 3 sqrt(2) mu alpha / D(t)          (- left, + right)
//   v(t) = +- 3 sqrt(2) mu^2 alpha sinh(sqrt(mu) t) / D(t)^2.
// The loop lies on the zero level of the Hamiltonian.
class HomoclinicOrbit {
 public:
  HomoclinicOrbit(LoopBranch branch, double delta, double mu);

  [[nodiscard]] LoopBranch branch() const { return branch_; }
  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] double mu() const { return mu_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] HamState point(double t) const;

 private:
  LoopBranch branch_;
  double delta_;
  double mu_;
  double alpha_;
};

// Composite Gauss-Legendre design for the persistence integrals: `panels`
// panels over the truncated line [-T, T] with cubically graded edges T h^3
// (h uniform in [-1, 1]), `nodes` nodes per panel, and truncation
// T = ln(1/tail_tol) / sqrt(mu).
struct QuadratureConfig {
  double tail_tol = 1e-12;
  int panels = 24;
  int nodes = 24;

  void validate() const;
};

struct MelnikovResult {
  double i0 = 0.0;  // integral of v^2
  double i1 = 0.0;  // integral of u v^2
  double i2 = 0.0;  // integral of u^2 v^2
  double lambda_root = 0.0;  // (3 i2 - 2 delta i1) / i0
  double truncation_time = 0.0;
  double refinement_gap = 0.0;  // max relative change under panel doubling
};

// The three persistence integrals along a loop, by quadrature, with a
// self-check under refinement; throws quadrature_failure if the refined
// values disagree beyond 1e-8 relative.
MelnikovResult melnikov_integrals(const HomoclinicOrbit& orbit,
                                  const QuadratureConfig& cfg = {});

// Closed-form persistence root for a single loop.  With
// g = sqrt(2 delta^2 + 9 mu) and A = arctan((sqrt(2) delta -+ g)/(3 sqrt(mu)))
// (- for the left loop, + for the right):
//   lambda = [5 sqrt(2) delta g^4 A + 3 sqrt(mu) (10 d^4 + 75 d^2 mu + 108 mu^2)]
//          / [15 (sqrt(2) delta g^2 A + 3 sqrt(mu) (d^2 + 3 mu))].
double lambda_single(LoopBranch branch, double delta, double mu);

// Closed-form persistence root for the double loop (both separatrices at
// once), with A the sum of both arctangents:
//   lambda = 2 [5 sqrt(2) A delta (2 d^2 + 3 mu) g^2 + 6 sqrt(mu) (10 d^4 + 45 d^2 mu + 18 mu^2)]
//          /   [5 sqrt(2) A delta g^2 + 30 sqrt(mu) (d^2 + 3 mu)].
double lambda_double(double delta, double mu);

// Quadrature combination of both loops' integrals,
// (3 (i2L + i2R) - 2 delta (i1L + i1R)) / (i0L + i0R).  For delta = 0 this
// agrees with lambda_double; for delta > 0 the two deliberately differ (the
// double-loop root is not the sum-combination of the single-loop integrals),
// and this function is provided so that the difference can be measured.
double lambda_double_sum(double delta, double mu, const QuadratureConfig& cfg = {});

enum class SurfaceKind { LeftLoop, RightLoop, DoubleLoop };

const char* to_string(SurfaceKind k);

struct SurfaceRow {
  double delta = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
};

// Tabulated persistence surface lambda(delta, mu), row-major with delta as
// the outer loop.  Requires mu > 0 and delta >= 0 over the whole grid.
std::vector<SurfaceRow> persistence_surface(SurfaceKind kind,
                                            const GridSpec& delta_grid,
                                            const GridSpec& mu_grid);

// Area ratio R(alpha) = 3 (closed-loop integral of u^2 v du) / (integral of
// v du) on the level set v^2 = 2 alpha + u^2 - u^4/2 of the symmetric
// (delta = 0, mu = 1) Hamiltonian.  Outer demands alpha > 0; the two inner
// branches demand -1/4 < alpha < 0 and are mirror images of each other.
enum class LevelBranch { Outer, InnerRight, InnerLeft };

const char* to_string(LevelBranch b);

double ralpha(double alpha, LevelBranch branch);

// Minimum of R over the outer branch, alpha in (0, 50], located by
// golden-section search to 1e-10 in alpha.
struct KappaResult {
  double alpha_star = 0.0;
  double kappa = 0.0;
};

KappaResult kappa_min();

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on the
// Legendre recurrence; no stored tables).
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace glacial
