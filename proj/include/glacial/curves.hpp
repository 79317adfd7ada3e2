#pragma once

// Hopf loci in the (p, r) parameter plane, the codimension-two point on the
// origin branch, and parameter-plane sweeps by equilibrium configuration.

#include <vector>

#include "glacial/equilibria.hpp"
#include "glacial/grid.hpp"
#include "glacial/lyapunov.hpp"
#include "glacial/model.hpp"

namespace glacial {

enum class HopfBranch { Origin, P1, P2 };

const char* to_string(HopfBranch b);

// r(p) along the trace-zero locus of each equilibrium branch, p > 1:
//   Origin: r = 1
//   P1:     r = (12 p - 4 - s^2 - s K) / 8,  K = sqrt(s^2 + 8 (p - 1))
//   P2:     r = (12 p - 4 - s^2 + s K) / 8
double hopf_r(HopfBranch which, double p, double s);

// Location of the branch equilibrium at the locus point (the origin, or
// x = (s -+ K)/4 with y = -x... P1 takes the + sign).
PlanarState hopf_equilibrium(HopfBranch which, double p, double s);

struct HopfSample {
  double p = 0.0;
  double r = 0.0;
  PlanarState equilibrium;
  double omega = 0.0;           // sqrt(p - 1) at every point of the family
  double trace_residual = 0.0;  // |tr J| at the sampled point
  double l1 = 0.0;
  Criticality criticality = Criticality::DegenerateCandidate;
};

struct HopfLocus {
  HopfBranch which = HopfBranch::Origin;
  double s = 0.0;
  std::vector<HopfSample> samples;
};

// Sampled polyline of a Hopf locus over p in [p_min, p_max] (n >= 2 points).
// Requires 1 < p_min < p_max; throws empty_range otherwise.
HopfLocus hopf_locus(HopfBranch which, double s, double p_min, double p_max, int n);

// The degenerate-Hopf point on the origin branch with its certificate.
struct BautinPoint {
  double r = 0.0;
  double p = 0.0;
  double l1 = 0.0;                 // pipeline value, zero within 1e-10
  double l2 = 0.0;                 // negative
  double transversality = 0.0;     // closed form, nonzero
  double transversality_fd = 0.0;  // finite-difference cross-check
};

BautinPoint bautin_point(double s);

// Locate the criticality switch on the origin branch by bisecting the sign
// of the pipeline l1 along r = 1; the bracket width ends below 1e-8.
double bautin_p_by_bisection(double s);

// Equilibrium configuration at one parameter point: which of the three root
// identities exist and their linear kinds.
struct RegionLabel {
  int n_equilibria = 0;
  std::optional<EquilibriumKind> kind_p0;
  std::optional<EquilibriumKind> kind_p1;
  std::optional<EquilibriumKind> kind_p2;
};

RegionLabel region_classify(const ReducedParams& prm);

struct SweepRow {
  double p = 0.0;
  double r = 0.0;
  double s = 0.0;
  RegionLabel label;
};

// Row-major sweep with p as the outer loop.
std::vector<SweepRow> sweep(double s, const GridSpec& p_grid, const GridSpec& r_grid);

}  // namespace glacial
