#include "glacial/curves.hpp"

#include <cmath>
#include <sstream>

namespace glacial {

GridSpec::GridSpec(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw invalid_parameter("grid endpoints must be finite");
  }
  if (n < 1) {
    std::ostringstream os;
    os << "grid size must be >= 1, got " << n;
    throw invalid_parameter(os.str());
  }
  if (n == 1 && lo != hi) {
    throw invalid_parameter("a one-point grid requires lo == hi");
  }
  if (lo > hi) {
    std::ostringstream os;
    os << "grid range is inverted: [" << lo << ", " << hi << "]";
    throw empty_range(os.str());
  }
}

std::vector<double> GridSpec::points() const {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    pts.push_back(lo);
    return pts;
  }
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    pts.push_back(i == n - 1 ? hi : lo + step * i);
  }
  return pts;
}

const char* to_string(HopfBranch b) {
  switch (b) {
    case HopfBranch::Origin: return "Origin";
    case HopfBranch::P1: return "P1";
    case HopfBranch::P2: return "P2";
  }
  return "unknown";
}

namespace {

void require_p_above_one(double p) {
  if (!(p > 1.0)) {
    std::ostringstream os;
    os << "constraint p > 1 violated: p = " << p;
    throw invalid_parameter(os.str());
  }
}

void require_s_nonnegative(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "constraint s >= 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
}

}  // namespace

double hopf_r(HopfBranch which, double p, double s) {
  require_p_above_one(p);
  require_s_nonnegative(s);
  if (which == HopfBranch::Origin) return 1.0;
  const double big_k = std::sqrt(s * s + 8.0 * (p - 1.0));
  const double sign = (which == HopfBranch::P1) ? -1.0 : 1.0;
  return (12.0 * p - 4.0 - s * s + sign * s * big_k) / 8.0;
}

PlanarState hopf_equilibrium(HopfBranch which, double p, double s) {
  require_p_above_one(p);
  require_s_nonnegative(s);
  if (which == HopfBranch::Origin) return {0.0, 0.0};
  const double big_k = std::sqrt(s * s + 8.0 * (p - 1.0));
  const double x =
      (which == HopfBranch::P1) ? 0.25 * (s + big_k) : 0.25 * (s - big_k);
  return {x, -x};
}

HopfLocus hopf_locus(HopfBranch which, double s, double p_min, double p_max, int n) {
  require_s_nonnegative(s);
  if (!(p_min > 1.0) || !(p_max > p_min)) {
    std::ostringstream os;
    os << "locus range must satisfy 1 < p_min < p_max, got [" << p_min << ", "
       << p_max << "]";
    throw empty_range(os.str());
  }
  if (n < 2) {
    std::ostringstream os;
    os << "locus sampling needs n >= 2 points, got " << n;
    throw empty_range(os.str());
  }
  HopfLocus locus;
  locus.which = which;
  locus.s = s;
  locus.samples.reserve(static_cast<std::size_t>(n));
  const double step = (p_max - p_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double p = (i == n - 1) ? p_max : p_min + step * i;
    HopfSample sample;
    sample.p = p;
    sample.r = hopf_r(which, p, s);
    sample.equilibrium = hopf_equilibrium(which, p, s);
    const ReducedParams prm{p, sample.r, s};
    const Matrix2 j = jacobian_reduced(prm, sample.equilibrium);
    sample.trace_residual = std::abs(j.trace());
    const LyapunovResult lr = hopf_lyapunov(prm, sample.equilibrium);
    sample.omega = lr.omega;
    sample.l1 = lr.l1;
    sample.criticality = lr.criticality;
    locus.samples.push_back(sample);
  }
  return locus;
}

BautinPoint bautin_point(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "constraint s > 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  BautinPoint bp;
  bp.r = 1.0;
  bp.p = 1.0 + 2.0 * s * s / 3.0;
  const ReducedParams prm{bp.p, bp.r, s};
  const LyapunovResult lr = hopf_lyapunov(prm, {0.0, 0.0});
  bp.l1 = lr.l1;
  bp.l2 = lr.l2.value_or(second_lyapunov(
      g_coefficients(derivative_tensors(prm, {0.0, 0.0}),
                     hopf_eigendata(jacobian_reduced(prm, {0.0, 0.0}),
                                    EigenvectorScale::Adjugate)),
      lr.omega));
  bp.transversality = bautin_transversality(s);
  bp.transversality_fd = bautin_transversality_fd(s);
  return bp;
}

double bautin_p_by_bisection(double s) {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "constraint s > 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  const auto l1_at = [&](double p) {
    return hopf_lyapunov(ReducedParams{p, 1.0, s}, {0.0, 0.0}).l1;
  };
  double lo = 1.0 + s * s / 3.0;       // l1 > 0 here (subcritical side)
  double hi = 1.0 + 4.0 * s * s / 3.0; // l1 < 0 here (supercritical side)
  double f_lo = l1_at(lo);
  double f_hi = l1_at(hi);
  if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
    throw no_sign_change("criticality bracket does not straddle the switch");
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = l1_at(mid);
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RegionLabel region_classify(const ReducedParams& prm) {
  RegionLabel label;
  const auto eqs = find_equilibria(prm);
  label.n_equilibria = static_cast<int>(eqs.size());
  for (const auto& eq : eqs) {
    switch (eq.id) {
      case EquilibriumId::P0: label.kind_p0 = eq.kind; break;
      case EquilibriumId::P1: label.kind_p1 = eq.kind; break;
      case EquilibriumId::P2: label.kind_p2 = eq.kind; break;
    }
  }
  return label;
}

std::vector<SweepRow> sweep(double s, const GridSpec& p_grid, const GridSpec& r_grid) {
  require_s_nonnegative(s);
  std::vector<SweepRow> rows;
  const auto ps = p_grid.points();
  const auto rs = r_grid.points();
  rows.reserve(ps.size() * rs.size());
  for (double p : ps) {
    for (double r : rs) {
      SweepRow row;
      row.p = p;
      row.r = r;
      row.s = s;
      row.label = region_classify(ReducedParams{p, r, s});
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace glacial
