#include "glacial/melnikov.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace glacial {

const char* to_string(LoopBranch b) {
  switch (b) {
    case LoopBranch::LeftLoop: return "LeftLoop";
    case LoopBranch::RightLoop: return "RightLoop";
  }
  return "unknown";
}

const char* to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::LeftLoop: return "LeftLoop";
    case SurfaceKind::RightLoop: return "RightLoop";
    case SurfaceKind::DoubleLoop: return "DoubleLoop";
  }
  return "unknown";
}

const char* to_string(LevelBranch b) {
  switch (b) {
    case LevelBranch::Outer: return "Outer";
    case LevelBranch::InnerRight: return "InnerRight";
    case LevelBranch::InnerLeft: return "InnerLeft";
  }
  return "unknown";
}

namespace {

void require_loop_domain(double delta, double mu) {
  if (!std::isfinite(delta) || !std::isfinite(mu)) {
    throw invalid_parameter("delta and mu must be finite");
  }
  if (!(delta >= 0.0)) {
    std::ostringstream os;
    os << "constraint delta >= 0 violated: delta = " << delta;
    throw invalid_parameter(os.str());
  }
  if (!(mu > 0.0)) {
    std::ostringstream os;
    os << "constraint mu > 0 violated: mu = " << mu;
    throw invalid_parameter(os.str());
  }
}

constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  if (n < 2) throw invalid_parameter("Gauss-Legendre order must be >= 2");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th positive root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: P_0 = 1, P_1 = x,
      // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[static_cast<std::size_t>(i)] = {-x, w};
    out[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  return out;
}

HomoclinicOrbit::HomoclinicOrbit(LoopBranch branch, double delta, double mu)
    : branch_(branch), delta_(delta), mu_(mu) {
  require_loop_domain(delta, mu);
  alpha_ = std::sqrt(mu / (2.0 * delta * delta + 9.0 * mu));
}

HamState HomoclinicOrbit::point(double t) const {
  const double rmu = std::sqrt(mu_);
  const double shift = kSqrt2 * delta_ * alpha_;
  const double ch = std::cosh(rmu * t);
  const double sh = std::sinh(rmu * t);
  const double amp = 3.0 * kSqrt2 * mu_ * alpha_;
  if (branch_ == LoopBranch::LeftLoop) {
    const double den = rmu * ch + shift;
    return {-amp / den, 3.0 * kSqrt2 * mu_ * mu_ * alpha_ * sh / (den * den)};
  }
  const double den = rmu * ch - shift;
  return {amp / den, -3.0 * kSqrt2 * mu_ * mu_ * alpha_ * sh / (den * den)};
}

void QuadratureConfig::validate() const {
  if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
    throw invalid_parameter("quadrature tail_tol must be in (0, 1)");
  }
  if (panels < 1 || nodes < 2) {
    throw invalid_parameter("quadrature needs panels >= 1 and nodes >= 2");
  }
}

namespace {

struct LoopIntegrals {
  double i0 = 0.0, i1 = 0.0, i2 = 0.0;
};

// Composite Gauss-Legendre over [-T, T] with cubically graded panel edges
// T * h^3, h uniform in [-1, 1]; the grading concentrates panels near the
// apex passage at t = 0 where the loop moves fastest.
LoopIntegrals loop_integrals(const HomoclinicOrbit& orbit, double trunc_t,
                             int panels, int nodes) {
  const auto gl = gauss_legendre(nodes);
  LoopIntegrals acc;
  for (int j = 0; j < panels; ++j) {
    const double hl = -1.0 + 2.0 * static_cast<double>(j) / panels;
    const double hr = -1.0 + 2.0 * static_cast<double>(j + 1) / panels;
    const double tl = trunc_t * hl * hl * hl;
    const double tr = trunc_t * hr * hr * hr;
    const double mid = 0.5 * (tl + tr);
    const double rad = 0.5 * (tr - tl);
    for (const auto& [xi, wi] : gl) {
      const double t = mid + rad * xi;
      const HamState st = orbit.point(t);
      const double v2 = st.v * st.v;
      const double w = wi * rad;
      acc.i0 += w * v2;
      acc.i1 += w * st.u * v2;
      acc.i2 += w * st.u * st.u * v2;
    }
  }
  return acc;
}

}  // namespace

MelnikovResult melnikov_integrals(const HomoclinicOrbit& orbit,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  const double trunc_t = std::log(1.0 / cfg.tail_tol) / std::sqrt(orbit.mu());
  const LoopIntegrals coarse =
      loop_integrals(orbit, trunc_t, cfg.panels, cfg.nodes);
  const LoopIntegrals fine =
      loop_integrals(orbit, trunc_t, 2 * cfg.panels, cfg.nodes);

  const auto rel_gap = [](double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  };
  MelnikovResult out;
  out.i0 = fine.i0;
  out.i1 = fine.i1;
  out.i2 = fine.i2;
  out.truncation_time = trunc_t;
  out.refinement_gap = std::max({rel_gap(coarse.i0, fine.i0),
                                 rel_gap(coarse.i1, fine.i1),
                                 rel_gap(coarse.i2, fine.i2)});
  if (!(std::isfinite(out.i0) && std::isfinite(out.i1) && std::isfinite(out.i2)) ||
      out.refinement_gap > 1e-8) {
    std::ostringstream os;
    os << "persistence integrals did not converge (refinement gap "
       << out.refinement_gap << ")";
    throw quadrature_failure(os.str());
  }
  if (!(out.i0 > 0.0)) {
    throw quadrature_failure("the v^2 integral must be positive");
  }
  out.lambda_root = (3.0 * out.i2 - 2.0 * orbit.delta() * out.i1) / out.i0;
  return out;
}

double lambda_single(LoopBranch branch, double delta, double mu) {
  require_loop_domain(delta, mu);
  const double rmu = std::sqrt(mu);
  const double d2 = delta * delta;
  const double g2 = 2.0 * d2 + 9.0 * mu;
  const double g = std::sqrt(g2);
  const double sign = (branch == LoopBranch::LeftLoop) ? -1.0 : 1.0;
  const double arg = (kSqrt2 * delta + sign * g) / (3.0 * rmu);
  const double a = std::atan(arg);
  const double num = 5.0 * kSqrt2 * delta * g2 * g2 * a +
                     3.0 * rmu * (10.0 * d2 * d2 + 75.0 * d2 * mu + 108.0 * mu * mu);
  const double den = 15.0 * (kSqrt2 * delta * g2 * a + 3.0 * rmu * (d2 + 3.0 * mu));
  return num / den;
}

double lambda_double(double delta, double mu) {
  require_loop_domain(delta, mu);
  const double rmu = std::sqrt(mu);
  const double d2 = delta * delta;
  const double g2 = 2.0 * d2 + 9.0 * mu;
  const double g = std::sqrt(g2);
  const double a = std::atan((kSqrt2 * delta + g) / (3.0 * rmu)) +
                   std::atan((kSqrt2 * delta - g) / (3.0 * rmu));
  const double num =
      5.0 * kSqrt2 * a * delta * (2.0 * d2 + 3.0 * mu) * g2 +
      6.0 * rmu * (10.0 * d2 * d2 + 45.0 * d2 * mu + 18.0 * mu * mu);
  const double den = 5.0 * kSqrt2 * a * delta * g2 + 30.0 * rmu * (d2 + 3.0 * mu);
  return 2.0 * num / den;
}

double lambda_double_sum(double delta, double mu, const QuadratureConfig& cfg) {
  const MelnikovResult left =
      melnikov_integrals(HomoclinicOrbit(LoopBranch::LeftLoop, delta, mu), cfg);
  const MelnikovResult right =
      melnikov_integrals(HomoclinicOrbit(LoopBranch::RightLoop, delta, mu), cfg);
  const double i0 = left.i0 + right.i0;
  const double i1 = left.i1 + right.i1;
  const double i2 = left.i2 + right.i2;
  return (3.0 * i2 - 2.0 * delta * i1) / i0;
}

std::vector<SurfaceRow> persistence_surface(SurfaceKind kind,
                                            const GridSpec& delta_grid,
                                            const GridSpec& mu_grid) {
  std::vector<SurfaceRow> rows;
  const auto deltas = delta_grid.points();
  const auto mus = mu_grid.points();
  rows.reserve(deltas.size() * mus.size());
  for (double d : deltas) {
    for (double m : mus) {
      SurfaceRow row;
      row.delta = d;
      row.mu = m;
      switch (kind) {
        case SurfaceKind::LeftLoop:
          row.lambda = lambda_single(LoopBranch::LeftLoop, d, m);
          break;
        case SurfaceKind::RightLoop:
          row.lambda = lambda_single(LoopBranch::RightLoop, d, m);
          break;
        case SurfaceKind::DoubleLoop:
          row.lambda = lambda_double(d, m);
          break;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

// Integrals of u^k sqrt(v2(u)) via the endpoint substitution u = turn -+ w^2
// that removes the square-root singularity at a simple turning point.
struct LevelSlice {
  double i0 = 0.0;
  double i2 = 0.0;
};

// v^2 on the level set.
double level_v2(double alpha, double u) {
  return 2.0 * alpha + u * u - 0.5 * u * u * u * u;
}

// Accumulate the contribution of u in [u_from, u_to] where the substitution
// u = u_turn + dir * w^2 maps w in [0, sqrt(|u_to - u_from|)]; u_turn is the
// simple zero of v2 at u_from.
LevelSlice level_slice(double alpha, double u_turn, double dir, double w_max,
                       const std::vector<std::pair<double, double>>& gl,
                       int panels) {
  LevelSlice acc;
  for (int j = 0; j < panels; ++j) {
    const double wl = w_max * static_cast<double>(j) / panels;
    const double wr = w_max * static_cast<double>(j + 1) / panels;
    const double mid = 0.5 * (wl + wr);
    const double rad = 0.5 * (wr - wl);
    for (const auto& [xi, wi] : gl) {
      const double w = mid + rad * xi;
      const double u = u_turn + dir * w * w;
      const double v2 = std::max(0.0, level_v2(alpha, u));
      const double val = std::sqrt(v2) * 2.0 * w * wi * rad;
      acc.i0 += val;
      acc.i2 += val * u * u;
    }
  }
  return acc;
}

}  // namespace

double ralpha(double alpha, LevelBranch branch) {
  if (!std::isfinite(alpha)) throw invalid_parameter("alpha must be finite");
  const auto gl = gauss_legendre(20);
  const int panels = 16;
  if (branch == LevelBranch::Outer) {
    if (!(alpha > 0.0)) {
      std::ostringstream os;
      os << "outer branch requires alpha > 0, got " << alpha;
      throw invalid_parameter(os.str());
    }
    const double umax = std::sqrt(1.0 + std::sqrt(1.0 + 4.0 * alpha));
    // Evenness: integrate u in [0, umax] from the turning point inward.
    const LevelSlice s =
        level_slice(alpha, umax, -1.0, std::sqrt(umax), gl, panels);
    return 3.0 * s.i2 / s.i0;
  }
  if (!(alpha > -0.25) || !(alpha < 0.0)) {
    std::ostringstream os;
    os << "inner branches require -1/4 < alpha < 0, got " << alpha;
    throw invalid_parameter(os.str());
  }
  // Right well between the two positive turning points; the left well is its
  // mirror image and yields the same ratio.
  const double rt = std::sqrt(1.0 + 4.0 * alpha);
  const double u_hi = std::sqrt(1.0 + rt);
  const double u_lo = std::sqrt(1.0 - rt);
  const double u_mid = 0.5 * (u_lo + u_hi);
  const LevelSlice upper =
      level_slice(alpha, u_hi, -1.0, std::sqrt(u_hi - u_mid), gl, panels);
  const LevelSlice lower =
      level_slice(alpha, u_lo, 1.0, std::sqrt(u_mid - u_lo), gl, panels);
  return 3.0 * (upper.i2 + lower.i2) / (upper.i0 + lower.i0);
}

KappaResult kappa_min() {
  // Golden-section minimization of R over the outer branch.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-6;
  double b = 50.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = ralpha(c, LevelBranch::Outer);
  double fd = ralpha(d, LevelBranch::Outer);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = ralpha(c, LevelBranch::Outer);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = ralpha(d, LevelBranch::Outer);
    }
  }
  KappaResult out;
  out.alpha_star = 0.5 * (a + b);
  out.kappa = ralpha(out.alpha_star, LevelBranch::Outer);
  return out;
}

}  // namespace glacial
