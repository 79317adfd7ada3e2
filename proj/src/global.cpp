#include "glacial/global.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glacial {

const char* to_string(LimitCycle::Stability s) {
  switch (s) {
    case LimitCycle::Stability::Stable: return "Stable";
    case LimitCycle::Stability::Unstable: return "Unstable";
  }
  return "unknown";
}

const char* to_string(LoopSide side) {
  switch (side) {
    case LoopSide::Left: return "Left";
    case LoopSide::Right: return "Right";
  }
  return "unknown";
}

const char* to_string(RescaledLoopKind k) {
  switch (k) {
    case RescaledLoopKind::SingleLeft: return "SingleLeft";
    case RescaledLoopKind::SingleRight: return "SingleRight";
    case RescaledLoopKind::DoubleLoop: return "DoubleLoop";
  }
  return "unknown";
}

namespace {

using State2 = State<2>;

auto planar_field(const ReducedParams& prm) {
  return [prm](const State2& st) -> State2 {
    const PlanarState f = reduced_field(prm, {st[0], st[1]});
    return {f.x, f.y};
  };
}

auto planar_field_negated(const ReducedParams& prm) {
  return [prm](const State2& st) -> State2 {
    const PlanarState f = reduced_field(prm, {st[0], st[1]});
    return {-f.x, -f.y};
  };
}

}  // namespace

ReturnMapPoint return_map(const ReducedParams& prm, const PlanarState& focus,
                          double rho, double t_max, const IntegratorConfig& cfg) {
  if (!(rho > 0.0)) {
    std::ostringstream os;
    os << "ray coordinate must be positive, got " << rho;
    throw invalid_parameter(os.str());
  }
  const State2 start{focus.x + rho, focus.y};
  const auto section = [&focus](const State2& st) { return st[1] - focus.y; };
  const auto on_ray = [&focus](const State2& st) { return st[0] > focus.x; };
  const SectionEvent<2> ev = integrate_to_section<2>(
      planar_field(prm), start, 0.0, section, +1, t_max, cfg, 1, on_ray);
  return {ev.state[0] - focus.x, ev.t};
}

std::vector<LimitCycle> find_limit_cycles(const ReducedParams& prm,
                                          const PlanarState& focus,
                                          double rho_lo, double rho_hi,
                                          const CycleSearchConfig& cfg) {
  if (!(rho_lo > 0.0) || !(rho_hi > rho_lo)) {
    std::ostringstream os;
    os << "radius bracket must satisfy 0 < rho_lo < rho_hi, got [" << rho_lo
       << ", " << rho_hi << "]";
    throw invalid_parameter(os.str());
  }
  if (cfg.n_scan < 2) throw invalid_parameter("cycle scan needs n_scan >= 2");

  const auto displacement = [&](double rho) {
    return return_map(prm, focus, rho, cfg.t_max, cfg.integ).rho_return - rho;
  };

  struct ScanPoint {
    double rho = 0.0;
    double d = 0.0;
    bool valid = false;
  };
  std::vector<ScanPoint> scan(static_cast<std::size_t>(cfg.n_scan));
  for (int i = 0; i < cfg.n_scan; ++i) {
    ScanPoint& pt = scan[static_cast<std::size_t>(i)];
    pt.rho = rho_lo + (rho_hi - rho_lo) * i / (cfg.n_scan - 1);
    try {
      pt.d = displacement(pt.rho);
      pt.valid = true;
    } catch (const no_crossing&) {
      pt.valid = false;
    }
  }

  std::vector<double> roots;
  for (int i = 0; i + 1 < cfg.n_scan; ++i) {
    const ScanPoint& a = scan[static_cast<std::size_t>(i)];
    const ScanPoint& b = scan[static_cast<std::size_t>(i + 1)];
    if (!a.valid || !b.valid) continue;
    if (a.d == 0.0) {
      roots.push_back(a.rho);
      continue;
    }
    if (a.d * b.d >= 0.0) continue;
    double lo = a.rho, hi = b.rho;
    double f_lo = a.d;
    while (hi - lo > 1e-12 * (1.0 + hi)) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = displacement(mid);
      if (std::abs(f_mid) < 1e-13) {
        lo = hi = mid;
        break;
      }
      if ((f_lo < 0.0) == (f_mid < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }

  // Deduplicate nearby roots.
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique_roots;
  for (double r : roots) {
    if (unique_roots.empty() || r - unique_roots.back() > 1e-6) {
      unique_roots.push_back(r);
    }
  }
  if (unique_roots.empty()) {
    std::ostringstream os;
    os << "no return-map fixed point in [" << rho_lo << ", " << rho_hi << "]";
    throw no_cycle_in_bracket(os.str());
  }

  std::vector<LimitCycle> cycles;
  cycles.reserve(unique_roots.size());
  for (double rho : unique_roots) {
    LimitCycle cyc;
    cyc.radius = rho;
    cyc.section_point = {focus.x + rho, focus.y};
    cyc.period = return_map(prm, focus, rho, cfg.t_max, cfg.integ).period;
    const double h = cfg.fd_h;
    const double p_plus = return_map(prm, focus, rho + h, cfg.t_max, cfg.integ).rho_return;
    const double p_minus = return_map(prm, focus, rho - h, cfg.t_max, cfg.integ).rho_return;
    cyc.multiplier = (p_plus - p_minus) / (2.0 * h);
    cyc.stability = (std::abs(cyc.multiplier) < 1.0)
                        ? LimitCycle::Stability::Stable
                        : LimitCycle::Stability::Unstable;
    cycles.push_back(cyc);
  }
  return cycles;
}

SaddleSeeds saddle_manifold_seed(const ReducedParams& prm,
                                 const PlanarState& saddle, double offset) {
  if (!(offset > 0.0)) {
    std::ostringstream os;
    os << "seed offset must be positive, got " << offset;
    throw invalid_parameter(os.str());
  }
  const PlanarState f = reduced_field(prm, saddle);
  const double residual = std::max(std::abs(f.x), std::abs(f.y));
  if (residual > 1e-8 * (1.0 + std::abs(saddle.x) + std::abs(saddle.y))) {
    std::ostringstream os;
    os << "field residual " << residual << " too large; not an equilibrium";
    throw not_an_equilibrium(os.str());
  }
  const Matrix2 j = jacobian_reduced(prm, saddle);
  const auto eigs = eig2(j);
  if (eigs[0].imag() != 0.0 || !(eigs[0].real() > 0.0) || !(eigs[1].real() < 0.0)) {
    std::ostringstream os;
    os << "eigenvalues (" << eigs[0].real() << ", " << eigs[1].real()
       << ") are not real of opposite sign";
    throw not_a_saddle(os.str());
  }
  const auto unit_eigvec = [&j](double lambda) {
    // For this family a12 = -1 != 0, so (a12, lambda - a11) spans the space.
    PlanarState v{j.a12, lambda - j.a11};
    const double n = std::hypot(v.x, v.y);
    v.x /= n;
    v.y /= n;
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) {
      v.x = -v.x;
      v.y = -v.y;
    }
    return v;
  };
  SaddleSeeds seeds;
  seeds.saddle = saddle;
  seeds.lambda_unstable = eigs[0].real();
  seeds.lambda_stable = eigs[1].real();
  seeds.dir_unstable = unit_eigvec(seeds.lambda_unstable);
  seeds.dir_stable = unit_eigvec(seeds.lambda_stable);
  seeds.offset = offset;
  seeds.unstable_plus = {saddle.x + offset * seeds.dir_unstable.x,
                         saddle.y + offset * seeds.dir_unstable.y};
  seeds.unstable_minus = {saddle.x - offset * seeds.dir_unstable.x,
                          saddle.y - offset * seeds.dir_unstable.y};
  seeds.stable_plus = {saddle.x + offset * seeds.dir_stable.x,
                       saddle.y + offset * seeds.dir_stable.y};
  seeds.stable_minus = {saddle.x - offset * seeds.dir_stable.x,
                        saddle.y - offset * seeds.dir_stable.y};
  return seeds;
}

namespace {

struct ShotResult {
  SectionEvent<2> event;
  State2 seed{};
};

// First qualifying crossing of the diagonal section through the saddle by
// the manifold launched toward the enclosed focus.
ShotResult manifold_shot(const ReducedParams& prm, const SaddleSeeds& seeds,
                         const PlanarState& focus, bool unstable,
                         const IntegratorConfig& cfg, double t_max) {
  const PlanarState dir = unstable ? seeds.dir_unstable : seeds.dir_stable;
  const double toward =
      dir.x * (focus.x - seeds.saddle.x) + dir.y * (focus.y - seeds.saddle.y);
  if (toward == 0.0) {
    throw invalid_parameter("enclosed focus direction is perpendicular to the "
                            "manifold eigenvector; cannot orient the seed");
  }
  const double sign = (toward > 0.0) ? 1.0 : -1.0;
  const State2 seed{seeds.saddle.x + sign * seeds.offset * dir.x,
                    seeds.saddle.y + sign * seeds.offset * dir.y};
  const double sx = seeds.saddle.x;
  const double sy = seeds.saddle.y;
  const auto section = [sx, sy](const State2& st) {
    return (st[0] - sx) + (st[1] - sy);
  };
  const double dxf = focus.x - sx;
  const auto far_side = [sx, dxf](const State2& st) {
    const double dxc = st[0] - sx;
    return dxc * dxf > 0.0 && std::abs(dxc) > 0.2 * std::abs(dxf);
  };
  ShotResult out;
  out.seed = seed;
  if (unstable) {
    out.event = integrate_to_section<2>(planar_field(prm), seed, 0.0, section,
                                        0, t_max, cfg, 1, far_side);
  } else {
    out.event = integrate_to_section<2>(planar_field_negated(prm), seed, 0.0,
                                        section, 0, t_max, cfg, 1, far_side);
  }
  return out;
}

}  // namespace

double splitting_distance(const ReducedParams& prm, const PlanarState& saddle,
                          const PlanarState& enclosed_focus, double offset,
                          const IntegratorConfig& cfg) {
  const SaddleSeeds seeds = saddle_manifold_seed(prm, saddle, offset);
  const double t_max = 400.0;
  const ShotResult fwd = manifold_shot(prm, seeds, enclosed_focus, true, cfg, t_max);
  const ShotResult bwd = manifold_shot(prm, seeds, enclosed_focus, false, cfg, t_max);
  return fwd.event.state[0] - bwd.event.state[0];
}

namespace {

struct SaddleContext {
  Equilibrium saddle;
  Equilibrium enclosed;
};

SaddleContext locate_saddle_and_enclosed(const ReducedParams& prm, LoopSide side) {
  const auto eqs = find_equilibria(prm);
  const Equilibrium* saddle = nullptr;
  for (const auto& eq : eqs) {
    if (eq.kind == EquilibriumKind::SaddlePoint) {
      if (saddle != nullptr) {
        throw not_a_saddle("expected exactly one saddle, found several");
      }
      saddle = &eq;
    }
  }
  if (saddle == nullptr) {
    throw not_a_saddle("no saddle equilibrium at these parameters");
  }
  const Equilibrium* enclosed = nullptr;
  for (const auto& eq : eqs) {
    if (&eq == saddle) continue;
    const bool on_side = (side == LoopSide::Left)
                             ? eq.location.x < saddle->location.x
                             : eq.location.x > saddle->location.x;
    if (!on_side) continue;
    if (enclosed == nullptr ||
        std::abs(eq.location.x - saddle->location.x) <
            std::abs(enclosed->location.x - saddle->location.x)) {
      enclosed = &eq;
    }
  }
  if (enclosed == nullptr) {
    std::ostringstream os;
    os << "no equilibrium on the " << to_string(side) << " side of the saddle";
    throw invalid_parameter(os.str());
  }
  return {*saddle, *enclosed};
}

}  // namespace

HomoclinicFind find_homoclinic(double r, double s, double p_lo, double p_hi,
                               LoopSide side, double offset) {
  if (!(p_lo > 0.0) || !(p_hi > p_lo)) {
    std::ostringstream os;
    os << "parameter bracket must satisfy 0 < p_lo < p_hi, got [" << p_lo
       << ", " << p_hi << "]";
    throw invalid_parameter(os.str());
  }
  const IntegratorConfig cfg = detail::shooting_config();
  const auto gap_at = [&](double p) {
    const ReducedParams prm{p, r, s};
    const SaddleContext ctx = locate_saddle_and_enclosed(prm, side);
    return splitting_distance(prm, ctx.saddle.location, ctx.enclosed.location,
                              offset, cfg);
  };

  double lo = p_lo, hi = p_hi;
  double f_lo = gap_at(lo);
  double f_hi = gap_at(hi);
  if (f_lo == 0.0 ? false : (f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "splitting does not change sign over [" << p_lo << ", " << p_hi
       << "]: " << f_lo << " vs " << f_hi;
    throw no_sign_change(os.str());
  }

  HomoclinicFind out;
  int iter = 0;
  double p_root = 0.5 * (lo + hi);
  double f_root = 0.0;
  for (; iter < 200; ++iter) {
    p_root = 0.5 * (lo + hi);
    f_root = gap_at(p_root);
    if (std::abs(f_root) < 1e-10 || (hi - lo) < 1e-12 * (1.0 + std::abs(hi))) {
      break;
    }
    if ((f_root > 0.0) == (f_lo > 0.0)) {
      lo = p_root;
      f_lo = f_root;
    } else {
      hi = p_root;
    }
  }
  out.p_star = p_root;
  out.splitting_at_root = f_root;
  out.iterations = iter + 1;

  // Reconstruct the loop at the root.
  const ReducedParams prm{p_root, r, s};
  const SaddleContext ctx = locate_saddle_and_enclosed(prm, side);
  out.saddle = ctx.saddle.location;
  out.enclosed = ctx.enclosed.location;
  const SaddleSeeds seeds = saddle_manifold_seed(prm, out.saddle, offset);
  const ShotResult fwd =
      manifold_shot(prm, seeds, out.enclosed, true, cfg, 400.0);
  const ShotResult bwd =
      manifold_shot(prm, seeds, out.enclosed, false, cfg, 400.0);

  const int n_seg = 600;
  const Trajectory<2> seg_u = integrate_sampled<2>(
      planar_field(prm), fwd.seed, 0.0, fwd.event.t, n_seg, cfg);
  const Trajectory<2> seg_s = integrate_sampled<2>(
      planar_field_negated(prm), bwd.seed, 0.0, bwd.event.t, n_seg, cfg);
  out.orbit_times.reserve(2 * static_cast<std::size_t>(n_seg));
  out.orbit_states.reserve(2 * static_cast<std::size_t>(n_seg));
  for (std::size_t i = 0; i < seg_u.times.size(); ++i) {
    out.orbit_times.push_back(seg_u.times[i]);
    out.orbit_states.push_back({seg_u.states[i][0], seg_u.states[i][1]});
  }
  const double t_u = fwd.event.t;
  const double t_s = bwd.event.t;
  for (std::size_t k = seg_s.times.size(); k-- > 0;) {
    out.orbit_times.push_back(t_u + (t_s - seg_s.times[k]));
    out.orbit_states.push_back({seg_s.states[k][0], seg_s.states[k][1]});
  }
  const auto dist_to_saddle = [&](const PlanarState& st) {
    return std::hypot(st.x - out.saddle.x, st.y - out.saddle.y);
  };
  out.segment_end_distance = std::max(dist_to_saddle(out.orbit_states.front()),
                                      dist_to_saddle(out.orbit_states.back()));
  return out;
}

MelnikovGuidedResult melnikov_guided_homoclinic(double delta, double mu,
                                                double eta,
                                                RescaledLoopKind kind,
                                                double offset) {
  if (!(eta > 0.0) || !(eta <= 0.3)) {
    std::ostringstream os;
    os << "constraint 0 < eta <= 0.3 violated: eta = " << eta;
    throw invalid_parameter(os.str());
  }
  if (!(mu > 0.0)) {
    std::ostringstream os;
    os << "constraint mu > 0 violated: mu = " << mu;
    throw invalid_parameter(os.str());
  }
  if (!(delta >= 0.0)) {
    std::ostringstream os;
    os << "constraint delta >= 0 violated: delta = " << delta;
    throw invalid_parameter(os.str());
  }
  if (!(offset > 0.0)) {
    throw invalid_parameter("seed offset must be positive");
  }

  MelnikovGuidedResult out;
  switch (kind) {
    case RescaledLoopKind::SingleLeft:
      out.lambda_melnikov = lambda_single(LoopBranch::LeftLoop, delta, mu);
      break;
    case RescaledLoopKind::SingleRight:
      out.lambda_melnikov = lambda_single(LoopBranch::RightLoop, delta, mu);
      break;
    case RescaledLoopKind::DoubleLoop:
      out.lambda_melnikov = lambda_double(delta, mu);
      break;
  }

  const IntegratorConfig cfg = detail::shooting_config();
  const double side = (kind == RescaledLoopKind::SingleRight) ? 1.0 : -1.0;
  const bool double_loop = (kind == RescaledLoopKind::DoubleLoop);
  const double u_threshold = double_loop ? 1e-3 : 1e-4;
  const int crossing_index = double_loop ? 2 : 1;

  const auto apex_u = [&](double lambda, bool unstable) {
    const RescaledParams rp{delta, mu, lambda, eta};
    const double el = eta * lambda;
    const double nu = unstable ? 0.5 * (el + std::sqrt(el * el + 4.0 * mu))
                               : 0.5 * (el - std::sqrt(el * el + 4.0 * mu));
    const double norm = std::hypot(1.0, nu);
    const State2 seed{side * offset / norm, side * offset * nu / norm};
    const double time_sign = unstable ? 1.0 : -1.0;
    const auto field = [rp, time_sign](const State2& st) -> State2 {
      const HamState f = rescaled_field(rp, {st[0], st[1]});
      return {time_sign * f.v, time_sign * f.u};
    };
    const auto apex_section = [](const State2& st) { return st[1]; };
    const auto accept = [&](const State2& st) {
      if (std::abs(st[0]) <= u_threshold) return false;
      if (!double_loop && side * st[0] <= 0.0) return false;
      return true;
    };
    const SectionEvent<2> ev = integrate_to_section<2>(
        field, seed, 0.0, apex_section, 0, 400.0, cfg, crossing_index, accept);
    return ev.state[0];
  };

  const auto gap = [&](double lambda) {
    return apex_u(lambda, true) - apex_u(lambda, false);
  };

  const double half_width = std::max(0.4, 0.2 * std::abs(out.lambda_melnikov));
  double lo = out.lambda_melnikov - half_width;
  double hi = out.lambda_melnikov + half_width;
  double f_lo = gap(lo);
  double f_hi = gap(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "apex gap does not change sign over [" << lo << ", " << hi
       << "]: " << f_lo << " vs " << f_hi;
    throw no_sign_change(os.str());
  }
  int iter = 0;
  double root = 0.5 * (lo + hi);
  double f_root = 0.0;
  for (; iter < 200; ++iter) {
    root = 0.5 * (lo + hi);
    f_root = gap(root);
    if (std::abs(f_root) < 1e-10 ||
        (hi - lo) < 1e-12 * (1.0 + std::abs(hi))) {
      break;
    }
    if ((f_root > 0.0) == (f_lo > 0.0)) {
      lo = root;
      f_lo = f_root;
    } else {
      hi = root;
    }
  }
  out.lambda_refined = root;
  out.gap_at_root = f_root;
  out.iterations = iter + 1;
  return out;
}

}  // namespace glacial
