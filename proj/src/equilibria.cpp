#include "glacial/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glacial {

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::SaddlePoint: return "SaddlePoint";
    case EquilibriumKind::StableNode: return "StableNode";
    case EquilibriumKind::UnstableNode: return "UnstableNode";
    case EquilibriumKind::StableDegenerateNode: return "StableDegenerateNode";
    case EquilibriumKind::UnstableDegenerateNode: return "UnstableDegenerateNode";
    case EquilibriumKind::StableFocus: return "StableFocus";
    case EquilibriumKind::UnstableFocus: return "UnstableFocus";
    case EquilibriumKind::LinearCenter: return "LinearCenter";
    case EquilibriumKind::DoubleZero: return "DoubleZero";
    case EquilibriumKind::ZeroEigenvalue: return "ZeroEigenvalue";
  }
  return "unknown";
}

const char* to_string(EquilibriumId id) {
  switch (id) {
    case EquilibriumId::P0: return "P0";
    case EquilibriumId::P1: return "P1";
    case EquilibriumId::P2: return "P2";
  }
  return "unknown";
}

EquilibriumKind classify_matrix(const Matrix2& m) {
  const double tr = m.trace();
  const double det = m.det();
  const double mag = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                               std::abs(m.a22)});
  const double tol = 1e-10 * (1.0 + mag);
  const double det_tol = 1e-10 * (1.0 + mag * mag);

  if (det < -det_tol) return EquilibriumKind::SaddlePoint;
  if (std::abs(det) <= det_tol) {
    return (std::abs(tr) <= tol) ? EquilibriumKind::DoubleZero
                                 : EquilibriumKind::ZeroEigenvalue;
  }
  // det > 0 from here.
  if (std::abs(tr) <= tol) return EquilibriumKind::LinearCenter;
  const double disc = tr * tr - 4.0 * det;
  const double disc_tol = 1e-10 * (1.0 + tr * tr + 4.0 * std::abs(det));
  if (tr < 0.0) {
    if (disc > disc_tol) return EquilibriumKind::StableNode;
    if (disc < -disc_tol) return EquilibriumKind::StableFocus;
    return EquilibriumKind::StableDegenerateNode;
  }
  if (disc > disc_tol) return EquilibriumKind::UnstableNode;
  if (disc < -disc_tol) return EquilibriumKind::UnstableFocus;
  return EquilibriumKind::UnstableDegenerateNode;
}

namespace {

Equilibrium make_equilibrium(const ReducedParams& prm, const PlanarState& loc,
                             EquilibriumId id) {
  const Matrix2 j = jacobian_reduced(prm, loc);
  Equilibrium eq;
  eq.location = loc;
  eq.eigenvalues = eig2(j);
  eq.kind = classify_matrix(j);
  eq.id = id;
  return eq;
}

}  // namespace

std::vector<Equilibrium> find_equilibria(const ReducedParams& prm) {
  std::vector<Equilibrium> out;
  out.push_back(make_equilibrium(prm, {0.0, 0.0}, EquilibriumId::P0));

  // Off-origin roots of x^2 - s x + (p - r) = 0.
  const double delta = prm.s * prm.s + 4.0 * (prm.r - prm.p);
  const double delta_tol =
      1e-12 * (1.0 + prm.s * prm.s + 4.0 * std::abs(prm.r - prm.p));
  std::vector<std::pair<double, EquilibriumId>> roots;
  if (std::abs(delta) <= delta_tol) {
    roots.emplace_back(0.5 * prm.s, EquilibriumId::P1);
  } else if (delta > 0.0) {
    const double sq = std::sqrt(delta);
    roots.emplace_back(0.5 * (prm.s + sq), EquilibriumId::P1);
    roots.emplace_back(0.5 * (prm.s - sq), EquilibriumId::P2);
  }
  const double merge_tol = 1e-9;
  for (const auto& [x_root, id] : roots) {
    const PlanarState loc{x_root, -x_root};
    bool merged = false;
    for (auto& existing : out) {
      const double gap = std::max(std::abs(existing.location.x - loc.x),
                                  std::abs(existing.location.y - loc.y));
      if (gap <= merge_tol) {
        existing.collision = true;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(make_equilibrium(prm, loc, id));
  }
  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return a.location.x > b.location.x;
  });
  return out;
}

Equilibrium classify(const ReducedParams& prm, const PlanarState& location) {
  const PlanarState f = reduced_field(prm, location);
  const double residual = std::max(std::abs(f.x), std::abs(f.y));
  const double tol = 1e-8 * (1.0 + std::abs(location.x) + std::abs(location.y));
  if (residual > tol) {
    std::ostringstream os;
    os << "field residual " << residual << " at (" << location.x << ", "
       << location.y << ") exceeds " << tol;
    throw not_an_equilibrium(os.str());
  }
  // Take the identity label from the nearest member of the computed set.
  const auto all = find_equilibria(prm);
  const Equilibrium* best = nullptr;
  double best_gap = 0.0;
  for (const auto& eq : all) {
    const double gap = std::max(std::abs(eq.location.x - location.x),
                                std::abs(eq.location.y - location.y));
    if (best == nullptr || gap < best_gap) {
      best = &eq;
      best_gap = gap;
    }
  }
  Equilibrium result = make_equilibrium(prm, location, best->id);
  result.collision = best->collision;
  return result;
}

DegeneracyLoci degeneracy_loci(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "constraint s >= 0 violated: s = " << s;
    throw invalid_parameter(os.str());
  }
  DegeneracyLoci loci;
  loci.s = s;
  loci.bt_origin = {1.0, 1.0};
  loci.bt_offorigin = {1.0, 1.0 - 0.25 * s * s};

  // Certificates.  On the fold line the double root (s/2, -s/2) must carry a
  // zero eigenvalue; on the transcritical line the origin must.
  const double probes[] = {0.6, 1.0, 1.7};
  double fold_res = 0.0;
  double tc_res = 0.0;
  for (double r : probes) {
    const double p_fold = loci.fold_p(r);
    if (p_fold > 0.0) {
      const ReducedParams prm{p_fold, r, s};
      const Matrix2 j = jacobian_reduced(prm, {0.5 * s, -0.5 * s});
      fold_res = std::max(fold_res, std::abs(j.det()));
    }
    if (r > 0.0) {
      const ReducedParams prm{r, r, s};
      const Matrix2 j = jacobian_reduced(prm, {0.0, 0.0});
      tc_res = std::max(tc_res, std::abs(j.det()));
    }
  }
  loci.fold_zero_eigenvalue_residual = fold_res;
  loci.transcritical_zero_eigenvalue_residual = tc_res;

  const auto nilpotency = [](const Matrix2& j) {
    // max-norm of J^2; a 2x2 double-zero matrix must square to zero.
    const double b11 = j.a11 * j.a11 + j.a12 * j.a21;
    const double b12 = j.a11 * j.a12 + j.a12 * j.a22;
    const double b21 = j.a21 * j.a11 + j.a22 * j.a21;
    const double b22 = j.a21 * j.a12 + j.a22 * j.a22;
    return std::max({std::abs(b11), std::abs(b12), std::abs(b21), std::abs(b22)});
  };
  const auto rank_one = [](const Matrix2& j) {
    // One-dimensional kernel <=> J != 0 while det J = 0.
    const double mag =
        std::max({std::abs(j.a11), std::abs(j.a12), std::abs(j.a21), std::abs(j.a22)});
    return mag > 1e-8;
  };

  const ReducedParams prm0{loci.bt_origin.p, loci.bt_origin.r, s};
  const Matrix2 j0 = jacobian_reduced(prm0, {0.0, 0.0});
  loci.bt_origin_nilpotency = nilpotency(j0);

  const ReducedParams prm1{loci.bt_offorigin.p, loci.bt_offorigin.r, s};
  const Matrix2 j1 = jacobian_reduced(prm1, {0.5 * s, -0.5 * s});
  loci.bt_offorigin_nilpotency = nilpotency(j1);

  loci.bt_eigenspace_one_dimensional = rank_one(j0) && rank_one(j1);
  return loci;
}

std::vector<HamiltonianEquilibrium> hamiltonian_equilibria(double delta, double mu) {
  if (!std::isfinite(delta) || !std::isfinite(mu)) {
    throw invalid_parameter("delta and mu must be finite");
  }
  const auto fprime = [&](double u) { return mu + 2.0 * delta * u - 3.0 * u * u; };
  const auto kind_of = [&](double u, double tol) {
    const double fp = fprime(u);
    if (fp > tol) return EquilibriumKind::SaddlePoint;
    if (fp < -tol) return EquilibriumKind::LinearCenter;
    return EquilibriumKind::DoubleZero;
  };
  const double scale_tol = 1e-10 * (1.0 + std::abs(mu) + delta * delta);

  std::vector<double> us{0.0};
  const double disc = delta * delta + 4.0 * mu;
  const double disc_tol = 1e-12 * (1.0 + delta * delta + 4.0 * std::abs(mu));
  if (std::abs(disc) <= disc_tol) {
    us.push_back(0.5 * delta);
  } else if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    us.push_back(0.5 * (delta + sq));
    us.push_back(0.5 * (delta - sq));
  }
  // Merge coincident roots (e.g. mu = 0 makes u = 0 a double root).
  std::vector<double> merged;
  for (double u : us) {
    bool dup = false;
    for (double v : merged) {
      if (std::abs(u - v) <= 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(u);
  }
  std::sort(merged.begin(), merged.end(), std::greater<>());
  std::vector<HamiltonianEquilibrium> out;
  out.reserve(merged.size());
  for (double u : merged) {
    HamiltonianEquilibrium eq;
    eq.location = {u, 0.0};
    eq.fprime = fprime(u);
    eq.kind = kind_of(u, scale_tol);
    out.push_back(eq);
  }
  return out;
}

}  // namespace glacial
