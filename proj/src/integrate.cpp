#include "glacial/integrate.hpp"

#include <cmath>

namespace glacial {

SlowFastDiagnostics slow_fast_compare(const SlowFastParams& prm,
                                      const FullState& y0, double t_end,
                                      int n_samples, const IntegratorConfig& cfg) {
  if (!(t_end > 0.0)) {
    throw invalid_parameter("comparison window must satisfy t_end > 0");
  }
  const auto full = [&prm](const State<3>& st) -> State<3> {
    const FullState f = full_field(prm, {st[0], st[1], st[2]});
    return {f.x, f.y, f.z};
  };
  const auto reduced = [&prm](const State<2>& st) -> State<2> {
    const PlanarState f = reduced_field(prm.base, {st[0], st[1]});
    return {f.x, f.y};
  };
  const Trajectory<3> tf =
      integrate_sampled<3>(full, {y0.x, y0.y, y0.z}, 0.0, t_end, n_samples, cfg);
  const Trajectory<2> tr =
      integrate_sampled<2>(reduced, {y0.x, y0.y}, 0.0, t_end, n_samples, cfg);
  if (tf.terminal_reason != TerminalReason::TimeEnd ||
      tr.terminal_reason != TerminalReason::TimeEnd) {
    throw integration_failure("slow-fast comparison run did not reach t_end");
  }

  SlowFastDiagnostics diag;
  diag.transient = 10.0 * prm.eps * std::abs(std::log(prm.eps));
  for (std::size_t i = 0; i < tf.times.size(); ++i) {
    const double t = tf.times[i];
    const auto& sf = tf.states[i];
    if (t >= diag.transient) {
      diag.manifold_residual =
          std::max(diag.manifold_residual, std::abs(sf[2] + sf[0]));
    }
    const auto& sr = tr.states[i];
    diag.state_gap =
        std::max(diag.state_gap, std::hypot(sf[0] - sr[0], sf[1] - sr[1]));
  }
  return diag;
}

}  // namespace glacial
