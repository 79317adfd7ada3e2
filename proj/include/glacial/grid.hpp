#pragma once

// Uniform sampling grid for parameter sweeps and surface tabulation.

#include <vector>

#include "glacial/errors.hpp"

namespace glacial {

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  GridSpec() = default;
  GridSpec(double lo_, double hi_, int n_);

  // n uniformly spaced points from lo to hi inclusive (n == 1 requires
  // lo == hi and yields the single point).
  [[nodiscard]] std::vector<double> points() const;
};

}  // namespace glacial
