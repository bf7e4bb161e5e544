#pragma once

#include <functional>
#include <span>

namespace robin::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  int panels = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `abs_tol`, or below the rounding floor of the L1 norm
/// of the integrand. `converged` is false when `max_panels` is reached first.
Result integrate(const Integrand& f, double a, double b, double abs_tol, int max_panels = 4000);

/// Same, but the interval is first cut at the given increasing breakpoints
/// and the tolerance is shared across the pieces.
Result integrate(const Integrand& f, std::span<const double> breakpoints, double abs_tol,
                 int max_panels = 200000);

}  // namespace robin::quad
