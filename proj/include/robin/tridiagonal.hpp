#pragma once

#include <utility>
#include <vector>

namespace robin {

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `offdiag`
/// (offdiag.size() == diag.size() - 1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }

  /// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
  int count_below(double x) const;

  /// Gershgorin enclosure of the spectrum.
  std::pair<double, double> gershgorin() const;

  /// The k-th smallest eigenvalue (0-based) by bisection on count_below.
  double eigenvalue(int k) const;
};

}  // namespace robin
