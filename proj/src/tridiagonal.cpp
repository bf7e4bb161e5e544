#include "robin/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robin {

int SymTridiagonal::count_below(double x) const {
  const std::size_t n = diag.size();
  constexpr double kTiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -kTiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = diag[i + 1] - x - offdiag[i] * offdiag[i] / q;
  }
  return count;
}

std::pair<double, double> SymTridiagonal::gershgorin() const {
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

double SymTridiagonal::eigenvalue(int k) const {
  auto [lo, hi] = gershgorin();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double floor = 2.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= std::max(floor, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid))) break;
    if (count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace robin
