#include "robin/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robin/errors.hpp"
#include "robin/quadrature.hpp"

namespace robin {
namespace {

constexpr double kQuadTol = 1e-12;

void require_range(int d, int lo, int hi, const char* what) {
  if (d < lo || d > hi) {
    throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(d) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

Dimension::Dimension(int d) : d_(d) { require_range(d, 2, 8, "Dimension"); }

double gamma_half_integer(int n) {
  if (n <= 0) throw InvalidArgument("gamma_half_integer: argument must be positive");
  // Gamma(x + 1) = x Gamma(x), walking up from 1/2 (odd n) or 1 (even n).
  double g = (n % 2 == 0) ? 1.0 : std::sqrt(kPi);
  for (int m = (n % 2 == 0) ? 2 : 1; m + 2 <= n; m += 2) g *= 0.5 * m;
  return g;
}

CoefficientValue unit_ball_volume(int d) {
  require_range(d, 1, 8, "unit_ball_volume");
  return {std::pow(kPi, 0.5 * d) / gamma_half_integer(d + 2), 0.0};
}

CoefficientValue unit_sphere_area(int k) {
  require_range(k, 0, 7, "unit_sphere_area");
  return {(k + 1) * unit_ball_volume(k + 1).value, 0.0};
}

CoefficientValue l1(int d) {
  require_range(d, 1, 8, "l1");
  return {2.0 / (d + 2) * std::pow(2.0 * kPi, -d) * unit_ball_volume(d).value, 0.0};
}

CoefficientValue c_d(Dimension dim) {
  const int d = dim.value();
  const double sphere = unit_sphere_area(d - 2).value;
  return {4.0 * sphere * std::pow(2.0 * kPi, -d) / (d * d - 1.0), 0.0};
}

CoefficientValue l2_p_integral(Dimension dim, double b) {
  if (!std::isfinite(b)) throw InvalidArgument("l2: b must be finite");
  if (b == 0.0) return {0.0, 0.0};
  const double exponent = 0.5 * (dim.value() + 1);
  const double ab = std::abs(b);
  // p = |b| tan(phi): b/(b^2+p^2) dp = sign(b) dphi.
  const auto integrand = [ab, exponent](double phi) {
    const double p = ab * std::tan(phi);
    const double one_minus = (1.0 - p) * (1.0 + p);
    return one_minus > 0.0 ? std::pow(one_minus, exponent) : 0.0;
  };
  const double upper = std::atan(1.0 / ab);
  // The split at p = |b| mirrors the peak location of the original integrand.
  const double lower_split = std::min(upper, 0.25 * kPi);
  const double pts[] = {0.0, lower_split, upper};
  const auto r = quad::integrate(integrand, pts, kQuadTol);
  if (!r.converged) {
    throw NumericalError("l2: quadrature did not converge for b = " + std::to_string(b) +
                         " (error estimate " + std::to_string(r.abs_error) + ")");
  }
  return {std::copysign(r.value, b), r.abs_error};
}

CoefficientValue l2(Dimension dim, double b) {
  const double cd = c_d(dim).value;
  if (b == 0.0) return {cd * kPi / 4.0, 0.0};
  const auto integral = l2_p_integral(dim, b);
  double value = -kPi / 4.0 + integral.value;
  if (b < 0.0) value += kPi * std::pow(b * b + 1.0, 0.5 * (dim.value() + 1));
  return {cd * value, cd * integral.abs_error_estimate};
}

CoefficientValue l2_large_negative_leading(Dimension dim, double b) {
  if (!(b < 0.0)) throw InvalidArgument("l2_large_negative_leading: requires b < 0");
  return {kPi * c_d(dim).value * std::pow(-b, dim.value() + 1), 0.0};
}

}  // namespace robin
