#pragma once

namespace robin {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Spatial dimension of a domain, 2 <= d <= 8.
class Dimension {
 public:
  explicit Dimension(int d);
  int value() const { return d_; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

struct CoefficientValue {
  double value = 0.0;
  double abs_error_estimate = 0.0;  // zero for closed forms
  operator double() const { return value; }
};

/// Gamma(n/2) for a positive integer n, by recursion from Gamma(1/2) and Gamma(1).
double gamma_half_integer(int n);

/// omega_d = pi^{d/2} / Gamma(d/2 + 1), for 1 <= d <= 8.
CoefficientValue unit_ball_volume(int d);

/// Surface measure of the unit k-sphere in R^{k+1}, |S^k| = (k+1) omega_{k+1}; |S^0| = 2.
CoefficientValue unit_sphere_area(int k);

/// Weyl constant (2/(d+2)) (2 pi)^{-d} omega_d, for 1 <= d <= 8.
CoefficientValue l1(int d);

/// C_d = 4 |S^{d-2}| (2 pi)^{-d} / (d^2 - 1).
CoefficientValue c_d(Dimension d);

/// Boundary density of the two-term Riesz-mean asymptotics for a constant
/// Robin coefficient b.
///
/// Three branches: b > 0, b = 0 (C_d pi/4) and b < 0, where the half-line
/// bound state adds pi (b^2 + 1)^{(d+1)/2}. The p-integral
/// int_0^1 (1-p^2)^{(d+1)/2} b / (b^2 + p^2) dp is evaluated after the
/// substitution p = |b| tan(phi), which turns the peak of width |b| at the
/// origin into a bounded smooth integrand. Throws NumericalError if the
/// quadrature does not reach 1e-12.
CoefficientValue l2(Dimension d, double b);

/// Leading large-|b| form pi C_d (-b)^{d+1} for b < 0.
CoefficientValue l2_large_negative_leading(Dimension d, double b);

/// The p-integral above on its own (no C_d, no -pi/4); exposed for cross-checks.
CoefficientValue l2_p_integral(Dimension d, double b);

}  // namespace robin
