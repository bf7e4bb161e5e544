#pragma once

#include "robin/coeffs.hpp"

/// The Robin Laplacian -d^2/dt^2 on the half-line with v'(0) = b v(0).
namespace robin::halfline {

/// Generalized eigenfunction (cos t + b sin t) / sqrt(1 + b^2), eigenvalue 1.
double psi(double b, double t);
double psi_derivative(double b, double t);
double psi_second_derivative(double b, double t);

/// Bound state sqrt(-2b) e^{bt} for b < 0 (eigenvalue -b^2); identically zero for b >= 0.
double psi_bound(double b, double t);
double psi_bound_derivative(double b, double t);
double psi_bound_second_derivative(double b, double t);

struct KernelSample {
  double t = 0.0;
  double value = 0.0;
  double abs_error = 0.0;
};

/// I_b(t) = int_0^1 (1-p^2)^{(d+1)/2} [ (p^2-b^2) cos(2tp) + 2pb sin(2tp) ] / (p^2+b^2) dp.
///
/// For t > 0 the p-interval is cut into panels of width pi/(2t) so that each
/// panel holds half an oscillation; p = |b| is added as a breakpoint.
KernelSample i_b(Dimension d, double b, double t, double abs_tol = 1e-12);

struct KernelIntegral {
  double value = 0.0;
  double truncation = 0.0;     // T
  double tail_estimate = 0.0;  // residual truncation error after phase averaging
  double abs_error = 0.0;      // quadrature error estimate
};

/// int_0^infty I_b(t) dt by nested quadrature over [0, T], T = max(200, 50/|b|).
///
/// The oscillating t^{-(d+3)/2} tail is suppressed by averaging the partial
/// integral over one extra period of cos(2t). Throws NumericalError when the
/// residual tail estimate exceeds `tail_tol` or a quadrature fails.
KernelIntegral i_b_integral(Dimension d, double b, double tail_tol = 1e-7);

enum class TestFunction { ExpDecay };  // v(s) = e^{-s}

/// <Psi_b, v> in closed form.
double bound_state_overlap(double b, TestFunction fn);

/// Generalized Fourier coefficient int_0^infty psi_{b/p}(sp) v(s) ds in closed form.
double transform(double b, TestFunction fn, double p);

/// v(t) rebuilt from the eigenfunction expansion:
/// (2/pi) int_0^infty psi_{b/p}(tp) transform(p) dp + Psi_b(t) <Psi_b, v>.
double reconstruct(double b, TestFunction fn, double t);

}  // namespace robin::halfline
