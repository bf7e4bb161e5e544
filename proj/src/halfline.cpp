#include "robin/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "robin/errors.hpp"
#include "robin/quadrature.hpp"

namespace robin::halfline {
namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0)) throw InvalidArgument("half-line argument t must be >= 0");
}

std::vector<double> oscillation_breakpoints(double lo, double hi, double width, double extra) {
  std::vector<double> pts{lo};
  if (width > 0.0) {
    const auto n = static_cast<long>(std::ceil((hi - lo) / width));
    for (long k = 1; k < n; ++k) pts.push_back(lo + k * width);
  }
  if (extra > lo && extra < hi) pts.push_back(extra);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

double psi(double b, double t) { return (std::cos(t) + b * std::sin(t)) / std::sqrt(1.0 + b * b); }

double psi_derivative(double b, double t) {
  return (-std::sin(t) + b * std::cos(t)) / std::sqrt(1.0 + b * b);
}

double psi_second_derivative(double b, double t) { return -psi(b, t); }

double psi_bound(double b, double t) {
  require_nonnegative(t);
  return b < 0.0 ? std::sqrt(-2.0 * b) * std::exp(b * t) : 0.0;
}

double psi_bound_derivative(double b, double t) { return b * psi_bound(b, t); }

double psi_bound_second_derivative(double b, double t) { return b * b * psi_bound(b, t); }

KernelSample i_b(Dimension dim, double b, double t, double abs_tol) {
  require_nonnegative(t);
  const double exponent = 0.5 * (dim.value() + 1);
  const double b2 = b * b;
  const auto integrand = [=](double p) {
    const double g = std::pow(std::max(0.0, (1.0 - p) * (1.0 + p)), exponent);
    const double p2 = p * p;
    const double denom = p2 + b2;
    if (denom == 0.0) return g;  // b = 0, p = 0: the rational factor tends to 1
    return g * ((p2 - b2) * std::cos(2.0 * t * p) + 2.0 * p * b * std::sin(2.0 * t * p)) / denom;
  };
  const double width = t > 0.0 ? kPi / (2.0 * t) : 0.0;
  const auto pts = oscillation_breakpoints(0.0, 1.0, width, std::abs(b));
  const auto r = quad::integrate(integrand, pts, abs_tol);
  if (!r.converged) {
    throw NumericalError("i_b: refinement limit reached at b = " + std::to_string(b) +
                         ", t = " + std::to_string(t));
  }
  return {t, r.value, r.abs_error};
}

KernelIntegral i_b_integral(Dimension dim, double b, double tail_tol) {
  if (!std::isfinite(b)) throw InvalidArgument("i_b_integral: b must be finite");
  const double truncation = b == 0.0 ? 200.0 : std::max(200.0, 50.0 / std::abs(b));
  constexpr double kOuterTol = 1e-9;
  constexpr double kInnerTol = 1e-12;
  double inner_error = 0.0;
  const auto kernel = [&](double t) {
    const auto s = i_b(dim, b, t, kInnerTol);
    inner_error = std::max(inner_error, s.abs_error);
    return s.value;
  };

  // I_b oscillates like cos(2t + phase): one period is pi.
  const auto pts = oscillation_breakpoints(0.0, truncation, 0.5 * kPi, 0.0);
  const auto body = quad::integrate(kernel, pts, kOuterTol);
  if (!body.converged) throw NumericalError("i_b_integral: outer quadrature did not converge");

  // Averaging the partial integral F(T') over T' in [T, T + pi] equals
  // F(T) + (1/pi) int_T^{T+pi} (T + pi - t) I_b(t) dt.
  const double end = truncation + kPi;
  const auto weighted = [&](double t) { return (end - t) / kPi * kernel(t); };
  const double tail_pts[] = {truncation, truncation + 0.5 * kPi, end};
  const auto correction = quad::integrate(weighted, tail_pts, kOuterTol);
  if (!correction.converged) throw NumericalError("i_b_integral: tail quadrature did not converge");

  // The averaged residual scales like the correction times the envelope's
  // logarithmic derivative (d+3)/(2T), rounded up to (d+3)/T.
  const double tail = std::abs(correction.value) * (dim.value() + 3) / truncation;
  if (tail > tail_tol) {
    throw NumericalError("i_b_integral: tail estimate " + std::to_string(tail) +
                         " exceeds tolerance at b = " + std::to_string(b));
  }
  const double quad_error = body.abs_error + correction.abs_error + inner_error * end;
  return {body.value + correction.value, truncation, tail, quad_error};
}

double bound_state_overlap(double b, TestFunction fn) {
  switch (fn) {
    case TestFunction::ExpDecay:
      // int_0^infty sqrt(-2b) e^{bs} e^{-s} ds
      return b < 0.0 ? std::sqrt(-2.0 * b) / (1.0 - b) : 0.0;
  }
  return 0.0;
}

double transform(double b, TestFunction fn, double p) {
  switch (fn) {
    case TestFunction::ExpDecay:
      // psi_{b/p}(sp) = (p cos(sp) + b sin(sp)) / sqrt(p^2 + b^2); the Laplace
      // transforms of cos(sp) and sin(sp) at 1 are 1/(1+p^2) and p/(1+p^2).
      return p * (1.0 + b) / ((1.0 + p * p) * std::hypot(p, b));
  }
  return 0.0;
}

double reconstruct(double b, TestFunction fn, double t) {
  require_nonnegative(t);
  constexpr double kTol = 1e-10;
  const auto integrand = [=](double p) { return psi(b / p, t * p) * transform(b, fn, p); };

  // For e^{-s}, integrand = f(p) cos(tp) + g(p) sin(tp) with rational f, g.
  const auto f = [=](double p) { return p * p * (1.0 + b) / ((1.0 + p * p) * (p * p + b * b)); };
  const auto g = [=](double p) { return p * b * (1.0 + b) / ((1.0 + p * p) * (p * p + b * b)); };

  const double cutoff = t > 0.0 ? std::max(400.0, 100.0 / t) : 400.0;
  const double width = t > 0.0 ? kPi / t : 1.0;
  const auto pts = oscillation_breakpoints(0.0, cutoff, width, std::abs(b));
  const auto body = quad::integrate(integrand, pts, kTol);
  if (!body.converged) throw NumericalError("reconstruct: quadrature did not converge");

  double tail = 0.0;
  const double P = cutoff;
  if (t == 0.0) {
    const double b2 = b * b;
    tail = (1.0 + b) * (1.0 / P - (1.0 + b2) / (3.0 * P * P * P) +
                        (1.0 + b2 + b2 * b2) / (5.0 * std::pow(P, 5)));
  } else {
    // Two integration-by-parts terms.
    const double step = 1e-4 * P;
    const double df = (f(P + step) - f(P - step)) / (2.0 * step);
    const double dg = (g(P + step) - g(P - step)) / (2.0 * step);
    const double s = std::sin(t * P), c = std::cos(t * P);
    tail = -f(P) * s / t - df * c / (t * t) + g(P) * c / t - dg * s / (t * t);
  }
  const double continuum = 2.0 / kPi * (body.value + tail);
  return continuum + psi_bound(b, t) * bound_state_overlap(b, fn);
}

}  // namespace robin::halfline
