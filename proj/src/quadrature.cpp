#include "robin/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace robin::quad {
namespace {

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel rule(const Integrand& f, double a, double b) {
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error, &l1);
  // With max_depth = 0 Boost reports the error of the rule mapped to [-1, 1];
  // the half-width factor is applied to the value and L1 norm but not to it.
  error *= 0.5 * (b - a);
  return {a, b, value, error, l1};
}

Result adapt(const Integrand& f, std::vector<Panel> initial, double abs_tol, int max_panels) {
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> heap(initial.begin(), initial.end());
  auto totals = [&heap] {
    // Summation over a copy keeps the heap intact; panel counts stay small.
    auto copy = heap;
    double value = 0.0, error = 0.0, l1 = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
    return std::array<double, 3>{value, error, l1};
  };

  double error = 0.0, l1 = 0.0;
  for (const auto& p : initial) {
    error += p.error;
    l1 += p.l1;
  }
  int panels = static_cast<int>(heap.size());
  while (error > std::max(abs_tol, kRoundoff * l1) && panels < max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in double
    heap.pop();
    const Panel left = rule(f, worst.a, mid);
    const Panel right = rule(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  const auto [value, err, norm] = totals();
  const bool finite = std::isfinite(value) && std::isfinite(err);
  return {value, err, finite && err <= std::max(abs_tol, kRoundoff * norm), panels};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, double abs_tol, int max_panels) {
  if (a == b) return {0.0, 0.0, true, 0};
  return adapt(f, {rule(f, a, b)}, abs_tol, max_panels);
}

Result integrate(const Integrand& f, std::span<const double> breakpoints, double abs_tol,
                 int max_panels) {
  std::vector<Panel> initial;
  initial.reserve(breakpoints.size());
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] > breakpoints[i - 1]) initial.push_back(rule(f, breakpoints[i - 1], breakpoints[i]));
  }
  if (initial.empty()) return {0.0, 0.0, true, 0};
  return adapt(f, std::move(initial), abs_tol, max_panels);
}

}  // namespace robin::quad
